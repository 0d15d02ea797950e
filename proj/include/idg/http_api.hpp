#pragma once

// JSON-over-HTTP front end for SessionManager (cpp-httplib). Routes and
// payloads are documented in docs/http_api.md. Responses carry only what the
// defender may see; losses are reported as non-positive numbers.

#include <optional>
#include <regex>
#include <string>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "idg/session.hpp"

namespace idg {

inline constexpr std::string_view kApiVersion = "idg-api/1";

inline int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSession: return 404;
    case ErrorCode::WrongStatus:
    case ErrorCode::StaleStep:
    case ErrorCode::EpisodeOver: return 409;
    case ErrorCode::Storage: return 500;
    default: return 400;
  }
}

inline nlohmann::ordered_json activity_json(const ActivityEvent& a) {
  nlohmann::ordered_json j{{"kind", std::string(to_string(a.kind))}};
  if (a.kind != ActivityKind::None) {
    j["target"] = a.target;
    j["step"] = a.step_observed;
  }
  return j;
}

inline nlohmann::ordered_json observation_json(const DefenderObservation& obs, const SessionProgress& p) {
  nlohmann::ordered_json j;
  j["phase"] = std::string(to_string(p.phase));
  j["episode"] = p.episode_number;
  j["total_episodes"] = p.total_episodes;
  j["step"] = obs.step;
  j["episode_length"] = obs.episode_length;
  j["last_round_loss"] = -obs.last_step_loss;
  j["total_loss"] = -obs.total_loss;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : obs.rows)
    j["rows"].push_back({{"subnet", r.subnet},
                         {"ip", r.ip},
                         {"hostname", r.hostname},
                         {"compromise", std::string(to_string(r.compromise))},
                         {"activity", activity_json(r.activity)}});
  return j;
}

inline nlohmann::ordered_json session_json(const SessionView& v) {
  nlohmann::ordered_json j;
  j["session_id"] = v.id;
  j["status"] = std::string(to_string(v.progress.status));
  j["observation"] = observation_json(v.observation, v.progress);
  j["session_loss"] = -v.session_loss;
  j["main_loss"] = -v.main_loss;
  if (v.bonus_cents) j["bonus"] = format_dollars(*v.bonus_cents);
  return j;
}

inline nlohmann::ordered_json error_json(std::string_view code, const std::string& message) {
  return {{"code", std::string(code)}, {"message", message}};
}

namespace detail {

inline nlohmann::json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return nlohmann::json::object();
  try {
    auto j = nlohmann::json::parse(req.body);
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "request body must be a JSON object");
    return j;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
}

inline std::optional<int> optional_int(const nlohmann::json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) throw Error(ErrorCode::MalformedAction, std::string(field) + " must be an integer");
  return it->get<int>();
}

inline BlueAction parse_action_body(const nlohmann::json& j) {
  auto kind = j.find("kind");
  if (kind == j.end() || !kind->is_string()) throw Error(ErrorCode::MalformedAction, "kind is required");
  auto k = parse_blue_kind(kind->get<std::string>());
  if (!k) throw Error(ErrorCode::MalformedAction, "unknown action kind '" + kind->get<std::string>() + "'");
  BlueAction a{*k, std::nullopt};
  if (auto t = j.find("target"); t != j.end() && !t->is_null()) {
    if (!t->is_string()) throw Error(ErrorCode::MalformedAction, "target must be a host name");
    a.target = t->get<std::string>();
  }
  return a;
}

inline void send_json(httplib::Response& res, int status, const nlohmann::ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    send_json(res, http_status(e.code()), error_json(to_string(e.code()), e.what()));
  } catch (const nlohmann::json::exception& e) {
    send_json(res, 400, error_json(to_string(ErrorCode::ParseError), e.what()));
  } catch (const std::exception& e) {
    send_json(res, 500, error_json("internal", e.what()));
  }
}

}  // namespace detail

struct ApiOptions {
  std::string static_dir;  // served at "/" when non-empty
};

inline void install_routes(httplib::Server& svr, SessionManager& mgr, const ApiOptions& opts = {}) {
  using detail::guarded;
  using detail::send_json;

  svr.Get("/healthz", [&mgr](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200,
              {{"status", "ok"}, {"api_version", std::string(kApiVersion)}, {"scenario", mgr.scenario().name},
               {"sessions", mgr.size()}});
  });

  svr.Post("/sessions", [&mgr](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto body = detail::parse_body(req);
      CreateOptions opts;
      if (auto d = body.find("doctrine"); d != body.end() && !d->is_null()) {
        const std::string text = d->get<std::string>();
        if (text != "balanced" && text != "random") opts.doctrine = parse_doctrine(text);
      }
      if (auto p = body.find("plan"); p != body.end()) opts.plan = *p;
      if (auto m = body.find("metadata"); m != body.end() && !m->is_null())
        opts.metadata = m->is_string() ? m->get<std::string>() : m->dump();
      auto session = mgr.create(opts);
      send_json(res, 201, session_json(session->view()));
    });
  });

  svr.Get(R"(/sessions/([^/]+)/observation)", [&mgr](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, session_json(mgr.get(req.matches[1])->view())); });
  });

  svr.Post(R"(/sessions/([^/]+)/action)", [&mgr](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto session = mgr.get(req.matches[1]);
      const auto body = detail::parse_body(req);
      const BlueAction action = detail::parse_action_body(body);
      const ActionResult r =
          session->submit(action, detail::optional_int(body, "step"), detail::optional_int(body, "episode"));
      nlohmann::ordered_json j;
      j["blue_outcome"] = std::string(to_string(r.blue_outcome));
      j["last_round_loss"] = -r.last_step_loss;
      j["total_loss"] = -r.total_loss;
      j["status"] = std::string(to_string(r.view.progress.status));
      j["observation"] = observation_json(r.view.observation, r.view.progress);
      j["session_loss"] = -r.view.session_loss;
      send_json(res, 200, j);
    });
  });

  svr.Post(R"(/sessions/([^/]+)/next-episode)", [&mgr](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto session = mgr.get(req.matches[1]);
      const auto body = detail::parse_body(req);
      send_json(res, 200, session_json(session->advance(detail::optional_int(body, "episode"))));
    });
  });

  // Completed episodes as JSONL; ?episode=N selects one.
  svr.Get(R"(/sessions/([^/]+)/log)", [&mgr](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto session = mgr.get(req.matches[1]);
      const auto logs = session->completed_logs();
      std::string out;
      if (req.has_param("episode")) {
        int n = 0;
        try {
          n = std::stoi(req.get_param_value("episode"));
        } catch (const std::logic_error&) {
          throw Error(ErrorCode::InvalidArgument, "episode must be an integer");
        }
        auto it = std::find_if(logs.begin(), logs.end(), [n](const EpisodeLog& l) { return l.episode_index == n; });
        if (it == logs.end()) throw Error(ErrorCode::WrongStatus, "episode " + std::to_string(n) + " is not complete");
        out = to_jsonl(*it);
      } else {
        for (const auto& l : logs) out += to_jsonl(l);
      }
      res.status = 200;
      res.set_header("Content-Disposition", "attachment; filename=\"" + session->id() + ".jsonl\"");
      res.set_content(out, "application/x-ndjson");
    });
  });

  if (!opts.static_dir.empty() && !svr.set_mount_point("/", opts.static_dir))
    throw Error(ErrorCode::Storage, "cannot serve static files from " + opts.static_dir);
}

}  // namespace idg
