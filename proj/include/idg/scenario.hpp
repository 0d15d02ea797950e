#pragma once

// Static world definition: subnets, hosts, score table and the doctrine
// calibration, loaded from a YAML document.

#include <arpa/inet.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "idg/error.hpp"

namespace idg {

// Subnet id 0 is the internet pseudo-subnet. It only appears in adjacency.
inline constexpr int kInternet = 0;

enum class HostRole { UserComputer, EnterpriseServer, OperationalServer, OperationalHost };

inline constexpr HostRole kAllRoles[] = {HostRole::UserComputer, HostRole::EnterpriseServer,
                                         HostRole::OperationalServer, HostRole::OperationalHost};

constexpr std::string_view to_string(HostRole role) {
  switch (role) {
    case HostRole::UserComputer: return "UserComputer";
    case HostRole::EnterpriseServer: return "EnterpriseServer";
    case HostRole::OperationalServer: return "OperationalServer";
    case HostRole::OperationalHost: return "OperationalHost";
  }
  return "?";
}

inline std::optional<HostRole> parse_role(std::string_view text) {
  for (HostRole r : kAllRoles)
    if (to_string(r) == text) return r;
  return std::nullopt;
}

enum class Doctrine { Beeline, Meander };

constexpr std::string_view to_string(Doctrine d) {
  return d == Doctrine::Beeline ? "Beeline" : "Meander";
}

// Case-insensitive; throws UnknownDoctrine.
inline Doctrine parse_doctrine(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "beeline") return Doctrine::Beeline;
  if (lower == "meander") return Doctrine::Meander;
  throw Error(ErrorCode::UnknownDoctrine, "unknown doctrine '" + std::string(text) + "'");
}

struct Subnet {
  int id = 0;
  std::string name;
  std::vector<std::string> hosts;

  bool operator==(const Subnet&) const = default;
};

struct HostSpec {
  std::string name;
  int subnet = 0;
  std::string ip;
  HostRole role = HostRole::UserComputer;

  bool operator==(const HostSpec&) const = default;
};

// Costs are magnitudes; the defender sees them negated.
struct ScoreTable {
  std::map<HostRole, int> escalation{{HostRole::UserComputer, 5},
                                     {HostRole::EnterpriseServer, 10},
                                     {HostRole::OperationalServer, 15},
                                     {HostRole::OperationalHost, 5}};
  int impact = 10;
  int blue_action = 0;

  int escalation_cost(HostRole role) const {
    auto it = escalation.find(role);
    return it == escalation.end() ? 0 : it->second;
  }

  bool operator==(const ScoreTable&) const = default;
};

// A doctrine plan is an ordered list of milestones. Each entry names either
// a subnet (scan it once) or a host (hold admin on it). Impact follows the
// last milestone.
struct DoctrinePlan {
  std::vector<std::string> milestones;
  bool prior_path_knowledge = false;

  bool operator==(const DoctrinePlan&) const = default;
};

struct RevealRules {
  bool scan_reveals_hosts = true;
  // Escalating on a host in subnet k reveals the first listed host of
  // subnet k+1 (host only, services stay unknown).
  bool escalation_reveals_next_lead = true;
  // Escalating on any EnterpriseServer reveals the operational server and
  // its services.
  bool enterprise_escalation_reveals_op_server_services = true;

  bool operator==(const RevealRules&) const = default;
};

struct DoctrineCalibration {
  DoctrinePlan beeline{{"Subnet1", "User1", "Enterprise1", "Subnet2", "Enterprise2", "Op_Server0"},
                       true};
  DoctrinePlan meander{{"Subnet1", "User1", "Enterprise1", "Subnet2", "User2", "Defender",
                        "Enterprise2", "Subnet3", "Op_Server0"},
                       false};
  RevealRules reveal;

  const DoctrinePlan& plan(Doctrine d) const { return d == Doctrine::Beeline ? beeline : meander; }

  bool operator==(const DoctrineCalibration&) const = default;
};

struct Scenario {
  std::string name;
  int episode_length = 25;
  std::vector<Subnet> subnets;
  std::vector<HostSpec> hosts;
  // Undirected: each pair {a, b} makes a and b mutually adjacent.
  std::vector<std::pair<int, int>> adjacency;
  ScoreTable score_table;
  DoctrineCalibration doctrines;

  bool operator==(const Scenario&) const = default;

  std::size_t host_count() const { return hosts.size(); }

  std::optional<std::size_t> find_host(std::string_view host) const {
    for (std::size_t i = 0; i < hosts.size(); ++i)
      if (hosts[i].name == host) return i;
    return std::nullopt;
  }

  const Subnet* find_subnet(int id) const {
    for (const auto& s : subnets)
      if (s.id == id) return &s;
    return nullptr;
  }

  const Subnet* find_subnet(std::string_view subnet_name) const {
    for (const auto& s : subnets)
      if (s.name == subnet_name) return &s;
    return nullptr;
  }

  std::string subnet_name(int id) const {
    if (id == kInternet) return "internet";
    const Subnet* s = find_subnet(id);
    return s ? s->name : "subnet " + std::to_string(id);
  }

  bool adjacent(int a, int b) const {
    return std::any_of(adjacency.begin(), adjacency.end(), [&](const auto& p) {
      return (p.first == a && p.second == b) || (p.first == b && p.second == a);
    });
  }

  bool internet_facing(int subnet) const { return adjacent(kInternet, subnet); }

  std::vector<std::size_t> hosts_in_subnet(int subnet) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < hosts.size(); ++i)
      if (hosts[i].subnet == subnet) out.push_back(i);
    return out;
  }

  // Index of the unique OperationalServer. Only meaningful on a validated
  // scenario; returns host_count() when there is none.
  std::size_t operational_server() const {
    for (std::size_t i = 0; i < hosts.size(); ++i)
      if (hosts[i].role == HostRole::OperationalServer) return i;
    return hosts.size();
  }
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string rule;
  std::string entity;

  std::string to_string() const { return entity.empty() ? rule : rule + ": " + entity; }
  bool operator==(const Violation&) const = default;
};

class ParseError : public Error {
 public:
  ParseError(int line, std::string field, const std::string& what)
      : Error(ErrorCode::ParseError, format(line, field, what)), line_(line), field_(std::move(field)) {}

  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string format(int line, const std::string& field, const std::string& what) {
    std::ostringstream os;
    os << "line " << line;
    if (!field.empty()) os << ", field '" << field << "'";
    os << ": " << what;
    return os.str();
  }

  int line_;
  std::string field_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error(ErrorCode::ValidationError, format(violations)), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  static std::string format(const std::vector<Violation>& vs) {
    std::string out = "invalid scenario:";
    for (const auto& v : vs) out += "\n  - " + v.to_string();
    return out;
  }

  std::vector<Violation> violations_;
};

namespace detail {

inline bool is_dotted_ipv4(const std::string& ip) {
  in_addr addr{};
  return inet_pton(AF_INET, ip.c_str(), &addr) == 1;
}

template <typename Range>
std::string join(const Range& items, std::string_view sep = ", ") {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += sep;
    out += item;
  }
  return out;
}

}  // namespace detail

// Total function: returns every violated invariant, empty iff valid.
inline std::vector<Violation> validate_topology(const Scenario& s) {
  std::vector<Violation> out;
  auto add = [&](std::string rule, std::string entity) {
    out.push_back({std::move(rule), std::move(entity)});
  };

  if (s.episode_length < 1) add("episode_length must be positive", std::to_string(s.episode_length));

  std::set<int> subnet_ids;
  std::set<std::string> subnet_names;
  for (const auto& sub : s.subnets) {
    if (sub.id <= 0 || !subnet_ids.insert(sub.id).second)
      add("subnet ids must be positive and unique", std::to_string(sub.id));
    if (!subnet_names.insert(sub.name).second) add("subnet names must be unique", sub.name);
  }
  if (s.subnets.empty()) add("at least one subnet required", "");

  std::set<std::string> names, ips;
  for (const auto& h : s.hosts) {
    if (!names.insert(h.name).second) add("host names must be unique", h.name);
    if (!ips.insert(h.ip).second) add("ip addresses must be unique", h.ip);
    if (!detail::is_dotted_ipv4(h.ip)) add("ip address must be dotted IPv4", h.name + " (" + h.ip + ")");
    if (!subnet_ids.count(h.subnet)) {
      add("host subnet unknown", h.name);
      continue;
    }
    int listings = 0;
    bool listed_in_own = false;
    for (const auto& sub : s.subnets) {
      if (std::count(sub.hosts.begin(), sub.hosts.end(), h.name) > 0) {
        ++listings;
        listed_in_own = listed_in_own || sub.id == h.subnet;
      }
    }
    if (listings != 1 || !listed_in_own) add("host must belong to exactly one subnet", h.name);
  }
  for (const auto& sub : s.subnets)
    for (const auto& hn : sub.hosts)
      if (!names.count(hn)) add("subnet lists unknown host", sub.name + "/" + hn);

  std::vector<std::string> op_servers;
  for (const auto& h : s.hosts) {
    if (h.role != HostRole::OperationalServer) continue;
    op_servers.push_back(h.name);
    if (h.subnet != 3) add("OperationalServer only in subnet 3", h.name);
  }
  if (op_servers.size() != 1)
    add("exactly one OperationalServer required",
        op_servers.empty() ? std::string("none") : detail::join(op_servers));

  bool internet_to_first = false;
  for (const auto& [a, b] : s.adjacency) {
    std::string pair = s.subnet_name(a) + "-" + s.subnet_name(b);
    if ((a != kInternet && !subnet_ids.count(a)) || (b != kInternet && !subnet_ids.count(b))) {
      add("adjacency references unknown subnet", pair);
      continue;
    }
    if (a == b) {
      add("adjacency self-loop", pair);
      continue;
    }
    if (a == kInternet || b == kInternet) {
      int other = a == kInternet ? b : a;
      if (other == 1)
        internet_to_first = true;
      else
        add("internet adjacency restricted to subnet 1", s.subnet_name(other));
    }
  }
  if (subnet_ids.count(1) && !internet_to_first)
    add("internet must be adjacent to subnet 1", s.subnet_name(1));

  // Connectivity over real subnets, ignoring the internet pseudo-node.
  if (!s.subnets.empty()) {
    std::set<int> seen{s.subnets.front().id};
    std::queue<int> frontier;
    frontier.push(s.subnets.front().id);
    while (!frontier.empty()) {
      int cur = frontier.front();
      frontier.pop();
      for (const auto& [a, b] : s.adjacency) {
        if (a == kInternet || b == kInternet) continue;
        int next = a == cur ? b : (b == cur ? a : -1);
        if (next > 0 && subnet_ids.count(next) && seen.insert(next).second) frontier.push(next);
      }
    }
    std::vector<std::string> unreachable;
    for (const auto& sub : s.subnets)
      if (!seen.count(sub.id)) unreachable.push_back(sub.name);
    if (!unreachable.empty()) add("subnet graph not connected", detail::join(unreachable));
  }

  for (const auto& [role, cost] : s.score_table.escalation)
    if (cost < 0) add("score costs must be non-negative", "escalation." + std::string(to_string(role)));
  if (s.score_table.impact < 0) add("score costs must be non-negative", "impact");
  if (s.score_table.blue_action < 0) add("score costs must be non-negative", "blue_action");

  for (Doctrine d : {Doctrine::Beeline, Doctrine::Meander}) {
    const auto& plan = s.doctrines.plan(d);
    std::string tag(to_string(d));
    if (plan.milestones.empty()) add("doctrine path must not be empty", tag);
    for (const auto& m : plan.milestones)
      if (!s.find_subnet(m) && !names.count(m)) add("doctrine milestone unknown", tag + ": " + m);
  }
  return out;
}

// ---------------------------------------------------------------------------
// YAML load / emit

namespace detail {

inline int line_of(const YAML::Node& node) { return node.Mark().line + 1; }

class ConfigReader {
 public:
  explicit ConfigReader(const YAML::Node& root) : root_(root) {}

  Scenario read() {
    if (!root_.IsMap()) throw ParseError(line_of(root_), "", "top level must be a mapping");
    Scenario s;
    s.name = scalar<std::string>(need(root_, "name", ""), "name");
    if (auto n = root_["episode_length"]) s.episode_length = scalar<int>(n, "episode_length");

    const YAML::Node subnets = need_seq(root_, "subnets", "");
    for (std::size_t i = 0; i < subnets.size(); ++i) {
      std::string path = "subnets[" + std::to_string(i) + "]";
      const YAML::Node n = subnets[i];
      Subnet sub;
      sub.id = scalar<int>(need(n, "id", path), path + ".id");
      sub.name = n["name"] ? scalar<std::string>(n["name"], path + ".name")
                           : "Subnet" + std::to_string(sub.id);
      const YAML::Node hosts = need_seq(n, "hosts", path);
      for (std::size_t j = 0; j < hosts.size(); ++j)
        sub.hosts.push_back(scalar<std::string>(hosts[j], path + ".hosts[" + std::to_string(j) + "]"));
      s.subnets.push_back(std::move(sub));
    }

    const YAML::Node hosts = need_seq(root_, "hosts", "");
    for (std::size_t i = 0; i < hosts.size(); ++i) {
      std::string path = "hosts[" + std::to_string(i) + "]";
      const YAML::Node n = hosts[i];
      HostSpec h;
      h.name = scalar<std::string>(need(n, "name", path), path + ".name");
      h.subnet = scalar<int>(need(n, "subnet", path), path + ".subnet");
      h.ip = scalar<std::string>(need(n, "ip", path), path + ".ip");
      const YAML::Node role = need(n, "role", path);
      auto parsed = parse_role(scalar<std::string>(role, path + ".role"));
      if (!parsed) throw ParseError(line_of(role), path + ".role", "unknown host role");
      h.role = *parsed;
      s.hosts.push_back(std::move(h));
    }

    const YAML::Node adjacency = need_seq(root_, "adjacency", "");
    for (std::size_t i = 0; i < adjacency.size(); ++i) {
      std::string path = "adjacency[" + std::to_string(i) + "]";
      const YAML::Node pair = adjacency[i];
      if (!pair.IsSequence() || pair.size() != 2)
        throw ParseError(line_of(pair), path, "expected a pair [a, b]");
      s.adjacency.emplace_back(endpoint(pair[0], path), endpoint(pair[1], path));
    }

    if (auto table = root_["score_table"]) read_score_table(table, s.score_table);
    if (auto doctrines = root_["doctrines"]) read_doctrines(doctrines, s.doctrines);
    return s;
  }

 private:
  static YAML::Node need(const YAML::Node& parent, const std::string& key, const std::string& path) {
    if (!parent.IsMap()) throw ParseError(line_of(parent), path, "expected a mapping");
    YAML::Node n = parent[key];
    if (!n) throw ParseError(line_of(parent), path.empty() ? key : path + "." + key, "missing field");
    return n;
  }

  static YAML::Node need_seq(const YAML::Node& parent, const std::string& key, const std::string& path) {
    YAML::Node n = need(parent, key, path);
    if (!n.IsSequence())
      throw ParseError(line_of(n), path.empty() ? key : path + "." + key, "expected a list");
    return n;
  }

  template <typename T>
  static T scalar(const YAML::Node& n, const std::string& field) {
    if (!n.IsScalar()) throw ParseError(line_of(n), field, "expected a scalar value");
    try {
      return n.as<T>();
    } catch (const YAML::BadConversion&) {
      throw ParseError(line_of(n), field, "wrong value type");
    }
  }

  static int endpoint(const YAML::Node& n, const std::string& path) {
    if (n.IsScalar() && n.Scalar() == "internet") return kInternet;
    return scalar<int>(n, path);
  }

  static void read_score_table(const YAML::Node& n, ScoreTable& t) {
    if (!n.IsMap()) throw ParseError(line_of(n), "score_table", "expected a mapping");
    if (auto esc = n["escalation"]) {
      if (!esc.IsMap()) throw ParseError(line_of(esc), "score_table.escalation", "expected a mapping");
      for (const auto& kv : esc) {
        std::string key = kv.first.as<std::string>();
        auto role = parse_role(key);
        if (!role) throw ParseError(line_of(kv.first), "score_table.escalation." + key, "unknown host role");
        t.escalation[*role] = scalar<int>(kv.second, "score_table.escalation." + key);
      }
    }
    if (auto impact = n["impact"]) t.impact = scalar<int>(impact, "score_table.impact");
    if (auto blue = n["blue_action"]) t.blue_action = scalar<int>(blue, "score_table.blue_action");
  }

  static void read_plan(const YAML::Node& n, const std::string& path, DoctrinePlan& plan) {
    if (!n.IsMap()) throw ParseError(line_of(n), path, "expected a mapping");
    if (auto prior = n["prior_path_knowledge"]) plan.prior_path_knowledge = scalar<bool>(prior, path + ".prior_path_knowledge");
    if (auto ms = n["path"]) {
      if (!ms.IsSequence()) throw ParseError(line_of(ms), path + ".path", "expected a list");
      plan.milestones.clear();
      for (std::size_t i = 0; i < ms.size(); ++i)
        plan.milestones.push_back(scalar<std::string>(ms[i], path + ".path[" + std::to_string(i) + "]"));
    }
  }

  static void read_doctrines(const YAML::Node& n, DoctrineCalibration& d) {
    if (!n.IsMap()) throw ParseError(line_of(n), "doctrines", "expected a mapping");
    if (auto b = n["beeline"]) read_plan(b, "doctrines.beeline", d.beeline);
    if (auto m = n["meander"]) read_plan(m, "doctrines.meander", d.meander);
    if (auto r = n["reveal"]) {
      if (!r.IsMap()) throw ParseError(line_of(r), "doctrines.reveal", "expected a mapping");
      auto flag = [&](const char* key, bool& out) {
        if (auto f = r[key]) out = scalar<bool>(f, std::string("doctrines.reveal.") + key);
      };
      flag("scan_reveals_hosts", d.reveal.scan_reveals_hosts);
      flag("escalation_reveals_next_lead", d.reveal.escalation_reveals_next_lead);
      flag("enterprise_escalation_reveals_op_server_services",
           d.reveal.enterprise_escalation_reveals_op_server_services);
    }
  }

  YAML::Node root_;
};

}  // namespace detail

// Parses and validates a scenario document. Throws ParseError (with line and
// field) on malformed input and ValidationError listing every violation.
inline Scenario load_scenario(std::string_view config_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(config_text));
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.mark.line + 1, "", e.msg);
  }
  Scenario s = detail::ConfigReader(root).read();
  if (auto violations = validate_topology(s); !violations.empty()) throw ValidationError(std::move(violations));
  return s;
}

// Canonical YAML form. load_scenario(to_yaml(s)) == s for any valid s.
inline std::string to_yaml(const Scenario& s) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << s.name;
  out << YAML::Key << "episode_length" << YAML::Value << s.episode_length;

  out << YAML::Key << "subnets" << YAML::Value << YAML::BeginSeq;
  for (const auto& sub : s.subnets) {
    out << YAML::BeginMap << YAML::Key << "id" << YAML::Value << sub.id << YAML::Key << "name"
        << YAML::Value << sub.name << YAML::Key << "hosts" << YAML::Value << YAML::Flow << sub.hosts
        << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "hosts" << YAML::Value << YAML::BeginSeq;
  for (const auto& h : s.hosts) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "name" << YAML::Value << h.name << YAML::Key
        << "subnet" << YAML::Value << h.subnet << YAML::Key << "ip" << YAML::Value << h.ip << YAML::Key
        << "role" << YAML::Value << std::string(to_string(h.role)) << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "adjacency" << YAML::Value << YAML::BeginSeq;
  for (const auto& [a, b] : s.adjacency) {
    out << YAML::Flow << YAML::BeginSeq;
    for (int v : {a, b}) {
      if (v == kInternet)
        out << "internet";
      else
        out << v;
    }
    out << YAML::EndSeq;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "score_table" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "escalation" << YAML::Value << YAML::Flow << YAML::BeginMap;
  for (const auto& [role, cost] : s.score_table.escalation)
    out << YAML::Key << std::string(to_string(role)) << YAML::Value << cost;
  out << YAML::EndMap;
  out << YAML::Key << "impact" << YAML::Value << s.score_table.impact;
  out << YAML::Key << "blue_action" << YAML::Value << s.score_table.blue_action;
  out << YAML::EndMap;

  auto plan = [&](const char* key, const DoctrinePlan& p) {
    out << YAML::Key << key << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "prior_path_knowledge" << YAML::Value << p.prior_path_knowledge;
    out << YAML::Key << "path" << YAML::Value << YAML::Flow << p.milestones;
    out << YAML::EndMap;
  };
  out << YAML::Key << "doctrines" << YAML::Value << YAML::BeginMap;
  plan("beeline", s.doctrines.beeline);
  plan("meander", s.doctrines.meander);
  const auto& r = s.doctrines.reveal;
  out << YAML::Key << "reveal" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "scan_reveals_hosts" << YAML::Value << r.scan_reveals_hosts;
  out << YAML::Key << "escalation_reveals_next_lead" << YAML::Value << r.escalation_reveals_next_lead;
  out << YAML::Key << "enterprise_escalation_reveals_op_server_services" << YAML::Value
      << r.enterprise_escalation_reveals_op_server_services;
  out << YAML::EndMap;
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

// FNV-1a over the canonical YAML form, as 16 hex digits.
inline std::string content_hash(const Scenario& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : to_yaml(s)) {
    h ^= c;
    h *= 0x00000100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// The bundled scenario; scenarios/default.yaml carries the same text.
inline constexpr std::string_view kDefaultScenarioYaml = R"(# Interactive defense game: the default defended network.
# 7 hosts (4 computers, 3 servers) in 3 subnets; the internet reaches subnet 1 only.
name: idg-default
episode_length: 25
subnets:
  - id: 1
    name: Subnet1
    hosts: [User1, User2, Defender]
  - id: 2
    name: Subnet2
    hosts: [Enterprise1, Enterprise2]
  - id: 3
    name: Subnet3
    hosts: [Op_Server0, Op_Host0]
hosts:
  - {name: User1, subnet: 1, ip: 10.0.1.1, role: UserComputer}
  - {name: User2, subnet: 1, ip: 10.0.1.2, role: UserComputer}
  - {name: Defender, subnet: 1, ip: 10.0.1.3, role: UserComputer}
  - {name: Enterprise1, subnet: 2, ip: 10.0.2.1, role: EnterpriseServer}
  - {name: Enterprise2, subnet: 2, ip: 10.0.2.2, role: EnterpriseServer}
  - {name: Op_Server0, subnet: 3, ip: 10.0.3.1, role: OperationalServer}
  - {name: Op_Host0, subnet: 3, ip: 10.0.3.2, role: OperationalHost}
adjacency:
  - [internet, 1]
  - [1, 2]
  - [2, 3]
score_table:
  escalation: {UserComputer: 5, EnterpriseServer: 10, OperationalServer: 15, OperationalHost: 5}
  impact: 10
  blue_action: 0
doctrines:
  beeline:
    prior_path_knowledge: true
    path: [Subnet1, User1, Enterprise1, Subnet2, Enterprise2, Op_Server0]
  meander:
    prior_path_knowledge: false
    path: [Subnet1, User1, Enterprise1, Subnet2, User2, Defender, Enterprise2, Subnet3, Op_Server0]
  reveal:
    scan_reveals_hosts: true
    escalation_reveals_next_lead: true
    enterprise_escalation_reveals_op_server_services: true
)";

inline Scenario default_scenario() {
  static const Scenario s = load_scenario(kDefaultScenarioYaml);
  return s;
}

}  // namespace idg
