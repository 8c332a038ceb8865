#include "ltlpsi/fleet.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ltlpsi {

using nlohmann::json;

int Environment::region_index(const std::string& name) const {
  for (std::size_t i = 0; i < regions.size(); ++i)
    if (regions[i] == name) return static_cast<int>(i);
  return -1;
}

const RobotModel& Fleet::robot(const std::string& name) const {
  int i = robot_index(name);
  if (i < 0) throw ConfigError("unknown robot " + name);
  return robots[i];
}

int Fleet::robot_index(const std::string& name) const {
  for (std::size_t i = 0; i < robots.size(); ++i)
    if (robots[i].name == name) return static_cast<int>(i);
  return -1;
}

CapabilityTS make_motion_capability(const Environment& env, const std::string& initial_region) {
  CapabilityTS ts;
  ts.name = "motion";
  std::vector<int> head(env.regions.size()), at(env.regions.size());
  for (std::size_t r = 0; r < env.regions.size(); ++r) {
    const std::string& region = env.regions[r];
    head[r] = ts.add_state("head_" + region, {region});
    at[r] = ts.add_state("at_" + region, {region + "_c"});
  }
  auto connect = [&](int a, int b, double w) {
    ts.add_edge(at[a], head[b], w);  // depart, paying the travel cost
    ts.add_edge(head[b], at[b], 0.0);  // arrive
  };
  for (const auto& [a, b, w] : env.edges) {
    int ia = env.region_index(a), ib = env.region_index(b);
    if (ia < 0 || ib < 0) throw ConfigError("edge references unknown region " + a + "/" + b);
    connect(ia, ib, w);
    connect(ib, ia, w);
  }
  int init = env.region_index(initial_region);
  if (init < 0) throw ConfigError("unknown initial region " + initial_region);
  ts.initial = at[init];
  ts.ensure_self_loops();
  ts.check();
  return ts;
}

CapabilityTS make_action_capability(const std::string& cap_name,
                                    const std::vector<std::string>& actions,
                                    const ActionCatalog& catalog) {
  CapabilityTS ts;
  ts.name = cap_name;
  int idle = ts.add_state("idle", {});
  ts.initial = idle;
  for (const auto& a : actions) {
    if (!catalog.known_action(a)) throw ConfigError("action '" + a + "' has no duration model");
    const ActionSpec& spec = catalog.actions.at(a);
    if (spec.instantaneous()) {
      int on = ts.add_state(a, {a, spec.completion()});
      ts.add_edge(idle, on, 1.0);
      ts.add_edge(on, idle, 1.0);
    } else {
      int run = ts.add_state(a + "_run", {a});
      int done = ts.add_state(a + "_done", {spec.completion()});
      ts.add_edge(idle, run, 1.0);
      ts.add_edge(run, done, 0.0);
      ts.add_edge(done, idle, 1.0);
    }
  }
  ts.ensure_self_loops();
  ts.check();
  return ts;
}

Fleet load_fleet(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("fleet config is not valid JSON: ") + e.what());
  }

  Fleet fleet;
  if (!j.count("environment") || !j.count("robots"))
    throw ConfigError("fleet config needs 'environment' and 'robots'");

  const json& env = j["environment"];
  for (const auto& r : env.value("regions", json::array()))
    fleet.environment.regions.push_back(r.get<std::string>());
  if (fleet.environment.regions.empty()) throw ConfigError("environment has no regions");
  for (const auto& e : env.value("edges", json::array())) {
    if (!e.is_array() || e.size() != 3) throw ConfigError("environment edge must be [a, b, weight]");
    fleet.environment.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>(),
                                         e[2].get<double>());
  }

  // motion duration model applies to every region action
  double mlo = 0.5, mhi = 3.0;
  if (j.count("motion_duration")) {
    mlo = j["motion_duration"][0].get<double>();
    mhi = j["motion_duration"][1].get<double>();
  }
  for (const auto& r : fleet.environment.regions)
    fleet.catalog.add({r, mlo, mhi});

  for (const auto& a : j.value("actions", json::array())) {
    ActionSpec spec;
    spec.name = a.at("name").get<std::string>();
    if (a.count("duration")) {
      spec.duration_lo = a["duration"][0].get<double>();
      spec.duration_hi = a["duration"][1].get<double>();
    }
    fleet.catalog.add(spec);
  }

  std::map<std::string, std::vector<std::string>> action_caps;
  for (const auto& [name, body] : j.value("capabilities", json::object()).items()) {
    if (body.value("type", "") == "motion") continue;
    std::vector<std::string> acts;
    for (const auto& a : body.value("actions", json::array())) acts.push_back(a.get<std::string>());
    if (acts.empty()) throw ConfigError("capability '" + name + "' lists no actions");
    action_caps[name] = acts;
  }

  for (const auto& r : j["robots"]) {
    RobotSpec spec;
    spec.name = r.at("name").get<std::string>();
    spec.initial_region = r.at("initial").get<std::string>();
    for (const auto& c : r.at("capabilities")) spec.capabilities.push_back(c.get<std::string>());
    fleet.specs.push_back(spec);

    std::vector<CapabilityTS> caps;
    for (const auto& c : spec.capabilities) {
      if (c == "motion") {
        caps.push_back(make_motion_capability(fleet.environment, spec.initial_region));
      } else if (action_caps.count(c)) {
        caps.push_back(make_action_capability(c, action_caps[c], fleet.catalog));
      } else {
        throw ConfigError("robot " + spec.name + " references unknown capability '" + c + "'");
      }
    }
    try {
      fleet.robots.push_back(product(spec.name, caps));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("robot " + spec.name + ": " + e.what());
    }
  }
  if (fleet.robots.empty()) throw ConfigError("fleet has no robots");
  return fleet;
}

Fleet load_fleet_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open fleet config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_fleet(ss.str());
}

}  // namespace ltlpsi
