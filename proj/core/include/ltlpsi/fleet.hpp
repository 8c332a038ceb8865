#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ltlpsi/robot.hpp"

namespace ltlpsi {

/* Region map: undirected weighted adjacency between named regions.
 * Motion through region X is abstracted by the action proposition X
 * (moving toward X) and its completion X_c (arrived in X).
 */
struct Environment {
  std::vector<std::string> regions;
  std::vector<std::tuple<std::string, std::string, double>> edges;

  int region_index(const std::string& name) const;
};

struct RobotSpec {
  std::string name;
  std::vector<std::string> capabilities;
  std::string initial_region;
};

struct Fleet {
  Environment environment;
  ActionCatalog catalog;  // every action including per-region motion
  std::vector<RobotSpec> specs;
  std::vector<RobotModel> robots;

  const RobotModel& robot(const std::string& name) const;
  int robot_index(const std::string& name) const;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Load a fleet from the JSON schema described in the README: environment
 * regions and edges, action duration models, capability definitions and
 * robots. Validates invariants and builds the robot model products.
 */
Fleet load_fleet(const std::string& json_text);
Fleet load_fleet_file(const std::string& path);

/* Motion capability over the region map: two states per region, "head_X"
 * labeled {X} and "at_X" labeled {X_c}; departures carry the map weight
 * and arrivals are free.
 */
CapabilityTS make_motion_capability(const Environment& env, const std::string& initial_region);

/* One-action capability: idle -> executing(-> completed for actions with
 * duration) -> idle. Instantaneous actions label their executing state
 * with both the action and its completion.
 */
CapabilityTS make_action_capability(const std::string& cap_name,
                                    const std::vector<std::string>& actions,
                                    const ActionCatalog& catalog);

}  // namespace ltlpsi
