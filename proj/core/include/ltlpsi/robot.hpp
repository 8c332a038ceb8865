#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace ltlpsi {

using PropSet = std::set<std::string>;

struct CapabilityEdge {
  int from = 0, to = 0;
  double weight = 0.0;
};

/* Weighted transition system for one capability. Every state gets a
 * zero-cost waiting self-loop.
 */
struct CapabilityTS {
  std::string name;
  std::vector<std::string> state_names;
  std::vector<PropSet> labels;
  int initial = 0;
  std::vector<CapabilityEdge> edges;

  int add_state(const std::string& name, PropSet label);
  void add_edge(int from, int to, double weight);
  void ensure_self_loops();
  PropSet atoms() const;
  void check() const;
};

/* Duration model for one action: a fixed value or a uniform range in
 * seconds. An action is instantaneous exactly when the duration is
 * identically zero; its completion proposition is <name>_c.
 */
struct ActionSpec {
  std::string name;
  double duration_lo = 0.0;
  double duration_hi = 0.0;

  bool instantaneous() const { return duration_lo == 0.0 && duration_hi == 0.0; }
  std::string completion() const { return name + "_c"; }
};

struct ActionCatalog {
  std::map<std::string, ActionSpec> actions;  // keyed by action name

  void add(ActionSpec a);
  bool known_action(const std::string& name) const { return actions.count(name) > 0; }
  // classify(): completion propositions partitioned by instantaneity
  std::pair<PropSet, PropSet> classify() const;  // {instantaneous, non-instantaneous}
  bool completion_is_instantaneous(const std::string& completion_prop) const;
  // whether a proposition (action or completion) denotes something with
  // non-zero duration; action propositions themselves are instantaneous
  bool prop_is_non_instantaneous(const std::string& prop) const;
  const ActionSpec& action_of_completion(const std::string& completion_prop) const;
  void require_covers(const PropSet& props) const;
};

struct RobotEdge {
  int from = 0, to = 0;
  double weight = 0.0;
};

/* Synchronous product of a robot's capabilities: each component moves
 * along its own transitions or waits, labels are unions, costs add.
 */
struct RobotModel {
  std::string name;
  std::vector<std::string> capability_names;
  std::vector<std::string> state_names;   // joined component names
  std::vector<std::vector<int>> factors;  // per state, component state indices
  std::vector<PropSet> labels;
  int initial = 0;
  std::vector<RobotEdge> edges;
  std::vector<std::vector<std::pair<int, double>>> adjacency;  // from -> (to, w)

  PropSet atoms() const;
  void finalize();  // sort edges, build adjacency
  void check() const;
};

RobotModel product(const std::string& robot_name, const std::vector<CapabilityTS>& capabilities);

}  // namespace ltlpsi
