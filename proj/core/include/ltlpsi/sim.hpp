#pragma once

#include <cstdint>

#include "ltlpsi/behavior.hpp"

namespace ltlpsi {

struct SimConfig {
  std::uint64_t seed = 1;
  int max_events = 200000;         // hard stop for runaway runs
  double message_latency = 0.0;    // seconds; acceptance runs use 0
  bool zero_durations = false;     // degenerate instantaneous execution
  // fault injection for the deadlock detector
  bool drop_readiness_messages = false;
  bool drop_completion_messages = false;
};

struct SyncMessage {
  double time = 0.0;
  std::string robot;
  std::string target_state;  // automaton state the segment enters
  int flag = 0;              // 1 readiness at the waiting state, 0 completion
};

struct SimEvent {
  double time = 0.0;
  int phase = 0;
  std::string robot;
  std::string kind;    // move / start / ready / release / complete / commit / done
  std::string detail;
};

struct Snapshot {
  double time = 0.0;
  int phase = 0;
  std::vector<PropSet> atoms;  // aligned with SimRun::robots
};

struct SimRun {
  std::vector<std::string> robots;  // plan team order
  std::vector<SimEvent> events;
  std::vector<SyncMessage> messages;
  std::vector<Snapshot> snapshots;
  bool deadlock = false;
  bool horizon_exhausted = false;
  std::string error;

  bool ok() const { return !deadlock && !horizon_exhausted; }
  // earliest time a proposition became true for a robot; -1 when never
  double first_time(const std::string& robot, const std::string& prop) const;
};

/* Execute every robot's behavior under the synchronization policy:
 * segments into intermediate states run unsynchronized; at every other
 * transition the team waits for all robots to reach their waiting states
 * (participants broadcast readiness), starts the held-back finale moves
 * together, broadcasts completions of non-instantaneous finale actions,
 * and fires instantaneous effects only after every participant has
 * completed. Deterministic for a fixed seed.
 */
SimRun simulate(const TeamPlan& plan, const std::map<std::string, Behavior>& behaviors,
                const Fleet& fleet, const SimConfig& config);

}  // namespace ltlpsi
