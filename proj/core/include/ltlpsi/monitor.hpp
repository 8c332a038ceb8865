#pragma once

#include "ltlpsi/sim.hpp"

namespace ltlpsi {

/* Verdict of replaying an executed trace against the task automaton built
 * before any refinement. Violations carry the snapshot index and a short
 * account of why no transition was satisfied.
 */
struct MonitorVerdict {
  enum class Outcome { SatisfiedPrefixAccepting, Violated };
  Outcome outcome = Outcome::SatisfiedPrefixAccepting;
  std::size_t violation_index = 0;
  std::string explanation;

  bool ok() const { return outcome == Outcome::SatisfiedPrefixAccepting; }
};

/* Does a team snapshot satisfy a transition label: all_true/all_false
 * propositions must hold/fail for every robot assigned the binding,
 * some_true/some_false for at least one of them.
 */
bool snapshot_satisfies(const QuadLabel& label, const std::vector<PropSet>& atoms,
                        const std::vector<BindingSet>& assignments);

/* Nondeterministic replay of the snapshot sequence: the automaton state
 * set empties exactly when some snapshot violates every enabled
 * transition. The finite run is accepted when, with the final snapshot
 * repeating forever, an accepting state stays reachable and revisitable.
 */
MonitorVerdict monitor(const std::vector<Snapshot>& snapshots, const BuchiAutomaton& original,
                       const std::vector<std::string>& robots,
                       const std::map<std::string, BindingSet>& assignments);

}  // namespace ltlpsi
