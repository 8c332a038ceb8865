#pragma once

#include <set>
#include <string>
#include <vector>

#include "ltlpsi/task.hpp"

namespace ltlpsi {

/* A finite lasso over per-robot proposition snapshots. steps[i][j] is the
 * set of propositions true for robot j at step i; execution repeats from
 * loop_start forever.
 */
struct TeamTrace {
  std::vector<std::vector<std::set<std::string>>> steps;
  std::size_t loop_start = 0;

  std::size_t length() const { return steps.size(); }
  std::size_t robots() const { return steps.empty() ? 0 : steps[0].size(); }
  void validate() const;
};

using BindingAssignment = std::vector<BindingSet>;  // robot index -> bindings held

/* Reference semantics of a task over a team trace, evaluated at step 0.
 * Works on both raw (annotated) and rewritten formulas. For an annotated
 * block, some combination K accepted by the annotation must be covered by
 * the team and all (for the plain reading) or at least one (for the negated
 * reading) of the robots holding a binding in K must satisfy the block.
 */
bool evaluate(const TaskFormula& f, const TeamTrace& trace, const BindingAssignment& R);

}  // namespace ltlpsi
