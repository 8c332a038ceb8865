#pragma once

#include <set>

#include "ltlpsi/binding_ops.hpp"
#include "ltlpsi/buchi.hpp"

namespace ltlpsi {

/* Team-level constraints produced while inspecting consecutive
 * transitions. exactly_one: each member set must end up on one single
 * robot (no other robot may hold any of its bindings). all_or_nothing:
 * a robot holding any binding of a member set must hold all of them.
 */
struct BindingConstraints {
  std::set<BindingSet> exactly_one;
  std::set<BindingSet> all_or_nothing;

  void merge(const BindingConstraints& o);
  bool empty() const { return exactly_one.empty() && all_or_nothing.empty(); }
};

/* Result of inspecting one pair of consecutive transitions: possibly a
 * rewritten automaton plus the list of added or modified edges (empty, one
 * modified edge, or the three edges through a fresh intermediate state,
 * whose middle entry is the intermediate self-loop).
 */
struct BuchiUpdate {
  BuchiAutomaton automaton;
  std::vector<BuchiEdge> updated_edges;
  BindingConstraints constraints;
  bool changed() const { return !updated_edges.empty(); }
};

/* Inspect consecutive transitions e1, e2 (exactly one of which must be a
 * self-transition) and enforce an ordering on non-instantaneous
 * completions when several of them would otherwise have to flip together:
 * when e1 is the self-transition, route it through a fresh intermediate
 * state whose self-loop additionally pins the propositions only the
 * second label constrains; when e2 is the self-transition, strengthen
 * e1's label the same way. No structural change happens when at most one
 * non-instantaneous proposition rides on e2, when nothing explicitly
 * changes truth value, or when the strengthened label equals e1's label.
 */
BuchiUpdate update_buchi(const BuchiAutomaton& b, const BuchiEdge& e1, const BuchiEdge& e2,
                         const ActionCatalog& catalog);

}  // namespace ltlpsi
