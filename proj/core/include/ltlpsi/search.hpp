#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>

#include "ltlpsi/fleet.hpp"
#include "ltlpsi/product.hpp"
#include "ltlpsi/refine.hpp"

namespace ltlpsi {

/* Candidate binding assignments for one robot. Feasibility is closed
 * under taking subsets, so the family of feasible sets is represented by
 * its maximal members; the all-or-nothing constraints are applied on top
 * when members are materialized.
 */
struct CandidateFamily {
  std::vector<BindingSet> maximals;  // antichain, sorted

  static CandidateFamily full(BindingSet universe) { return {{universe}}; }
  bool contains(BindingSet r) const;

  // largest member of `m`'s down-set compatible with every all-or-nothing
  // constraint; unique because compatible subsets are closed under union
  static BindingSet constrained(BindingSet m, const std::set<BindingSet>& all_or_nothing);

  // distinct non-empty constrained maximals, largest first
  std::vector<BindingSet> options(const std::set<BindingSet>& all_or_nothing) const;
  BindingSet coverage(const std::set<BindingSet>& all_or_nothing) const;
  bool empty(const std::set<BindingSet>& all_or_nothing) const;
};

struct SearchOptions {
  bool strict_visited = false;      // key visited on (edge, candidate signature)
  bool insert_intermediate = true;  // false disables automaton refinement (ablation)
};

/* Result of the trace search, before exactly-one constraints are resolved
 * to a single owner.
 */
struct SearchResult {
  std::vector<std::string> robots;  // still-alive team, fleet order
  std::vector<CandidateFamily> families;
  std::vector<BindingSet> chosen;   // one covering assignment per robot
  BindingConstraints constraints;

  std::vector<BuchiEdge> raw_trace;     // alternating dwell/progress walk
  std::vector<BuchiEdge> beta;          // progress edges in order
  std::vector<std::optional<QuadLabel>> dwell_labels;  // per beta entry, at its source
  QuadLabel final_dwell;                // self-loop at the accepting target

  std::shared_ptr<const BuchiAutomaton> original;
  std::shared_ptr<const BuchiAutomaton> automaton;  // refined
  std::vector<std::shared_ptr<const ProductAutomaton>> products;  // aligned with robots
};

/* Per-robot single-assignment plan after resolution. */
struct TeamPlan {
  std::vector<std::string> team;
  std::map<std::string, BindingSet> assignments;
  BindingConstraints constraints;

  std::vector<BuchiEdge> beta;
  std::vector<std::optional<QuadLabel>> dwell_labels;
  QuadLabel final_dwell;
  std::map<std::string, QuadLabel> self_loops;  // state name -> dwell label

  std::shared_ptr<const BuchiAutomaton> original;
  std::shared_ptr<const BuchiAutomaton> automaton;
  std::map<std::string, std::shared_ptr<const ProductAutomaton>> products;
};

/* Whether candidate assignment `r` lets the robot follow the automaton
 * walk: a product path realizing every progress step, with finite dwell on
 * the self-loop elements, every step's admissible bindings containing r.
 * `final_self` when present additionally demands a place to loop forever.
 */
bool trace_feasible(const ProductAutomaton& g, BindingSet r,
                    const std::vector<BuchiEdge>& raw_trace,
                    const BuchiEdge* final_self);

/* Refine a candidate family against a trace: keeps exactly the subsets
 * that remain feasible.
 */
CandidateFamily update_bindings(const CandidateFamily& fam, const ProductAutomaton& g,
                                const std::vector<BuchiEdge>& raw_trace,
                                const BuchiEdge* final_self);

/* Depth-first search for an accepting automaton walk with full binding
 * coverage; refines the automaton as it goes and maintains per-branch
 * copies. Returns nothing when the task is unsatisfiable by this fleet.
 */
std::optional<SearchResult> find_team(const Fleet& fleet,
                                      std::shared_ptr<const BuchiAutomaton> automaton,
                                      BindingSet universe, const SearchOptions& options = {});

/* Chooser for exactly-one constraints: given the constraint set and the
 * candidate robots, return the winner's name. Candidates arrive sorted by
 * name.
 */
using SingleChooser =
    std::function<std::string(BindingSet constraint, const std::vector<std::string>& candidates)>;

SingleChooser first_candidate_chooser();
SingleChooser min_cost_chooser(std::function<double(const std::string&, BindingSet)> cost,
                               std::map<std::string, double>* cost_log = nullptr);

/* Apply exactly-one constraints: one robot keeps each constraint set,
 * every other robot drops those bindings (and leaves the team when
 * nothing remains). Throws std::runtime_error when a constraint has no
 * candidate owner.
 */
TeamPlan resolve_single(const SearchResult& sr, const Fleet& fleet, const SingleChooser& choose);

}  // namespace ltlpsi
