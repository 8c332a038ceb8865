#pragma once

#include "ltlpsi/search.hpp"

namespace ltlpsi {

/* One robot's minimum-cost realization of the accepted walk. Moves are
 * robot-model transitions tagged with the plan segment they serve; the
 * last move of each segment is the progress move that crosses to the next
 * automaton state. The finale of a segment is the suffix that must be
 * held back for the synchronization barrier: the progress move plus the
 * moves that start the non-instantaneous actions it completes.
 */
struct Behavior {
  struct Move {
    int from = 0, to = 0;
    int segment = 0;
    bool progress = false;
    double cost = 0.0;
  };
  struct Segment {
    int begin = 0, end = 0;    // move index range; the progress move is end-1
    int finale_begin = 0;      // first held-back move
    int wait_state = 0;        // model state occupied while waiting for release
  };

  std::string robot;
  BindingSet assignment;
  std::vector<Move> moves;
  std::vector<Segment> segments;  // aligned with the plan's beta
  int initial_state = 0;
  int final_state = 0;
  double total_cost = 0.0;
};

/* Layered shortest path through the product: dwell moves stay inside one
 * beta segment under its self-loop label, progress moves cross segments
 * under the transition label, and the path must end where the robot can
 * sit on the accepting state's self-loop forever. Cost ties break toward
 * fewer moves, then lexicographic state order. Throws when no realization
 * exists (the search should have prevented that).
 */
Behavior find_behavior(const ProductAutomaton& product, const ActionCatalog& catalog,
                       const std::string& robot, BindingSet r,
                       const std::vector<BuchiEdge>& beta,
                       const std::vector<std::optional<QuadLabel>>& dwell_labels,
                       const BuchiEdge& final_self);

/* Robots that must take part in the synchronization for a transition:
 * everyone holding a binding the label mentions. A robot outside the
 * returned set, or alone in it, exchanges no messages for this segment.
 */
std::vector<std::string> sync_participants(const QuadLabel& label,
                                           const std::map<std::string, BindingSet>& assignments);

/* Actions started / completed by one robot-model move. Completions only
 * report non-instantaneous actions; instantaneous effects are read off
 * the label delta directly.
 */
PropSet moves_started(const RobotModel& m, const ActionCatalog& catalog, int from, int to);
PropSet moves_completed(const RobotModel& m, const ActionCatalog& catalog, int from, int to);

}  // namespace ltlpsi
