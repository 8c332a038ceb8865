#pragma once

#include <memory>

#include "ltlpsi/binding_ops.hpp"
#include "ltlpsi/buchi.hpp"
#include "ltlpsi/refine.hpp"
#include "ltlpsi/robot.hpp"

namespace ltlpsi {

/* Product of one robot model with the task automaton. States are
 * (model state, automaton state) pairs; an edge exists when the model
 * allows the move and at least one binding choice is admissible for the
 * transition label; the admissible bindings ride on the edge as a mask.
 * Costs come from the robot model alone and acceptance from the
 * automaton component alone.
 */
struct ProductEdge {
  int from = 0, to = 0;
  int buchi_from = 0, buchi_to = 0;
  QuadLabel label;
  BindingSet admissible;
  double cost = 0.0;
};

class ProductAutomaton {
public:
  ProductAutomaton() = default;
  ProductAutomaton(const RobotModel* model, BindingSet universe);

  const RobotModel& model() const { return *model_; }
  BindingSet universe() const { return universe_; }

  int state_id(int model_state, int buchi_state) const;
  std::pair<int, int> state_of(int id) const;  // (model state, buchi state)
  int initial() const { return initial_; }
  std::size_t num_states() const { return num_buchi_states_ * model_->state_names.size(); }
  bool accepting(int id, const BuchiAutomaton& b) const;

  const std::vector<ProductEdge>& edges() const { return edges_; }
  const std::vector<std::vector<int>>& out_edges() const { return out_; }

  // product edges generated by one automaton transition
  const std::vector<int>& edges_matching(const BuchiEdge& e) const;

  // reachable-part equality under the natural (model, automaton-name)
  // state identification; the oracle for incremental updates
  bool equivalent(const ProductAutomaton& o, const BuchiAutomaton& b_self,
                  const BuchiAutomaton& b_other) const;

private:
  friend ProductAutomaton build_product(const RobotModel&, const BuchiAutomaton&, BindingSet);
  friend ProductAutomaton update_product(const ProductAutomaton&, const BuchiAutomaton&,
                                         const BuchiAutomaton&, const std::vector<BuchiEdge>&);

  void add_edge(ProductEdge e);
  void index_edges();

  const RobotModel* model_ = nullptr;
  BindingSet universe_;
  std::size_t num_buchi_states_ = 0;
  int initial_ = -1;
  std::vector<ProductEdge> edges_;
  std::vector<std::vector<int>> out_;  // state id -> edge indices
  std::map<std::tuple<int, int, QuadLabel>, std::vector<int>> by_transition_;
};

/* Full product per the construction above. */
ProductAutomaton build_product(const RobotModel& model, const BuchiAutomaton& b,
                               BindingSet universe);

/* Rebuild only what an automaton update touched: for an intermediate-state
 * insertion, drop the product edges of the removed transition and cross
 * the whole model with the three new edges; for a strengthened label,
 * re-validate the edges mapped to the modified transition.
 */
ProductAutomaton update_product(const ProductAutomaton& g, const BuchiAutomaton& b_old,
                                const BuchiAutomaton& b_upd,
                                const std::vector<BuchiEdge>& updated_edges);

std::string export_dot(const ProductAutomaton& g, const BuchiAutomaton& b);

}  // namespace ltlpsi
