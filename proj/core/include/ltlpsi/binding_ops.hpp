#pragma once

#include "ltlpsi/quad_label.hpp"
#include "ltlpsi/robot.hpp"

namespace ltlpsi {

/* Bindings appearing anywhere in a transition label. */
BindingSet bindings_of_label(const QuadLabel& label);

/* Bindings appearing in a plain set of quantified propositions. */
BindingSet bindings_of_set(const QuadPropSet& props);

/* The label restricted to one binding, with the binding stripped: which
 * propositions a robot carrying it must make true or false, split by the
 * for-all / there-exists reading.
 */
struct CapabilityView {
  PropSet all_true, some_true, all_false, some_false;

  PropSet required_true() const;   // all_true + some_true
  PropSet required_false() const;  // all_false + some_false
  bool empty() const;
};

CapabilityView capability_view(const QuadLabel& label, int binding);

/* Whether one binding can be carried by a robot whose next state is
 * labeled `state_label`: everything the binding requires true is present
 * and everything it requires false is absent. Bindings the label does not
 * mention are always admissible.
 */
bool binding_admissible(const QuadLabel& label, int binding, const PropSet& state_label);

/* Bitmask of admissible bindings from `universe`; the family of valid
 * binding assignments for this transition is exactly the non-empty
 * subsets of the mask.
 */
BindingSet admissible_bindings(const QuadLabel& label, BindingSet universe,
                               const PropSet& state_label);

/* Materialized family of valid binding sets for a robot-model transition
 * (the oracle-friendly form of admissible_bindings).
 */
std::vector<BindingSet> valid_bindings(const RobotModel& model, int from_state,
                                       const QuadLabel& label, int to_state,
                                       BindingSet universe);

/* The label filtered to propositions whose action has non-zero duration. */
QuadLabel intermediate_props(const QuadLabel& label, const ActionCatalog& catalog);

/* How non-instantaneous propositions change explicit truth values from
 * one label to the next, plus the ones newly constrained by the second
 * label.
 */
struct PiSets {
  QuadPropSet true_to_false;       // required true, then explicitly false
  QuadPropSet false_to_true;       // required false, then explicitly true
  QuadPropSet some_true_to_false;  // there-exists true, then explicitly false
  QuadPropSet some_false_to_true;  // there-exists false, then explicitly true
  QuadPropSet fresh_all_true;      // constrained only by the second label
  QuadPropSet fresh_some_true;
  QuadPropSet fresh_all_false;
  QuadPropSet fresh_some_false;

  QuadPropSet changed() const;  // union of the four change sets
  QuadPropSet fresh() const;    // union of the four fresh sets
};

PiSets pi_sets(const QuadLabel& intermediate_first, const QuadLabel& intermediate_second);

}  // namespace ltlpsi
