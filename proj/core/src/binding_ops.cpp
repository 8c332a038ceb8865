#include "ltlpsi/binding_ops.hpp"

namespace ltlpsi {

BindingSet bindings_of_label(const QuadLabel& label) { return label.bindings(); }

BindingSet bindings_of_set(const QuadPropSet& props) {
  BindingSet s;
  for (const auto& p : props) s.insert(p.binding);
  return s;
}

PropSet CapabilityView::required_true() const {
  PropSet out = all_true;
  out.insert(some_true.begin(), some_true.end());
  return out;
}

PropSet CapabilityView::required_false() const {
  PropSet out = all_false;
  out.insert(some_false.begin(), some_false.end());
  return out;
}

bool CapabilityView::empty() const {
  return all_true.empty() && some_true.empty() && all_false.empty() && some_false.empty();
}

CapabilityView capability_view(const QuadLabel& label, int binding) {
  CapabilityView v;
  auto pick = [binding](const QuadPropSet& in, PropSet& out) {
    for (const auto& p : in)
      if (p.binding == binding) out.insert(p.prop);
  };
  pick(label.all_true, v.all_true);
  pick(label.some_true, v.some_true);
  pick(label.all_false, v.all_false);
  pick(label.some_false, v.some_false);
  return v;
}

bool binding_admissible(const QuadLabel& label, int binding, const PropSet& state_label) {
  CapabilityView v = capability_view(label, binding);
  for (const auto& p : v.required_true())
    if (!state_label.count(p)) return false;
  for (const auto& p : v.required_false())
    if (state_label.count(p)) return false;
  return true;
}

BindingSet admissible_bindings(const QuadLabel& label, BindingSet universe,
                               const PropSet& state_label) {
  BindingSet mask;
  for (int b : universe.to_vector())
    if (binding_admissible(label, b, state_label)) mask.insert(b);
  return mask;
}

std::vector<BindingSet> valid_bindings(const RobotModel& model, int from_state,
                                       const QuadLabel& label, int to_state,
                                       BindingSet universe) {
  bool connected = false;
  for (const auto& [t, w] : model.adjacency[from_state])
    if (t == to_state) connected = true;
  if (!connected) throw std::invalid_argument("states are not connected in the robot model");

  BindingSet mask = admissible_bindings(label, universe, model.labels[to_state]);
  std::vector<BindingSet> out;
  const auto members = mask.to_vector();
  for (std::uint32_t pick = 1; pick < (1u << members.size()); ++pick) {
    BindingSet r;
    for (std::size_t i = 0; i < members.size(); ++i)
      if ((pick >> i) & 1u) r.insert(members[i]);
    out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

QuadLabel intermediate_props(const QuadLabel& label, const ActionCatalog& catalog) {
  QuadLabel out;
  auto filter = [&](const QuadPropSet& in, QuadPropSet& dst) {
    for (const auto& p : in)
      if (catalog.prop_is_non_instantaneous(p.prop)) dst.insert(p);
  };
  filter(label.all_true, out.all_true);
  filter(label.some_true, out.some_true);
  filter(label.all_false, out.all_false);
  filter(label.some_false, out.some_false);
  return out;
}

QuadPropSet PiSets::changed() const {
  QuadPropSet out = true_to_false;
  out.insert(false_to_true.begin(), false_to_true.end());
  out.insert(some_true_to_false.begin(), some_true_to_false.end());
  out.insert(some_false_to_true.begin(), some_false_to_true.end());
  return out;
}

QuadPropSet PiSets::fresh() const {
  QuadPropSet out = fresh_all_true;
  out.insert(fresh_some_true.begin(), fresh_some_true.end());
  out.insert(fresh_all_false.begin(), fresh_all_false.end());
  out.insert(fresh_some_false.begin(), fresh_some_false.end());
  return out;
}

PiSets pi_sets(const QuadLabel& first, const QuadLabel& second) {
  auto inter = [](const QuadPropSet& a, const QuadPropSet& b1, const QuadPropSet& b2) {
    QuadPropSet out;
    for (const auto& p : a)
      if (b1.count(p) || b2.count(p)) out.insert(p);
    return out;
  };
  PiSets pi;
  pi.true_to_false = inter(first.all_true, second.all_false, second.some_false);
  pi.false_to_true = inter(first.all_false, second.all_true, second.some_true);
  pi.some_true_to_false = inter(first.some_true, second.all_false, second.some_false);
  pi.some_false_to_true = inter(first.some_false, second.all_true, second.some_true);

  // Freshly constrained: explicit in the second label, not explicit at all
  // in the first. A proposition that merely switches quantifier set is not
  // fresh; it already had an explicit value.
  QuadPropSet first_all = first.all_props();
  auto fresh = [&](const QuadPropSet& in, QuadPropSet& dst) {
    for (const auto& p : in)
      if (!first_all.count(p)) dst.insert(p);
  };
  fresh(second.all_true, pi.fresh_all_true);
  fresh(second.some_true, pi.fresh_some_true);
  fresh(second.all_false, pi.fresh_all_false);
  fresh(second.some_false, pi.fresh_some_false);
  return pi;
}

}  // namespace ltlpsi
