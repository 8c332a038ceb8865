#include "ltlpsi/refine.hpp"

namespace ltlpsi {

void BindingConstraints::merge(const BindingConstraints& o) {
  exactly_one.insert(o.exactly_one.begin(), o.exactly_one.end());
  all_or_nothing.insert(o.all_or_nothing.begin(), o.all_or_nothing.end());
}

static std::string fresh_intermediate_name(const BuchiAutomaton& b, const std::string& base) {
  std::string name = base + "*";
  int n = 1;
  while (b.state_index(name) >= 0) name = base + "*" + std::to_string(++n);
  return name;
}

BuchiUpdate update_buchi(const BuchiAutomaton& b, const BuchiEdge& e1, const BuchiEdge& e2,
                         const ActionCatalog& catalog) {
  if (!b.has_edge(e1) || !b.has_edge(e2))
    throw std::invalid_argument("update_buchi: edge not in the automaton");
  if (e1.to != e2.from)
    throw std::invalid_argument("update_buchi: transitions are not consecutive");
  if (e1.is_self() == e2.is_self())
    throw std::invalid_argument("update_buchi: exactly one transition must be a self-loop");

  BuchiUpdate out;
  out.automaton = b;

  QuadLabel first = intermediate_props(e1.label, catalog);
  QuadLabel second = intermediate_props(e2.label, catalog);
  PiSets pi = pi_sets(first, second);

  QuadPropSet forall_changes = pi.true_to_false;
  forall_changes.insert(pi.false_to_true.begin(), pi.false_to_true.end());
  if (!forall_changes.empty())
    out.constraints.exactly_one.insert(bindings_of_set(forall_changes));

  QuadPropSet exists_changes = pi.some_true_to_false;
  exists_changes.insert(pi.some_false_to_true.begin(), pi.some_false_to_true.end());
  if (exists_changes.size() >= 2)
    out.constraints.all_or_nothing.insert(bindings_of_set(exists_changes));

  if (second.all_props().size() <= 1 || pi.changed().empty())
    return out;  // ordering already unambiguous

  QuadLabel strengthened = e1.label;
  strengthened.all_true.insert(pi.fresh_all_true.begin(), pi.fresh_all_true.end());
  strengthened.some_true.insert(pi.fresh_some_true.begin(), pi.fresh_some_true.end());
  strengthened.all_false.insert(pi.fresh_all_false.begin(), pi.fresh_all_false.end());
  strengthened.some_false.insert(pi.fresh_some_false.begin(), pi.fresh_some_false.end());
  if (strengthened == e1.label) return out;  // re-running on an updated pair

  if (e1.is_self()) {
    // route the self-loop through an intermediate state that already pins
    // the freshly constrained completions
    int z1 = e1.from, z3 = e2.to;
    int zi = out.automaton.add_state(
        fresh_intermediate_name(out.automaton, b.state_names[z1]), false, true);
    BuchiEdge into{z1, zi, e1.label};
    BuchiEdge dwell{zi, zi, strengthened};
    BuchiEdge leave{zi, z3, e2.label};
    out.automaton.remove_edge(e2);
    out.automaton.add_edge(into.from, into.to, into.label);
    out.automaton.add_edge(dwell.from, dwell.to, dwell.label);
    out.automaton.add_edge(leave.from, leave.to, leave.label);
    out.updated_edges = {into, dwell, leave};
  } else {
    BuchiEdge modified{e1.from, e1.to, strengthened};
    out.automaton.remove_edge(e1);
    out.automaton.add_edge(modified.from, modified.to, modified.label);
    out.updated_edges = {modified};
  }
  return out;
}

}  // namespace ltlpsi
