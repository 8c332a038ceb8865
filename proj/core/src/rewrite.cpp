#include "ltlpsi/task.hpp"

namespace ltlpsi {
namespace {

Quantifier flip(Quantifier q) {
  return q == Quantifier::ForAll ? Quantifier::Exists : Quantifier::ForAll;
}

TaskFormula nnf(const TaskFormula& f);

/* Negation normal form of !f. Negation terminates on annotated blocks by
 * flipping the quantifier reading: violating "all robots with a binding in
 * some K satisfy phi" means at least one such robot satisfies !phi.
 * !(a U b) is encoded with the operators the language has:
 * (!b U (!a & !b)) | G(!b).
 */
TaskFormula negated(const TaskFormula& f) {
  using K = TaskFormula::Kind;
  switch (f.kind) {
    case K::True: return TaskFormula::boolean(false);
    case K::False: return TaskFormula::boolean(true);
    case K::Atom: {
      TaskFormula a = f;
      if (a.binding >= 0) {
        a.quantifier = flip(a.quantifier);
        a.polarity = !a.polarity;
      } else {
        a.polarity = !a.polarity;
      }
      return a;
    }
    case K::Not: return nnf(f.kids[0]);
    case K::And: return TaskFormula::disj(negated(f.kids[0]), negated(f.kids[1]));
    case K::Or: return TaskFormula::conj(negated(f.kids[0]), negated(f.kids[1]));
    case K::Always: return TaskFormula::eventually(negated(f.kids[0]));
    case K::Eventually: return TaskFormula::always(negated(f.kids[0]));
    case K::Until: {
      TaskFormula na = negated(f.kids[0]);
      TaskFormula nb = negated(f.kids[1]);
      TaskFormula weak = TaskFormula::until(nb, TaskFormula::conj(na, nb));
      return TaskFormula::disj(std::move(weak), TaskFormula::always(negated(f.kids[1])));
    }
    case K::Annotated: {
      TaskFormula g = f;
      g.quantifier = flip(f.quantifier);
      g.kids[0] = TaskFormula::negation(f.kids[0]);  // stays plain LTL inside the block
      return g;
    }
  }
  return f;
}

TaskFormula nnf(const TaskFormula& f) {
  using K = TaskFormula::Kind;
  switch (f.kind) {
    case K::Not: return negated(f.kids[0]);
    case K::Annotated: return f;  // inner LTL is normalized when bindings are pushed
    default: {
      TaskFormula g = f;
      for (auto& k : g.kids) k = nnf(k);
      return g;
    }
  }
}

/* Push a single binding proposition and the block quantifier through the
 * block's LTL onto atoms. The LTL is normalized first so only literals are
 * negated.
 */
TaskFormula push_binding(const TaskFormula& ltl, int binding, Quantifier q) {
  using K = TaskFormula::Kind;
  switch (ltl.kind) {
    case K::True:
    case K::False: return ltl;
    case K::Atom:
      return TaskFormula::atom(ltl.prop, binding, q, ltl.polarity);
    case K::And: return TaskFormula::conj(push_binding(ltl.kids[0], binding, q),
                                          push_binding(ltl.kids[1], binding, q));
    case K::Or: return TaskFormula::disj(push_binding(ltl.kids[0], binding, q),
                                         push_binding(ltl.kids[1], binding, q));
    case K::Until: return TaskFormula::until(push_binding(ltl.kids[0], binding, q),
                                             push_binding(ltl.kids[1], binding, q));
    case K::Always: return TaskFormula::always(push_binding(ltl.kids[0], binding, q));
    case K::Eventually: return TaskFormula::eventually(push_binding(ltl.kids[0], binding, q));
    default:
      throw std::logic_error("binding push on a non-normalized formula");
  }
}

TaskFormula expand_block(const TaskFormula& inner_nnf, const BindingFormula& psi, Quantifier q) {
  using BK = BindingFormula::Kind;
  switch (psi.kind) {
    case BK::Prop:
      return push_binding(inner_nnf, psi.binding, q);
    case BK::Or:
      return TaskFormula::disj(expand_block(inner_nnf, psi.kids[0], q),
                               expand_block(inner_nnf, psi.kids[1], q));
    case BK::And:
      // "all robots covering psi1 and psi2" splits per conjunct; for the
      // there-exists reading a witness for either conjunct is a witness
      // for the conjunction (binding coverage is assumed downstream).
      if (q == Quantifier::ForAll)
        return TaskFormula::conj(expand_block(inner_nnf, psi.kids[0], q),
                                 expand_block(inner_nnf, psi.kids[1], q));
      return TaskFormula::disj(expand_block(inner_nnf, psi.kids[0], q),
                               expand_block(inner_nnf, psi.kids[1], q));
  }
  throw std::logic_error("bad binding formula");
}

TaskFormula inner_ltl_nnf(const TaskFormula& f) {
  using K = TaskFormula::Kind;
  if (f.kind == K::Not) {
    const TaskFormula& c = f.kids[0];
    switch (c.kind) {
      case K::True: return TaskFormula::boolean(false);
      case K::False: return TaskFormula::boolean(true);
      case K::Atom: {
        TaskFormula a = c;
        a.polarity = !a.polarity;
        return a;
      }
      case K::Not: return inner_ltl_nnf(c.kids[0]);
      case K::And: return TaskFormula::disj(inner_ltl_nnf(TaskFormula::negation(c.kids[0])),
                                            inner_ltl_nnf(TaskFormula::negation(c.kids[1])));
      case K::Or: return TaskFormula::conj(inner_ltl_nnf(TaskFormula::negation(c.kids[0])),
                                           inner_ltl_nnf(TaskFormula::negation(c.kids[1])));
      case K::Always: return TaskFormula::eventually(inner_ltl_nnf(TaskFormula::negation(c.kids[0])));
      case K::Eventually: return TaskFormula::always(inner_ltl_nnf(TaskFormula::negation(c.kids[0])));
      case K::Until: {
        TaskFormula na = inner_ltl_nnf(TaskFormula::negation(c.kids[0]));
        TaskFormula nb = inner_ltl_nnf(TaskFormula::negation(c.kids[1]));
        TaskFormula weak = TaskFormula::until(nb, TaskFormula::conj(na, nb));
        return TaskFormula::disj(std::move(weak),
                                 TaskFormula::always(inner_ltl_nnf(TaskFormula::negation(c.kids[1]))));
      }
      default:
        throw std::logic_error("annotation inside a block");
    }
  }
  TaskFormula g = f;
  for (auto& k : g.kids) k = inner_ltl_nnf(k);
  return g;
}

TaskFormula rewrite(const TaskFormula& f) {
  using K = TaskFormula::Kind;
  switch (f.kind) {
    case K::Annotated:
      return expand_block(inner_ltl_nnf(f.kids[0]), *f.annotation, f.quantifier);
    case K::Not:
      return rewrite(negated(f.kids[0]));
    default: {
      TaskFormula g = f;
      for (auto& k : g.kids) k = rewrite(k);
      return g;
    }
  }
}

}  // namespace

namespace detail {
// Task-level negation normal form; blocks keep their inner LTL untouched.
TaskFormula task_nnf(const TaskFormula& f) { return nnf(f); }
}  // namespace detail

TaskFormula rewrite_bindings(const TaskFormula& f) { return rewrite(nnf(f)); }

}  // namespace ltlpsi

