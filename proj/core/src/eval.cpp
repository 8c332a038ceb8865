#include "ltlpsi/eval.hpp"

#include <stdexcept>

namespace ltlpsi {

namespace detail {
TaskFormula task_nnf(const TaskFormula& f);
}

void TeamTrace::validate() const {
  if (steps.empty()) throw std::invalid_argument("empty team trace");
  if (loop_start >= steps.size()) throw std::invalid_argument("loop start beyond trace end");
  const std::size_t n = steps[0].size();
  for (const auto& s : steps)
    if (s.size() != n) throw std::invalid_argument("robot traces have unequal length");
}

namespace {

using Bits = std::vector<char>;

class Evaluator {
public:
  Evaluator(const TeamTrace& trace, const BindingAssignment& R) : trace_(trace), R_(R) {
    n_ = trace.length();
    loop_ = trace.loop_start;
    for (const auto& r : R_) coverage_ = coverage_.union_with(r);
  }

  Bits team(const TaskFormula& f) {
    using K = TaskFormula::Kind;
    switch (f.kind) {
      case K::True: return Bits(n_, 1);
      case K::False: return Bits(n_, 0);
      case K::And: return and_(team(f.kids[0]), team(f.kids[1]));
      case K::Or: return or_(team(f.kids[0]), team(f.kids[1]));
      case K::Until: return until(team(f.kids[0]), team(f.kids[1]));
      case K::Always: return always(team(f.kids[0]));
      case K::Eventually: return until(Bits(n_, 1), team(f.kids[0]));
      case K::Atom: {
        if (f.binding < 0) throw std::invalid_argument("unbound proposition at team level");
        BindingFormula psi = BindingFormula::prop(f.binding);
        TaskFormula lit = TaskFormula::atom(f.prop);
        lit.polarity = f.polarity;
        return block(lit, psi, f.quantifier);
      }
      case K::Annotated:
        return block(f.kids[0], *f.annotation, f.quantifier);
      case K::Not:
        throw std::logic_error("negation not eliminated before evaluation");
    }
    return Bits(n_, 0);
  }

private:
  // One robot's LTL valuation of the inside of a block.
  Bits robot(const TaskFormula& f, std::size_t j) {
    using K = TaskFormula::Kind;
    switch (f.kind) {
      case K::True: return Bits(n_, 1);
      case K::False: return Bits(n_, 0);
      case K::Atom: {
        Bits v(n_, 0);
        for (std::size_t p = 0; p < n_; ++p) {
          bool holds = trace_.steps[p][j].count(f.prop) > 0;
          v[p] = (holds == f.polarity);
        }
        return v;
      }
      case K::Not: {
        Bits v = robot(f.kids[0], j);
        for (auto& x : v) x = !x;
        return v;
      }
      case K::And: return and_(robot(f.kids[0], j), robot(f.kids[1], j));
      case K::Or: return or_(robot(f.kids[0], j), robot(f.kids[1], j));
      case K::Until: return until(robot(f.kids[0], j), robot(f.kids[1], j));
      case K::Always: return always(robot(f.kids[0], j));
      case K::Eventually: return until(Bits(n_, 1), robot(f.kids[0], j));
      case K::Annotated:
        throw std::invalid_argument("nested binding annotation");
    }
    return Bits(n_, 0);
  }

  Bits block(const TaskFormula& inner, const BindingFormula& psi, Quantifier q) {
    std::vector<Bits> per_robot(R_.size());
    std::vector<bool> have(R_.size(), false);
    Bits out(n_, 0);
    for (const BindingSet& k : zeta(psi)) {
      if (!k.subset_of(coverage_)) continue;
      std::vector<std::size_t> js;
      for (std::size_t j = 0; j < R_.size(); ++j)
        if (R_[j].intersects(k)) js.push_back(j);
      if (js.empty()) continue;
      for (std::size_t j : js)
        if (!have[j]) { per_robot[j] = robot(inner, j); have[j] = true; }
      for (std::size_t p = 0; p < n_; ++p) {
        if (out[p]) continue;
        bool v = (q == Quantifier::ForAll);
        for (std::size_t j : js) {
          bool rj = per_robot[j][p];
          if (q == Quantifier::ForAll) v = v && rj;
          else v = v || rj;
          if (q == Quantifier::ForAll ? !v : v) break;
        }
        out[p] = out[p] || v;
      }
    }
    return out;
  }

  std::size_t next(std::size_t p) const { return p + 1 < n_ ? p + 1 : loop_; }

  static Bits and_(Bits a, const Bits& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] && b[i];
    return a;
  }
  static Bits or_(Bits a, const Bits& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] || b[i];
    return a;
  }

  Bits until(const Bits& a, const Bits& b) {
    Bits v(n_, 0);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = n_; i-- > loop_;) {
        char nv = b[i] || (a[i] && v[next(i)]);
        if (nv != v[i]) { v[i] = nv; changed = true; }
      }
    }
    for (std::size_t i = loop_; i-- > 0;)
      v[i] = b[i] || (a[i] && v[i + 1]);
    return v;
  }

  Bits always(const Bits& a) {
    Bits v(n_, 1);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = n_; i-- > loop_;) {
        char nv = a[i] && v[next(i)];
        if (nv != v[i]) { v[i] = nv; changed = true; }
      }
    }
    for (std::size_t i = loop_; i-- > 0;)
      v[i] = a[i] && v[i + 1];
    return v;
  }

  const TeamTrace& trace_;
  const BindingAssignment& R_;
  std::size_t n_ = 0, loop_ = 0;
  BindingSet coverage_;
};

}  // namespace

bool evaluate(const TaskFormula& f, const TeamTrace& trace, const BindingAssignment& R) {
  trace.validate();
  if (trace.robots() != R.size())
    throw std::invalid_argument("binding assignment size does not match trace robot count");
  TaskFormula g = detail::task_nnf(f);
  Evaluator ev(trace, R);
  return ev.team(g)[0] != 0;
}

}  // namespace ltlpsi
