#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ltlpsi/bindings.hpp"
#include "ltlpsi/task.hpp"

namespace ltlpsi {

/* A proposition paired with the binding it is required under. */
struct QuadProp {
  std::string prop;
  int binding = -1;

  auto operator<=>(const QuadProp&) const = default;
  std::string to_string() const { return prop + "^" + std::to_string(binding); }
};

using QuadPropSet = std::set<QuadProp>;

/* The label of one Buchi transition after DNF splitting: one conjunct,
 * sorted into what must hold for all robots carrying the binding
 * (all_true/all_false) and what must hold for at least one of them
 * (some_true/some_false). A proposition-binding pair appears in at most
 * one of the four sets.
 */
struct QuadLabel {
  QuadPropSet all_true;    // pi^rho true for every robot assigned rho
  QuadPropSet some_true;   // true for at least one robot assigned rho
  QuadPropSet all_false;   // false for every robot assigned rho
  QuadPropSet some_false;  // false for at least one robot assigned rho

  auto operator<=>(const QuadLabel&) const = default;

  bool empty() const {
    return all_true.empty() && some_true.empty() && all_false.empty() && some_false.empty();
  }
  BindingSet bindings() const;
  QuadPropSet all_props() const;
  bool mentions(const QuadProp& p) const;

  // Literal-wise implication: every requirement of `weaker` also appears
  // in this label (some_* requirements may be met by the matching all_*).
  bool implies(const QuadLabel& weaker) const;

  std::string to_string() const;
};

/* The four quantified literal forms over a (prop, binding) pair. Negation
 * stays inside the set: !(pi^rho) asks for at least one robot with !pi,
 * and !((!pi)^rho) asks for at least one robot with pi.
 */
enum class LiteralForm { AllTrue, SomeTrue, AllFalse, SomeFalse };

LiteralForm negate(LiteralForm f);

struct QuadLiteral {
  QuadProp prop;
  LiteralForm form = LiteralForm::AllTrue;

  auto operator<=>(const QuadLiteral&) const = default;
  std::string to_string() const;
};

/* Conjoin literals into a label. Returns nothing when the conjunct cannot
 * be satisfied by any robot population that covers the bindings: the same
 * pair required both all-true and all-false, or all-true together with
 * some-false (and dually). Redundant some_* literals subsumed by an all_*
 * literal on the same pair are dropped.
 */
std::optional<QuadLabel> make_label(const std::vector<QuadLiteral>& literals);

std::vector<QuadLiteral> label_literals(const QuadLabel& label);

/* How a (prop, binding) pair behaves across the robots holding the
 * binding at one trace step.
 */
enum class PairClass { None, Some, All };

/* One letter of a lasso word: a class for every pair the automaton
 * mentions.
 */
using Valuation = std::map<QuadProp, PairClass>;

bool literal_satisfied(const QuadLiteral& lit, const Valuation& v);
bool label_satisfied(const QuadLabel& label, const Valuation& v);

}  // namespace ltlpsi
