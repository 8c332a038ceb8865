#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltlpsi {

/* Binding propositions are small positive integers (as written in task
 * files: pi^1, pi^(2&3)). A BindingSet is a set of them, kept as a bitmask
 * so that set algebra and deterministic ordering are cheap.
 */
class BindingSet {
public:
  BindingSet() = default;
  explicit BindingSet(std::uint32_t bits) : bits_(bits) {}
  static BindingSet single(int binding);
  static BindingSet from(std::initializer_list<int> bindings);

  bool empty() const { return bits_ == 0; }
  bool contains(int binding) const;
  std::size_t size() const;
  std::uint32_t bits() const { return bits_; }

  void insert(int binding);
  void erase(int binding);

  BindingSet union_with(BindingSet o) const { return BindingSet(bits_ | o.bits_); }
  BindingSet intersect(BindingSet o) const { return BindingSet(bits_ & o.bits_); }
  BindingSet minus(BindingSet o) const { return BindingSet(bits_ & ~o.bits_); }
  bool subset_of(BindingSet o) const { return (bits_ & ~o.bits_) == 0; }
  bool intersects(BindingSet o) const { return (bits_ & o.bits_) != 0; }

  std::vector<int> to_vector() const;
  std::string to_string() const;

  auto operator<=>(const BindingSet&) const = default;

private:
  std::uint32_t bits_ = 0;
};

/* Boolean formula over binding propositions; OR and AND only, no negation.
 * This is the annotation attached to a subformula with '^'.
 */
struct BindingFormula {
  enum class Kind { Prop, Or, And };

  Kind kind = Kind::Prop;
  int binding = -1;                   // Kind::Prop
  std::vector<BindingFormula> kids;   // Kind::Or / Kind::And, exactly two

  static BindingFormula prop(int binding);
  static BindingFormula disj(BindingFormula a, BindingFormula b);
  static BindingFormula conj(BindingFormula a, BindingFormula b);

  // All binding propositions mentioned anywhere in the formula.
  BindingSet mentioned() const;
  bool satisfied_by(BindingSet assignment) const;
  std::string to_string() const;
};

/* Set-minimal models of a negation-free formula, as an antichain. */
std::vector<BindingSet> minimal_models(const BindingFormula& f);

/* All binding-set combinations the annotation accepts: every union of a
 * non-empty collection of minimal models. For (1&2)|3 this gives
 * {1,2}, {3}, {1,2,3} and nothing else. Sorted by bitmask.
 */
std::vector<BindingSet> zeta(const BindingFormula& f);

/* zeta for a formula whose propositions must lie inside `universe`;
 * throws std::invalid_argument otherwise.
 */
std::vector<BindingSet> zeta(const BindingFormula& f, BindingSet universe);

}  // namespace ltlpsi
