#include "ltlpsi/bindings.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

namespace ltlpsi {

static void check_range(int binding) {
  if (binding < 0 || binding >= 32)
    throw std::invalid_argument("binding proposition out of range: " + std::to_string(binding));
}

BindingSet BindingSet::single(int binding) {
  check_range(binding);
  return BindingSet(std::uint32_t{1} << binding);
}

BindingSet BindingSet::from(std::initializer_list<int> bindings) {
  BindingSet s;
  for (int b : bindings) s.insert(b);
  return s;
}

bool BindingSet::contains(int binding) const {
  return binding >= 0 && binding < 32 && (bits_ >> binding) & 1u;
}

std::size_t BindingSet::size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

void BindingSet::insert(int binding) {
  check_range(binding);
  bits_ |= std::uint32_t{1} << binding;
}

void BindingSet::erase(int binding) {
  check_range(binding);
  bits_ &= ~(std::uint32_t{1} << binding);
}

std::vector<int> BindingSet::to_vector() const {
  std::vector<int> out;
  for (int b = 0; b < 32; ++b)
    if ((bits_ >> b) & 1u) out.push_back(b);
  return out;
}

std::string BindingSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int b : to_vector()) {
    if (!first) os << ',';
    os << b;
    first = false;
  }
  os << '}';
  return os.str();
}

BindingFormula BindingFormula::prop(int binding) {
  check_range(binding);
  BindingFormula f;
  f.kind = Kind::Prop;
  f.binding = binding;
  return f;
}

BindingFormula BindingFormula::disj(BindingFormula a, BindingFormula b) {
  BindingFormula f;
  f.kind = Kind::Or;
  f.kids.push_back(std::move(a));
  f.kids.push_back(std::move(b));
  return f;
}

BindingFormula BindingFormula::conj(BindingFormula a, BindingFormula b) {
  BindingFormula f;
  f.kind = Kind::And;
  f.kids.push_back(std::move(a));
  f.kids.push_back(std::move(b));
  return f;
}

BindingSet BindingFormula::mentioned() const {
  if (kind == Kind::Prop) return BindingSet::single(binding);
  BindingSet s;
  for (const auto& k : kids) s = s.union_with(k.mentioned());
  return s;
}

bool BindingFormula::satisfied_by(BindingSet assignment) const {
  switch (kind) {
    case Kind::Prop: return assignment.contains(binding);
    case Kind::Or: return kids[0].satisfied_by(assignment) || kids[1].satisfied_by(assignment);
    case Kind::And: return kids[0].satisfied_by(assignment) && kids[1].satisfied_by(assignment);
  }
  return false;
}

std::string BindingFormula::to_string() const {
  switch (kind) {
    case Kind::Prop: return std::to_string(binding);
    case Kind::Or: return "(" + kids[0].to_string() + "|" + kids[1].to_string() + ")";
    case Kind::And: return "(" + kids[0].to_string() + "&" + kids[1].to_string() + ")";
  }
  return "?";
}

static std::vector<BindingSet> antichain_min(std::vector<BindingSet> sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<BindingSet> out;
  for (const auto& s : sets) {
    bool dominated = false;
    for (const auto& t : sets)
      if (t != s && t.subset_of(s)) { dominated = true; break; }
    if (!dominated) out.push_back(s);
  }
  return out;
}

std::vector<BindingSet> minimal_models(const BindingFormula& f) {
  switch (f.kind) {
    case BindingFormula::Kind::Prop:
      return {BindingSet::single(f.binding)};
    case BindingFormula::Kind::Or: {
      auto a = minimal_models(f.kids[0]);
      auto b = minimal_models(f.kids[1]);
      a.insert(a.end(), b.begin(), b.end());
      return antichain_min(std::move(a));
    }
    case BindingFormula::Kind::And: {
      auto a = minimal_models(f.kids[0]);
      auto b = minimal_models(f.kids[1]);
      std::vector<BindingSet> joined;
      for (const auto& x : a)
        for (const auto& y : b) joined.push_back(x.union_with(y));
      return antichain_min(std::move(joined));
    }
  }
  return {};
}

std::vector<BindingSet> zeta(const BindingFormula& f) {
  auto mins = minimal_models(f);
  std::set<BindingSet> unions;
  const std::size_t n = mins.size();
  if (n > 20) throw std::invalid_argument("binding formula has too many minimal models");
  for (std::uint32_t pick = 1; pick < (1u << n); ++pick) {
    BindingSet u;
    for (std::size_t i = 0; i < n; ++i)
      if ((pick >> i) & 1u) u = u.union_with(mins[i]);
    unions.insert(u);
  }
  return {unions.begin(), unions.end()};
}

std::vector<BindingSet> zeta(const BindingFormula& f, BindingSet universe) {
  if (!f.mentioned().subset_of(universe))
    throw std::invalid_argument("binding formula mentions propositions outside the universe");
  return zeta(f);
}

}  // namespace ltlpsi
