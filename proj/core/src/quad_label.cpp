#include "ltlpsi/quad_label.hpp"

#include <sstream>

namespace ltlpsi {

BindingSet QuadLabel::bindings() const {
  BindingSet s;
  for (const auto* set : {&all_true, &some_true, &all_false, &some_false})
    for (const auto& p : *set) s.insert(p.binding);
  return s;
}

QuadPropSet QuadLabel::all_props() const {
  QuadPropSet out;
  for (const auto* set : {&all_true, &some_true, &all_false, &some_false})
    out.insert(set->begin(), set->end());
  return out;
}

bool QuadLabel::mentions(const QuadProp& p) const {
  return all_true.count(p) || some_true.count(p) || all_false.count(p) || some_false.count(p);
}

bool QuadLabel::implies(const QuadLabel& weaker) const {
  auto contains_all = [](const QuadPropSet& big, const QuadPropSet& small) {
    for (const auto& p : small)
      if (!big.count(p)) return false;
    return true;
  };
  if (!contains_all(all_true, weaker.all_true)) return false;
  if (!contains_all(all_false, weaker.all_false)) return false;
  for (const auto& p : weaker.some_true)
    if (!some_true.count(p) && !all_true.count(p)) return false;
  for (const auto& p : weaker.some_false)
    if (!some_false.count(p) && !all_false.count(p)) return false;
  return true;
}

std::string QuadLabel::to_string() const {
  auto show = [](const char* tag, const QuadPropSet& s, std::ostringstream& os, bool& any) {
    if (s.empty()) return;
    if (any) os << "; ";
    os << tag << ' ';
    bool first = true;
    for (const auto& p : s) {
      if (!first) os << ' ';
      os << p.to_string();
      first = false;
    }
    any = true;
  };
  std::ostringstream os;
  bool any = false;
  show("all+", all_true, os, any);
  show("one+", some_true, os, any);
  show("all-", all_false, os, any);
  show("one-", some_false, os, any);
  return any ? os.str() : std::string("true");
}

LiteralForm negate(LiteralForm f) {
  switch (f) {
    case LiteralForm::AllTrue: return LiteralForm::SomeFalse;
    case LiteralForm::SomeFalse: return LiteralForm::AllTrue;
    case LiteralForm::AllFalse: return LiteralForm::SomeTrue;
    case LiteralForm::SomeTrue: return LiteralForm::AllFalse;
  }
  return f;
}

std::string QuadLiteral::to_string() const {
  switch (form) {
    case LiteralForm::AllTrue: return prop.to_string();
    case LiteralForm::SomeTrue: return "!(!" + prop.to_string() + ")";
    case LiteralForm::AllFalse: return "!" + prop.to_string();
    case LiteralForm::SomeFalse: return "!(" + prop.to_string() + ")";
  }
  return "?";
}

std::optional<QuadLabel> make_label(const std::vector<QuadLiteral>& literals) {
  QuadLabel l;
  for (const auto& lit : literals) {
    switch (lit.form) {
      case LiteralForm::AllTrue: l.all_true.insert(lit.prop); break;
      case LiteralForm::SomeTrue: l.some_true.insert(lit.prop); break;
      case LiteralForm::AllFalse: l.all_false.insert(lit.prop); break;
      case LiteralForm::SomeFalse: l.some_false.insert(lit.prop); break;
    }
  }
  for (const auto& p : l.all_true) {
    if (l.all_false.count(p)) return std::nullopt;   // all robots true and all false
    if (l.some_false.count(p)) return std::nullopt;  // all true but some false
  }
  for (const auto& p : l.all_false)
    if (l.some_true.count(p)) return std::nullopt;
  // some_* subsumed by the all_* requirement on the same pair
  for (auto it = l.some_true.begin(); it != l.some_true.end();)
    it = l.all_true.count(*it) ? l.some_true.erase(it) : std::next(it);
  for (auto it = l.some_false.begin(); it != l.some_false.end();)
    it = l.all_false.count(*it) ? l.some_false.erase(it) : std::next(it);
  return l;
}

std::vector<QuadLiteral> label_literals(const QuadLabel& label) {
  std::vector<QuadLiteral> out;
  for (const auto& p : label.all_true) out.push_back({p, LiteralForm::AllTrue});
  for (const auto& p : label.some_true) out.push_back({p, LiteralForm::SomeTrue});
  for (const auto& p : label.all_false) out.push_back({p, LiteralForm::AllFalse});
  for (const auto& p : label.some_false) out.push_back({p, LiteralForm::SomeFalse});
  return out;
}

bool literal_satisfied(const QuadLiteral& lit, const Valuation& v) {
  auto it = v.find(lit.prop);
  if (it == v.end()) throw std::invalid_argument("valuation does not cover " + lit.prop.to_string());
  switch (lit.form) {
    case LiteralForm::AllTrue: return it->second == PairClass::All;
    case LiteralForm::SomeTrue: return it->second != PairClass::None;
    case LiteralForm::AllFalse: return it->second == PairClass::None;
    case LiteralForm::SomeFalse: return it->second != PairClass::All;
  }
  return false;
}

bool label_satisfied(const QuadLabel& label, const Valuation& v) {
  for (const auto& p : label.all_true)
    if (!literal_satisfied({p, LiteralForm::AllTrue}, v)) return false;
  for (const auto& p : label.some_true)
    if (!literal_satisfied({p, LiteralForm::SomeTrue}, v)) return false;
  for (const auto& p : label.all_false)
    if (!literal_satisfied({p, LiteralForm::AllFalse}, v)) return false;
  for (const auto& p : label.some_false)
    if (!literal_satisfied({p, LiteralForm::SomeFalse}, v)) return false;
  return true;
}

}  // namespace ltlpsi
