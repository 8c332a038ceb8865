#include "ltlpsi/task.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ltlpsi {

TaskFormula TaskFormula::boolean(bool v) {
  TaskFormula f;
  f.kind = v ? Kind::True : Kind::False;
  return f;
}

TaskFormula TaskFormula::atom(std::string prop) {
  TaskFormula f;
  f.kind = Kind::Atom;
  f.prop = std::move(prop);
  return f;
}

TaskFormula TaskFormula::atom(std::string prop, int binding, Quantifier q, bool polarity) {
  TaskFormula f = atom(std::move(prop));
  f.binding = binding;
  f.quantifier = q;
  f.polarity = polarity;
  return f;
}

static TaskFormula unary(TaskFormula::Kind k, TaskFormula f) {
  TaskFormula out;
  out.kind = k;
  out.kids.push_back(std::move(f));
  return out;
}

static TaskFormula binary(TaskFormula::Kind k, TaskFormula a, TaskFormula b) {
  TaskFormula out;
  out.kind = k;
  out.kids.push_back(std::move(a));
  out.kids.push_back(std::move(b));
  return out;
}

TaskFormula TaskFormula::negation(TaskFormula f) { return unary(Kind::Not, std::move(f)); }
TaskFormula TaskFormula::conj(TaskFormula a, TaskFormula b) { return binary(Kind::And, std::move(a), std::move(b)); }
TaskFormula TaskFormula::disj(TaskFormula a, TaskFormula b) { return binary(Kind::Or, std::move(a), std::move(b)); }
TaskFormula TaskFormula::until(TaskFormula a, TaskFormula b) { return binary(Kind::Until, std::move(a), std::move(b)); }
TaskFormula TaskFormula::always(TaskFormula f) { return unary(Kind::Always, std::move(f)); }
TaskFormula TaskFormula::eventually(TaskFormula f) { return unary(Kind::Eventually, std::move(f)); }

TaskFormula TaskFormula::annotated(TaskFormula ltl, BindingFormula psi, Quantifier q) {
  TaskFormula f = unary(Kind::Annotated, std::move(ltl));
  f.annotation = std::move(psi);
  f.quantifier = q;
  return f;
}

bool TaskFormula::operator==(const TaskFormula& o) const {
  if (kind != o.kind || prop != o.prop || binding != o.binding ||
      quantifier != o.quantifier || polarity != o.polarity || kids.size() != o.kids.size())
    return false;
  if (annotation.has_value() != o.annotation.has_value()) return false;
  if (annotation && annotation->to_string() != o.annotation->to_string()) return false;
  for (std::size_t i = 0; i < kids.size(); ++i)
    if (!(kids[i] == o.kids[i])) return false;
  return true;
}

bool TaskFormula::is_rewritten() const {
  if (kind == Kind::Annotated || kind == Kind::Not) return false;
  if (kind == Kind::Atom && binding < 0) return false;
  return std::all_of(kids.begin(), kids.end(),
                     [](const TaskFormula& k) { return k.is_rewritten(); });
}

BindingSet TaskFormula::bindings() const {
  BindingSet s;
  if (kind == Kind::Atom && binding >= 0) s.insert(binding);
  if (annotation) s = s.union_with(annotation->mentioned());
  for (const auto& k : kids) s = s.union_with(k.bindings());
  return s;
}

std::vector<std::string> TaskFormula::props() const {
  std::set<std::string> acc;
  std::vector<const TaskFormula*> todo{this};
  while (!todo.empty()) {
    const TaskFormula* f = todo.back();
    todo.pop_back();
    if (f->kind == Kind::Atom) acc.insert(f->prop);
    for (const auto& k : f->kids) todo.push_back(&k);
  }
  return {acc.begin(), acc.end()};
}

std::string TaskFormula::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::True: os << "true"; break;
    case Kind::False: os << "false"; break;
    case Kind::Atom:
      if (binding >= 0) {
        if (quantifier == Quantifier::Exists) os << (polarity ? "!(!" : "!(") << prop << "^" << binding << ")";
        else if (!polarity) os << "!" << prop << "^" << binding;
        else os << prop << "^" << binding;
      } else {
        os << prop;
      }
      break;
    case Kind::Not: os << "!(" << kids[0].to_string() << ")"; break;
    case Kind::And: os << "(" << kids[0].to_string() << " & " << kids[1].to_string() << ")"; break;
    case Kind::Or: os << "(" << kids[0].to_string() << " | " << kids[1].to_string() << ")"; break;
    case Kind::Until: os << "(" << kids[0].to_string() << " U " << kids[1].to_string() << ")"; break;
    case Kind::Always: os << "G(" << kids[0].to_string() << ")"; break;
    case Kind::Eventually: os << "F(" << kids[0].to_string() << ")"; break;
    case Kind::Annotated:
      os << (quantifier == Quantifier::Exists ? "!(!" : "");
      os << "(" << kids[0].to_string() << ")^(" << annotation->to_string() << ")";
      if (quantifier == Quantifier::Exists) os << ")";
      break;
  }
  return os.str();
}

static nlohmann::json ast_json(const TaskFormula& f) {
  nlohmann::json j;
  switch (f.kind) {
    case TaskFormula::Kind::True: j["kind"] = "true"; break;
    case TaskFormula::Kind::False: j["kind"] = "false"; break;
    case TaskFormula::Kind::Atom:
      j["kind"] = "atom";
      j["prop"] = f.prop;
      if (f.binding >= 0) {
        j["binding"] = f.binding;
        j["quantifier"] = f.quantifier == Quantifier::ForAll ? "forall" : "exists";
        j["polarity"] = f.polarity;
      }
      break;
    case TaskFormula::Kind::Not: j["kind"] = "not"; break;
    case TaskFormula::Kind::And: j["kind"] = "and"; break;
    case TaskFormula::Kind::Or: j["kind"] = "or"; break;
    case TaskFormula::Kind::Until: j["kind"] = "until"; break;
    case TaskFormula::Kind::Always: j["kind"] = "always"; break;
    case TaskFormula::Kind::Eventually: j["kind"] = "eventually"; break;
    case TaskFormula::Kind::Annotated:
      j["kind"] = "annotated";
      j["annotation"] = f.annotation->to_string();
      j["quantifier"] = f.quantifier == Quantifier::ForAll ? "forall" : "exists";
      break;
  }
  if (!f.kids.empty()) {
    nlohmann::json kids = nlohmann::json::array();
    for (const auto& k : f.kids) kids.push_back(ast_json(k));
    j["kids"] = kids;
  }
  return j;
}

std::string dump_ast_json(const TaskFormula& f) { return ast_json(f).dump(2); }

}  // namespace ltlpsi
