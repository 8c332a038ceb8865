#include "ltlpsi/hoa.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace ltlpsi {
namespace {

struct ApAtom {
  QuadProp pair;
  bool forall = true;  // A_... vs E_...
};

ApAtom parse_ap_name(const std::string& name) {
  auto fail = [&] { throw HoaError("atom name does not follow the A_<prop>_r<n> convention: " + name); };
  if (name.size() < 5 || (name[0] != 'A' && name[0] != 'E') || name[1] != '_') fail();
  auto rpos = name.rfind("_r");
  if (rpos == std::string::npos || rpos < 2) fail();
  std::string prop = name.substr(2, rpos - 2);
  std::string num = name.substr(rpos + 2);
  if (prop.empty() || num.empty()) fail();
  for (char c : num)
    if (!std::isdigit(static_cast<unsigned char>(c))) fail();
  return {QuadProp{prop, std::stoi(num)}, name[0] == 'A'};
}

std::string ap_name(const QuadProp& p, bool forall) {
  return std::string(forall ? "A_" : "E_") + p.prop + "_r" + std::to_string(p.binding);
}

class GuardParser {
public:
  GuardParser(const std::string& s, const std::vector<ApAtom>& aps) : s_(s), aps_(aps) {}

  GuardExpr parse() {
    GuardExpr e = parse_or();
    skip();
    if (pos_ != s_.size()) throw HoaError("trailing characters in guard: " + s_);
    return e;
  }

private:
  GuardExpr parse_or() {
    GuardExpr e = parse_and();
    while (peek() == '|') { ++pos_; e = GuardExpr::disj(std::move(e), parse_and()); }
    return e;
  }
  GuardExpr parse_and() {
    GuardExpr e = parse_unary();
    while (peek() == '&') { ++pos_; e = GuardExpr::conj(std::move(e), parse_unary()); }
    return e;
  }
  GuardExpr parse_unary() {
    char c = peek();
    if (c == '!') { ++pos_; return GuardExpr::negation(parse_unary()); }
    if (c == '(') {
      ++pos_;
      GuardExpr e = parse_or();
      if (peek() != ')') throw HoaError("missing ')' in guard: " + s_);
      ++pos_;
      return e;
    }
    if (c == 't') { ++pos_; return GuardExpr::constant(true); }
    if (c == 'f') { ++pos_; return GuardExpr::constant(false); }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      int idx = std::stoi(s_.substr(start, pos_ - start));
      if (idx < 0 || idx >= static_cast<int>(aps_.size()))
        throw HoaError("atom index out of range in guard: " + s_);
      const ApAtom& ap = aps_[idx];
      LiteralForm form = ap.forall ? LiteralForm::AllTrue : LiteralForm::SomeTrue;
      return GuardExpr::lit(QuadLiteral{ap.pair, form});
    }
    throw HoaError("bad guard syntax: " + s_);
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  const std::string& s_;
  const std::vector<ApAtom>& aps_;
  std::size_t pos_ = 0;
};

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

BuchiAutomaton import_hoa(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int num_states = -1, start = -1;
  std::vector<ApAtom> aps;
  bool buchi_ok = false, in_body = false, saw_hoa = false;

  struct PendingEdge { int from; std::string guard; int to; };
  std::vector<PendingEdge> pending;
  std::map<int, std::string> names;
  std::map<int, bool> accept;
  int cur_state = -1;

  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.rfind("/*", 0) == 0) continue;
    if (!in_body) {
      if (line.rfind("HOA:", 0) == 0) {
        if (trim(line.substr(4)) != "v1") throw HoaError("unsupported HOA version");
        saw_hoa = true;
      } else if (line.rfind("States:", 0) == 0) {
        num_states = std::stoi(trim(line.substr(7)));
      } else if (line.rfind("Start:", 0) == 0) {
        start = std::stoi(trim(line.substr(6)));
      } else if (line.rfind("AP:", 0) == 0) {
        std::istringstream ap(line.substr(3));
        int n;
        ap >> n;
        for (int i = 0; i < n; ++i) {
          std::string tok;
          ap >> std::ws;
          if (ap.get() != '"') throw HoaError("malformed AP list");
          std::getline(ap, tok, '"');
          aps.push_back(parse_ap_name(tok));
        }
      } else if (line.rfind("acc-name:", 0) == 0) {
        if (trim(line.substr(9)) != "Buchi") throw HoaError("unsupported acceptance condition");
        buchi_ok = true;
      } else if (line.rfind("Acceptance:", 0) == 0) {
        std::string a = trim(line.substr(11));
        if (a != "1 Inf(0)") throw HoaError("unsupported acceptance condition: " + a);
        buchi_ok = true;
      } else if (line == "--BODY--") {
        in_body = true;
      } else if (line.rfind("tool:", 0) == 0 || line.rfind("name:", 0) == 0 ||
                 line.rfind("properties:", 0) == 0) {
        // informational headers
      } else {
        throw HoaError("malformed header line: " + line);
      }
      continue;
    }
    if (line == "--END--") break;
    if (line.rfind("State:", 0) == 0) {
      std::string rest = trim(line.substr(6));
      std::istringstream st(rest);
      st >> cur_state;
      if (!st) throw HoaError("malformed State line: " + line);
      names[cur_state] = "q" + std::to_string(cur_state);
      accept[cur_state] = false;
      std::string tail;
      std::getline(st, tail);
      tail = trim(tail);
      if (!tail.empty() && tail[0] == '"') {
        auto close = tail.find('"', 1);
        if (close == std::string::npos) throw HoaError("unterminated state name");
        names[cur_state] = tail.substr(1, close - 1);
        tail = trim(tail.substr(close + 1));
      }
      if (!tail.empty()) {
        if (tail.front() != '{' || tail.back() != '}')
          throw HoaError("malformed State line: " + line);
        accept[cur_state] = true;
      }
      continue;
    }
    // edge: [guard] dest
    if (line.front() != '[') throw HoaError("malformed edge line: " + line);
    auto close = line.find(']');
    if (close == std::string::npos || cur_state < 0) throw HoaError("malformed edge line: " + line);
    std::string guard = line.substr(1, close - 1);
    std::string rest = trim(line.substr(close + 1));
    if (rest.find('{') != std::string::npos)
      throw HoaError("transition-based acceptance is not supported");
    pending.push_back({cur_state, guard, std::stoi(rest)});
  }

  if (!saw_hoa) throw HoaError("missing HOA: v1 header");
  if (!buchi_ok) throw HoaError("missing Buchi acceptance header");
  if (num_states < 0 || start < 0) throw HoaError("missing States: or Start: header");

  BuchiAutomaton b;
  for (int s = 0; s < num_states; ++s) {
    std::string name = names.count(s) ? names[s] : "q" + std::to_string(s);
    b.add_state(name, accept.count(s) ? accept[s] : false,
                name.find('*') != std::string::npos);
  }
  b.initial = start;

  std::vector<GuardedEdge> guarded;
  for (const auto& p : pending) {
    if (p.to < 0 || p.to >= num_states) throw HoaError("edge target out of range");
    guarded.push_back({p.from, p.to, GuardParser(p.guard, aps).parse()});
  }
  for (auto& e : split_dnf(guarded)) b.edges.push_back(std::move(e));
  b.sort_edges();
  b.check();
  return b;
}

std::string export_hoa(const BuchiAutomaton& b) {
  // atom table: one A_/E_ atom per pair and side actually used
  std::map<std::pair<QuadProp, bool>, int> ap_index;
  std::vector<std::string> ap_names;
  auto need = [&](const QuadProp& p, bool forall) {
    auto key = std::make_pair(p, forall);
    if (!ap_index.count(key)) {
      ap_index[key] = static_cast<int>(ap_names.size());
      ap_names.push_back(ap_name(p, forall));
    }
  };
  for (const auto& e : b.edges) {
    for (const auto& p : e.label.all_true) need(p, true);
    for (const auto& p : e.label.some_false) need(p, true);
    for (const auto& p : e.label.some_true) need(p, false);
    for (const auto& p : e.label.all_false) need(p, false);
  }

  auto guard_of = [&](const QuadLabel& l) {
    std::vector<std::string> terms;
    for (const auto& p : l.all_true) terms.push_back(std::to_string(ap_index[{p, true}]));
    for (const auto& p : l.some_false) terms.push_back("!" + std::to_string(ap_index[{p, true}]));
    for (const auto& p : l.some_true) terms.push_back(std::to_string(ap_index[{p, false}]));
    for (const auto& p : l.all_false) terms.push_back("!" + std::to_string(ap_index[{p, false}]));
    if (terms.empty()) return std::string("t");
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i) out += " & ";
      out += terms[i];
    }
    return out;
  };

  std::ostringstream os;
  os << "HOA: v1\n";
  os << "States: " << b.num_states() << "\n";
  os << "Start: " << b.initial << "\n";
  os << "AP: " << ap_names.size();
  for (const auto& n : ap_names) os << " \"" << n << "\"";
  os << "\n";
  os << "acc-name: Buchi\n";
  os << "Acceptance: 1 Inf(0)\n";
  os << "properties: state-acc\n";
  os << "--BODY--\n";
  for (std::size_t s = 0; s < b.num_states(); ++s) {
    os << "State: " << s << " \"" << b.state_names[s] << "\"";
    if (b.accepting[s]) os << " {0}";
    os << "\n";
    for (const auto* e : b.edges_from(static_cast<int>(s)))
      os << "  [" << guard_of(e->label) << "] " << e->to << "\n";
  }
  os << "--END--\n";
  return os.str();
}

}  // namespace ltlpsi
