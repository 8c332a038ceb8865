#include "ltlpsi/buchi.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ltlpsi {

int BuchiAutomaton::add_state(const std::string& name, bool accept, bool inter) {
  if (state_index(name) >= 0) throw std::invalid_argument("duplicate state name " + name);
  state_names.push_back(name);
  accepting.push_back(accept);
  intermediate.push_back(inter);
  return static_cast<int>(state_names.size()) - 1;
}

int BuchiAutomaton::state_index(const std::string& name) const {
  for (std::size_t i = 0; i < state_names.size(); ++i)
    if (state_names[i] == name) return static_cast<int>(i);
  return -1;
}

void BuchiAutomaton::add_edge(int from, int to, QuadLabel label) {
  BuchiEdge e{from, to, std::move(label)};
  if (!has_edge(e)) {
    edges.push_back(std::move(e));
    sort_edges();
  }
}

bool BuchiAutomaton::has_edge(const BuchiEdge& e) const {
  return std::find(edges.begin(), edges.end(), e) != edges.end();
}

void BuchiAutomaton::remove_edge(const BuchiEdge& e) {
  auto it = std::find(edges.begin(), edges.end(), e);
  if (it == edges.end()) throw std::invalid_argument("edge not present");
  edges.erase(it);
}

void BuchiAutomaton::sort_edges() { std::sort(edges.begin(), edges.end()); }

std::vector<const BuchiEdge*> BuchiAutomaton::edges_from(int state) const {
  std::vector<const BuchiEdge*> out;
  for (const auto& e : edges)
    if (e.from == state) out.push_back(&e);
  return out;
}

std::vector<const BuchiEdge*> BuchiAutomaton::self_loops(int state) const {
  std::vector<const BuchiEdge*> out;
  for (const auto& e : edges)
    if (e.from == state && e.to == state) out.push_back(&e);
  return out;
}

QuadPropSet BuchiAutomaton::atom_pairs() const {
  QuadPropSet out;
  for (const auto& e : edges) {
    auto props = e.label.all_props();
    out.insert(props.begin(), props.end());
  }
  return out;
}

std::vector<int> BuchiAutomaton::states_missing_self_loop() const {
  std::vector<int> out;
  for (std::size_t s = 0; s < num_states(); ++s) {
    if (intermediate[s]) continue;
    if (self_loops(static_cast<int>(s)).empty()) out.push_back(static_cast<int>(s));
  }
  return out;
}

void BuchiAutomaton::check() const {
  if (state_names.empty()) throw std::logic_error("automaton without states");
  if (initial < 0 || initial >= static_cast<int>(num_states()))
    throw std::logic_error("bad initial state");
  for (const auto& e : edges)
    if (e.from < 0 || e.to < 0 || e.from >= static_cast<int>(num_states()) ||
        e.to >= static_cast<int>(num_states()))
      throw std::logic_error("edge out of range");
}

LassoAcceptance::LassoAcceptance(const BuchiAutomaton& b) : b_(b), out_(b.num_states()) {
  for (const auto& e : b.edges) out_[e.from].push_back({e.to, &e.label});
}

bool LassoAcceptance::accepts(const LassoWord& w) const {
  if (w.loop.empty()) throw std::invalid_argument("lasso word with empty loop");
  const std::size_t n = b_.num_states();
  std::vector<char> cur(n, 0), nxt(n, 0);
  cur[b_.initial] = 1;
  for (const auto& letter : w.stem) {
    std::fill(nxt.begin(), nxt.end(), 0);
    bool any = false;
    for (std::size_t s = 0; s < n; ++s) {
      if (!cur[s]) continue;
      for (const auto& [t, label] : out_[s])
        if (!nxt[t] && label_satisfied(*label, letter)) { nxt[t] = 1; any = true; }
    }
    cur.swap(nxt);
    if (!any) return false;
  }
  // Phase graph over (state, loop offset); acceptance needs an accepting
  // node on a cycle reachable from the entry set.
  const std::size_t L = w.loop.size();
  auto id = [&](std::size_t s, std::size_t i) { return s * L + i; };
  std::vector<char> reach(n * L, 0);
  std::vector<std::size_t> work;
  for (std::size_t s = 0; s < n; ++s)
    if (cur[s]) { reach[id(s, 0)] = 1; work.push_back(id(s, 0)); }
  while (!work.empty()) {
    std::size_t v = work.back();
    work.pop_back();
    std::size_t s = v / L, i = v % L;
    for (const auto& [t, label] : out_[s]) {
      if (!label_satisfied(*label, w.loop[i])) continue;
      std::size_t u = id(t, (i + 1) % L);
      if (!reach[u]) { reach[u] = 1; work.push_back(u); }
    }
  }
  // A reachable accepting node that can reach itself closes an accepting run.
  for (std::size_t s = 0; s < n; ++s) {
    if (!b_.accepting[s]) continue;
    for (std::size_t i = 0; i < L; ++i) {
      if (!reach[id(s, i)]) continue;
      std::vector<char> seen(n * L, 0);
      std::vector<std::size_t> stack{id(s, i)};
      bool cycle = false;
      while (!stack.empty() && !cycle) {
        std::size_t v = stack.back();
        stack.pop_back();
        std::size_t vs = v / L, vi = v % L;
        for (const auto& [t, label] : out_[vs]) {
          if (!label_satisfied(*label, w.loop[vi])) continue;
          std::size_t u = id(t, (vi + 1) % L);
          if (u == id(s, i)) { cycle = true; break; }
          if (!seen[u]) { seen[u] = 1; stack.push_back(u); }
        }
      }
      if (cycle) return true;
    }
  }
  return false;
}

bool accepts(const BuchiAutomaton& b, const LassoWord& w) {
  return LassoAcceptance(b).accepts(w);
}

GuardExpr GuardExpr::constant(bool v) {
  GuardExpr e;
  e.kind = v ? Kind::True : Kind::False;
  return e;
}

GuardExpr GuardExpr::lit(QuadLiteral l) {
  GuardExpr e;
  e.kind = Kind::Lit;
  e.literal = std::move(l);
  return e;
}

GuardExpr GuardExpr::negation(GuardExpr x) {
  GuardExpr e;
  e.kind = Kind::Not;
  e.kids.push_back(std::move(x));
  return e;
}

GuardExpr GuardExpr::conj(GuardExpr a, GuardExpr b) {
  GuardExpr e;
  e.kind = Kind::And;
  e.kids.push_back(std::move(a));
  e.kids.push_back(std::move(b));
  return e;
}

GuardExpr GuardExpr::disj(GuardExpr a, GuardExpr b) {
  GuardExpr e;
  e.kind = Kind::Or;
  e.kids.push_back(std::move(a));
  e.kids.push_back(std::move(b));
  return e;
}

namespace {

// DNF as sets of literals; negation flips literal forms, so no negation
// nodes survive.
using Conjunct = std::vector<QuadLiteral>;

std::vector<Conjunct> dnf(const GuardExpr& g, bool neg) {
  using K = GuardExpr::Kind;
  switch (g.kind) {
    case K::True: return neg ? std::vector<Conjunct>{} : std::vector<Conjunct>{{}};
    case K::False: return neg ? std::vector<Conjunct>{{}} : std::vector<Conjunct>{};
    case K::Lit: {
      QuadLiteral l = g.literal;
      if (neg) l.form = negate(l.form);
      return {{l}};
    }
    case K::Not: return dnf(g.kids[0], !neg);
    case K::And:
    case K::Or: {
      bool and_like = (g.kind == K::And) != neg;
      auto a = dnf(g.kids[0], neg);
      auto b = dnf(g.kids[1], neg);
      if (!and_like) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
      }
      std::vector<Conjunct> out;
      for (const auto& x : a)
        for (const auto& y : b) {
          Conjunct c = x;
          c.insert(c.end(), y.begin(), y.end());
          out.push_back(std::move(c));
        }
      return out;
    }
  }
  return {};
}

}  // namespace

std::vector<QuadLabel> split_dnf(const GuardExpr& guard) {
  std::vector<QuadLabel> out;
  for (const auto& c : dnf(guard, false))
    if (auto label = make_label(c)) out.push_back(std::move(*label));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<BuchiEdge> split_dnf(const std::vector<GuardedEdge>& edges) {
  std::vector<BuchiEdge> out;
  for (const auto& e : edges)
    for (auto& label : split_dnf(e.guard)) out.push_back({e.from, e.to, std::move(label)});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string export_dot(const BuchiAutomaton& b) {
  std::ostringstream os;
  os << "digraph buchi {\n  rankdir=LR;\n  node [shape=circle];\n";
  os << "  init [shape=point];\n";
  for (std::size_t s = 0; s < b.num_states(); ++s) {
    os << "  \"" << b.state_names[s] << "\" [";
    if (b.accepting[s]) os << "shape=doublecircle";
    else os << "shape=circle";
    if (b.intermediate[s]) os << ", style=dashed, color=deeppink";
    os << "];\n";
  }
  os << "  init -> \"" << b.state_names[b.initial] << "\";\n";
  for (const auto& e : b.edges)
    os << "  \"" << b.state_names[e.from] << "\" -> \"" << b.state_names[e.to]
       << "\" [label=\"" << e.label.to_string() << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace ltlpsi
