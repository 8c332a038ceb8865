#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "ltlpsi/buchi.hpp"

namespace ltlpsi {
namespace {

/* Interned normalized formulas. Input is rewritten (negation-free except
 * for literal polarity), so the closure needs no Release operator.
 */
struct Interned {
  enum class Kind { True, False, Lit, And, Or, Until, Always, Eventually };
  Kind kind = Kind::True;
  int a = -1, b = -1;
  QuadLiteral lit;
};

class FormulaTable {
public:
  int intern(const TaskFormula& f) {
    using K = TaskFormula::Kind;
    switch (f.kind) {
      case K::True: return put({Interned::Kind::True});
      case K::False: return put({Interned::Kind::False});
      case K::Atom: {
        Interned n{Interned::Kind::Lit};
        LiteralForm form;
        if (f.quantifier == Quantifier::ForAll)
          form = f.polarity ? LiteralForm::AllTrue : LiteralForm::AllFalse;
        else
          form = f.polarity ? LiteralForm::SomeTrue : LiteralForm::SomeFalse;
        n.lit = QuadLiteral{QuadProp{f.prop, f.binding}, form};
        return put(n);
      }
      case K::And: return put({Interned::Kind::And, intern(f.kids[0]), intern(f.kids[1])});
      case K::Or: return put({Interned::Kind::Or, intern(f.kids[0]), intern(f.kids[1])});
      case K::Until: return put({Interned::Kind::Until, intern(f.kids[0]), intern(f.kids[1])});
      case K::Always: return put({Interned::Kind::Always, intern(f.kids[0])});
      case K::Eventually: return put({Interned::Kind::Eventually, intern(f.kids[0])});
      default:
        throw std::invalid_argument("translate requires a rewritten formula");
    }
  }

  const Interned& at(int id) const { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }

private:
  int put(Interned n) {
    auto key = std::make_tuple(static_cast<int>(n.kind), n.a, n.b, n.lit);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    nodes_.push_back(n);
    int id = static_cast<int>(nodes_.size()) - 1;
    index_.emplace(key, id);
    return id;
  }

  std::vector<Interned> nodes_;
  std::map<std::tuple<int, int, int, QuadLiteral>, int> index_;
};

struct TabNode {
  std::set<int> incoming;  // -1 stands for the initial state
  std::set<int> fresh, old, next;
};

class Tableau {
public:
  explicit Tableau(const TaskFormula& f) {
    root_ = table_.intern(f);
    TabNode start;
    start.incoming.insert(-1);
    start.fresh.insert(root_);
    expand(std::move(start));
  }

  BuchiAutomaton build() {
    // acceptance sets, one per Until/Eventually in the closure
    std::vector<int> pending;
    for (std::size_t i = 0; i < table_.size(); ++i) {
      auto k = table_.at(static_cast<int>(i)).kind;
      if (k == Interned::Kind::Until || k == Interned::Kind::Eventually)
        pending.push_back(static_cast<int>(i));
    }
    const int k = static_cast<int>(pending.size());

    // in_set[u][node]: node satisfies acceptance set u
    auto in_set = [&](int u, const TabNode& n) {
      int f = pending[u];
      if (!n.old.count(f)) return true;
      const Interned& fi = table_.at(f);
      int rhs = fi.kind == Interned::Kind::Until ? fi.b : fi.a;
      if (table_.at(rhs).kind == Interned::Kind::True) return true;
      return n.old.count(rhs) > 0;
    };

    // Degeneralized states are (tableau node, counter); counter space is 1
    // when there is no pending obligation.
    const int layers = std::max(1, k);
    auto deg_id = [&](int node, int layer) { return node * layers + layer; };

    struct RawEdge { int from, to; };
    std::vector<RawEdge> raw;
    for (std::size_t t = 0; t < nodes_.size(); ++t)
      for (int src : nodes_[t].incoming)
        raw.push_back({src, static_cast<int>(t)});

    std::vector<std::optional<QuadLabel>> node_label(nodes_.size());
    for (std::size_t t = 0; t < nodes_.size(); ++t) {
      std::vector<QuadLiteral> lits;
      for (int id : nodes_[t].old)
        if (table_.at(id).kind == Interned::Kind::Lit) lits.push_back(table_.at(id).lit);
      node_label[t] = make_label(lits);
    }

    // assemble with explicit initial state, then prune unreachable
    const int total = static_cast<int>(nodes_.size()) * layers + 1;
    const int init_id = total - 1;
    std::vector<std::vector<std::pair<int, const QuadLabel*>>> adj(total);
    for (const auto& e : raw) {
      if (!node_label[e.to]) continue;
      for (int layer = 0; layer < layers; ++layer) {
        int from = e.from < 0 ? init_id : deg_id(e.from, layer);
        int layer_out = layer;
        if (k > 0 && e.from >= 0 && in_set(layer, nodes_[e.from]))
          layer_out = (layer + 1) % k;
        int to = deg_id(e.to, e.from < 0 ? 0 : layer_out);
        adj[from].push_back({to, &*node_label[e.to]});
        if (e.from < 0) break;  // initial state exists in one copy
      }
    }

    auto accepting_deg = [&](int id) {
      if (id == init_id) return false;
      int node = id / layers, layer = id % layers;
      if (k == 0) return true;
      return layer == 0 && in_set(0, nodes_[node]);
    };

    // BFS from the initial state for reachability and stable naming
    std::vector<int> order, remap(total, -1);
    std::vector<char> seen(total, 0);
    std::vector<int> queue{init_id};
    seen[init_id] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      int v = queue[h];
      order.push_back(v);
      for (const auto& [t, label] : adj[v])
        if (!seen[t]) { seen[t] = 1; queue.push_back(t); }
    }

    BuchiAutomaton b;
    for (std::size_t i = 0; i < order.size(); ++i) {
      remap[order[i]] = static_cast<int>(i);
      b.add_state("q" + std::to_string(i), accepting_deg(order[i]));
    }
    b.initial = remap[init_id];
    for (int v : order)
      for (const auto& [t, label] : adj[v]) b.add_edge(remap[v], remap[t], *label);
    b.sort_edges();
    b.check();
    return b;
  }

private:
  void expand(TabNode node) {
    if (node.fresh.empty()) {
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].old == node.old && nodes_[i].next == node.next) {
          nodes_[i].incoming.insert(node.incoming.begin(), node.incoming.end());
          return;
        }
      }
      nodes_.push_back(node);
      int id = static_cast<int>(nodes_.size()) - 1;
      TabNode succ;
      succ.incoming.insert(id);
      succ.fresh = node.next;
      expand(std::move(succ));
      return;
    }
    int f = *node.fresh.begin();
    node.fresh.erase(f);
    if (node.old.count(f)) { expand(std::move(node)); return; }
    const Interned& fi = table_.at(f);
    switch (fi.kind) {
      case Interned::Kind::True:
        expand(std::move(node));
        return;
      case Interned::Kind::False:
        return;  // contradiction, drop the branch
      case Interned::Kind::Lit: {
        for (int id : node.old) {
          const Interned& o = table_.at(id);
          if (o.kind != Interned::Kind::Lit || o.lit.prop != fi.lit.prop) continue;
          if (!make_label({o.lit, fi.lit})) return;  // unsatisfiable conjunct
        }
        node.old.insert(f);
        expand(std::move(node));
        return;
      }
      case Interned::Kind::And: {
        node.old.insert(f);
        if (!node.old.count(fi.a)) node.fresh.insert(fi.a);
        if (!node.old.count(fi.b)) node.fresh.insert(fi.b);
        expand(std::move(node));
        return;
      }
      case Interned::Kind::Or: {
        TabNode left = node, right = node;
        left.old.insert(f);
        right.old.insert(f);
        if (!left.old.count(fi.a)) left.fresh.insert(fi.a);
        if (!right.old.count(fi.b)) right.fresh.insert(fi.b);
        expand(std::move(left));
        expand(std::move(right));
        return;
      }
      case Interned::Kind::Until: {
        TabNode wait = node, done = node;
        wait.old.insert(f);
        done.old.insert(f);
        if (!wait.old.count(fi.a)) wait.fresh.insert(fi.a);
        wait.next.insert(f);
        if (!done.old.count(fi.b)) done.fresh.insert(fi.b);
        expand(std::move(wait));
        expand(std::move(done));
        return;
      }
      case Interned::Kind::Eventually: {
        TabNode wait = node, done = node;
        wait.old.insert(f);
        done.old.insert(f);
        wait.next.insert(f);
        if (!done.old.count(fi.a)) done.fresh.insert(fi.a);
        expand(std::move(wait));
        expand(std::move(done));
        return;
      }
      case Interned::Kind::Always: {
        node.old.insert(f);
        if (!node.old.count(fi.a)) node.fresh.insert(fi.a);
        node.next.insert(f);
        expand(std::move(node));
        return;
      }
    }
  }

  FormulaTable table_;
  std::vector<TabNode> nodes_;
  int root_;
};

}  // namespace

BuchiAutomaton translate(const TaskFormula& rewritten) {
  if (!rewritten.is_rewritten())
    throw std::invalid_argument("translate requires a rewritten formula");
  if (rewritten.props().empty())
    throw std::invalid_argument("formula has no propositions");
  Tableau tab(rewritten);
  return tab.build();
}

}  // namespace ltlpsi
