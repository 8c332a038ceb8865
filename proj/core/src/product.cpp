#include "ltlpsi/product.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ltlpsi {

ProductAutomaton::ProductAutomaton(const RobotModel* model, BindingSet universe)
    : model_(model), universe_(universe) {}

int ProductAutomaton::state_id(int model_state, int buchi_state) const {
  return buchi_state * static_cast<int>(model_->state_names.size()) + model_state;
}

std::pair<int, int> ProductAutomaton::state_of(int id) const {
  int n = static_cast<int>(model_->state_names.size());
  return {id % n, id / n};
}

bool ProductAutomaton::accepting(int id, const BuchiAutomaton& b) const {
  return b.accepting[state_of(id).second];
}

void ProductAutomaton::add_edge(ProductEdge e) { edges_.push_back(std::move(e)); }

void ProductAutomaton::index_edges() {
  std::sort(edges_.begin(), edges_.end(), [](const ProductEdge& a, const ProductEdge& b) {
    return std::tie(a.from, a.to, a.buchi_from, a.buchi_to, a.label, a.cost) <
           std::tie(b.from, b.to, b.buchi_from, b.buchi_to, b.label, b.cost);
  });
  out_.assign(num_states(), {});
  by_transition_.clear();
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const ProductEdge& e = edges_[i];
    out_[e.from].push_back(static_cast<int>(i));
    by_transition_[{e.buchi_from, e.buchi_to, e.label}].push_back(static_cast<int>(i));
  }
}

const std::vector<int>& ProductAutomaton::edges_matching(const BuchiEdge& e) const {
  static const std::vector<int> none;
  auto it = by_transition_.find({e.from, e.to, e.label});
  return it == by_transition_.end() ? none : it->second;
}

bool ProductAutomaton::equivalent(const ProductAutomaton& o, const BuchiAutomaton& b_self,
                                  const BuchiAutomaton& b_other) const {
  auto reachable_edges = [](const ProductAutomaton& g, const BuchiAutomaton& b) {
    std::set<std::tuple<std::string, int, std::string, int, QuadLabel, std::uint32_t, double>> keys;
    std::vector<char> seen(g.num_states(), 0);
    std::vector<int> work{g.initial()};
    if (g.initial() >= 0) seen[g.initial()] = 1;
    while (!work.empty()) {
      int v = work.back();
      work.pop_back();
      for (int ei : g.out_[v]) {
        const ProductEdge& e = g.edges_[ei];
        keys.insert({b.state_names[e.buchi_from], g.state_of(e.from).first,
                     b.state_names[e.buchi_to], g.state_of(e.to).first, e.label,
                     e.admissible.bits(), e.cost});
        if (!seen[e.to]) { seen[e.to] = 1; work.push_back(e.to); }
      }
    }
    return keys;
  };
  return reachable_edges(*this, b_self) == reachable_edges(o, b_other);
}

ProductAutomaton build_product(const RobotModel& model, const BuchiAutomaton& b,
                               BindingSet universe) {
  ProductAutomaton g(&model, universe);
  g.num_buchi_states_ = b.num_states();
  g.initial_ = g.state_id(model.initial, b.initial);

  // admissible bindings depend only on (label, target state label)
  std::map<std::pair<const QuadLabel*, int>, BindingSet> memo;
  for (const auto& be : b.edges) {
    for (int s = 0; s < static_cast<int>(model.state_names.size()); ++s) {
      for (const auto& [t, w] : model.adjacency[s]) {
        auto key = std::make_pair(&be.label, t);
        auto it = memo.find(key);
        if (it == memo.end())
          it = memo.emplace(key, admissible_bindings(be.label, universe, model.labels[t])).first;
        if (it->second.empty()) continue;
        g.add_edge({g.state_id(s, be.from), g.state_id(t, be.to), be.from, be.to, be.label,
                    it->second, w});
      }
    }
  }
  g.index_edges();
  return g;
}

ProductAutomaton update_product(const ProductAutomaton& g, const BuchiAutomaton& b_old,
                                const BuchiAutomaton& b_upd,
                                const std::vector<BuchiEdge>& updated_edges) {
  for (const auto& e : updated_edges)
    if (!b_upd.has_edge(e))
      throw std::invalid_argument("updated edge list inconsistent with the updated automaton");
  if (updated_edges.empty()) return g;

  const RobotModel& model = g.model();
  ProductAutomaton out = g;

  auto removed_between = [&](int z_from, int z_to) {
    std::vector<QuadLabel> gone;
    for (const auto& e : b_old.edges)
      if (e.from == z_from && e.to == z_to && !b_upd.has_edge(e)) gone.push_back(e.label);
    if (gone.size() != 1)
      throw std::invalid_argument("cannot identify the replaced transition");
    return gone.front();
  };

  if (updated_edges.size() == 3) {
    const BuchiEdge& into = updated_edges[0];
    const BuchiEdge& leave = updated_edges[2];
    QuadLabel removed_label = removed_between(into.from, leave.to);

    out.num_buchi_states_ = b_upd.num_states();
    std::erase_if(out.edges_, [&](const ProductEdge& e) {
      return e.buchi_from == into.from && e.buchi_to == leave.to && e.label == removed_label;
    });
    for (const auto& be : updated_edges) {
      for (int s = 0; s < static_cast<int>(model.state_names.size()); ++s) {
        for (const auto& [t, w] : model.adjacency[s]) {
          BindingSet mask = admissible_bindings(be.label, g.universe(), model.labels[t]);
          if (mask.empty()) continue;
          out.add_edge({out.state_id(s, be.from), out.state_id(t, be.to), be.from, be.to,
                        be.label, mask, w});
        }
      }
    }
  } else if (updated_edges.size() == 1) {
    const BuchiEdge& modified = updated_edges[0];
    QuadLabel old_label = removed_between(modified.from, modified.to);
    for (auto it = out.edges_.begin(); it != out.edges_.end();) {
      if (it->buchi_from == modified.from && it->buchi_to == modified.to &&
          it->label == old_label) {
        BindingSet mask = admissible_bindings(modified.label, g.universe(),
                                              model.labels[g.state_of(it->to).first]);
        if (mask.empty()) {
          it = out.edges_.erase(it);
          continue;
        }
        it->label = modified.label;
        it->admissible = mask;
      }
      ++it;
    }
  } else {
    throw std::invalid_argument("updated edge list must have 0, 1 or 3 entries");
  }
  out.index_edges();
  return out;
}

std::string export_dot(const ProductAutomaton& g, const BuchiAutomaton& b) {
  std::ostringstream os;
  os << "digraph product {\n  rankdir=LR;\n";
  std::vector<char> seen(g.num_states(), 0);
  std::vector<int> work{g.initial()};
  seen[g.initial()] = 1;
  std::vector<int> order;
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    order.push_back(v);
    for (int ei : g.out_edges()[v]) {
      int t = g.edges()[ei].to;
      if (!seen[t]) { seen[t] = 1; work.push_back(t); }
    }
  }
  auto name = [&](int id) {
    auto [s, z] = g.state_of(id);
    return g.model().state_names[s] + " , " + b.state_names[z];
  };
  for (int v : order) {
    os << "  \"" << name(v) << "\"";
    if (g.accepting(v, b)) os << " [shape=doublecircle]";
    os << ";\n";
  }
  for (int v : order)
    for (int ei : g.out_edges()[v]) {
      const auto& e = g.edges()[ei];
      os << "  \"" << name(e.from) << "\" -> \"" << name(e.to) << "\" [label=\""
         << e.label.to_string() << " / " << e.admissible.to_string() << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace ltlpsi
