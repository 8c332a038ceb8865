#include "ltlpsi/behavior.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace ltlpsi {

PropSet moves_started(const RobotModel& m, const ActionCatalog& catalog, int from, int to) {
  PropSet out;
  for (const auto& [name, spec] : catalog.actions) {
    if (spec.instantaneous()) continue;
    if (!m.labels[from].count(name) && m.labels[to].count(name)) out.insert(name);
  }
  return out;
}

PropSet moves_completed(const RobotModel& m, const ActionCatalog& catalog, int from, int to) {
  PropSet out;
  for (const auto& [name, spec] : catalog.actions) {
    if (spec.instantaneous()) continue;
    if (m.labels[from].count(name) && m.labels[to].count(spec.completion())) out.insert(name);
  }
  return out;
}

namespace {

struct Hop {
  int from_state, to_state;
  double cost;
};

}  // namespace

Behavior find_behavior(const ProductAutomaton& product, const ActionCatalog& catalog,
                       const std::string& robot, BindingSet r,
                       const std::vector<BuchiEdge>& beta,
                       const std::vector<std::optional<QuadLabel>>& dwell_labels,
                       const BuchiEdge& final_self) {
  const RobotModel& model = product.model();
  const int N = static_cast<int>(model.state_names.size());
  const int K = static_cast<int>(beta.size());
  if (dwell_labels.size() != beta.size())
    throw std::invalid_argument("dwell label list must align with the progress edges");

  // per-layer move tables, admissibility already filtered for r
  auto collect = [&](const BuchiEdge& be) {
    std::vector<std::vector<Hop>> from(N);
    std::vector<char> stay_ok(N, 0);
    for (int ei : product.edges_matching(be)) {
      const ProductEdge& e = product.edges()[ei];
      if (!r.subset_of(e.admissible)) continue;
      int s = product.state_of(e.from).first, t = product.state_of(e.to).first;
      from[s].push_back({s, t, e.cost});
      if (s == t) stay_ok[s] = 1;
    }
    return std::make_pair(std::move(from), std::move(stay_ok));
  };

  std::vector<std::vector<std::vector<Hop>>> dwell_moves(K + 1);
  std::vector<std::vector<char>> dwell_stay(K + 1);
  for (int k = 0; k < K; ++k) {
    if (dwell_labels[k]) {
      BuchiEdge self{beta[k].from, beta[k].from, *dwell_labels[k]};
      auto [mv, st] = collect(self);
      dwell_moves[k] = std::move(mv);
      dwell_stay[k] = std::move(st);
    } else {
      dwell_moves[k].assign(N, {});
      dwell_stay[k].assign(N, 1);  // no dwell happens before the first move
    }
  }
  {
    if (!final_self.is_self())
      throw std::invalid_argument("the accepting dwell must be a self-transition");
    auto [mv, st] = collect(final_self);
    dwell_moves[K] = std::move(mv);
    dwell_stay[K] = std::move(st);
  }

  std::vector<std::vector<std::vector<Hop>>> cross_moves(K);
  for (int k = 0; k < K; ++k) {
    auto [mv, st] = collect(beta[k]);
    cross_moves[k] = std::move(mv);
  }

  // Dijkstra over (layer, state); ties prefer fewer moves, then state order
  struct Dist {
    double cost = std::numeric_limits<double>::infinity();
    int hops = 0;
    bool operator<(const Dist& o) const {
      if (cost != o.cost) return cost < o.cost;
      return hops < o.hops;
    }
  };
  const int total = (K + 1) * N;
  auto id = [N](int layer, int s) { return layer * N + s; };
  std::vector<Dist> dist(total);
  std::vector<int> parent(total, -1);
  std::vector<Hop> parent_hop(total);
  std::vector<char> parent_progress(total, 0);

  using QE = std::tuple<double, int, int>;  // cost, hops, node
  std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;

  int start = id(0, model.initial);
  if (!dwell_stay[0][model.initial])
    throw std::runtime_error("robot " + robot + " cannot start under the initial dwell label");
  dist[start] = {0.0, 0};
  pq.push({0.0, 0, start});

  auto relax = [&](int from_node, const Hop& hop, int to_node, bool progress) {
    Dist cand{dist[from_node].cost + hop.cost, dist[from_node].hops + 1};
    if (cand < dist[to_node]) {
      dist[to_node] = cand;
      parent[to_node] = from_node;
      parent_hop[to_node] = hop;
      parent_progress[to_node] = progress;
      pq.push({cand.cost, cand.hops, to_node});
    }
  };

  while (!pq.empty()) {
    auto [cost, hops, node] = pq.top();
    pq.pop();
    if (cost != dist[node].cost || hops != dist[node].hops) continue;
    int layer = node / N, s = node % N;
    for (const Hop& h : dwell_moves[layer][s]) {
      if (h.to_state == s) continue;  // waiting needs no explicit move
      relax(node, h, id(layer, h.to_state), false);
    }
    if (layer < K) {
      for (const Hop& h : cross_moves[layer][s]) {
        if (!dwell_stay[layer + 1][h.to_state]) continue;  // must be able to sit there
        relax(node, h, id(layer + 1, h.to_state), true);
      }
    }
  }

  int goal = -1;
  Dist best;
  for (int s = 0; s < N; ++s) {
    int node = id(K, s);
    if (!dwell_stay[K][s]) continue;
    if (dist[node].cost == std::numeric_limits<double>::infinity()) continue;
    if (goal < 0 || dist[node] < best) {
      goal = node;
      best = dist[node];
    }
  }
  if (goal < 0)
    throw std::runtime_error("robot " + robot + " has no realization of the accepted walk");

  Behavior b;
  b.robot = robot;
  b.assignment = r;
  b.initial_state = model.initial;
  b.final_state = goal % N;
  b.total_cost = best.cost;

  std::vector<Behavior::Move> rev;
  for (int node = goal; parent[node] >= 0; node = parent[node]) {
    const Hop& h = parent_hop[node];
    int layer = parent[node] / N;
    rev.push_back({h.from_state, h.to_state, layer, parent_progress[node] != 0, h.cost});
  }
  std::reverse(rev.begin(), rev.end());
  b.moves = std::move(rev);

  // segments and their held-back finales
  b.segments.resize(K);
  int cursor = 0;
  for (int k = 0; k < K; ++k) {
    Behavior::Segment seg;
    seg.begin = cursor;
    while (cursor < static_cast<int>(b.moves.size()) &&
           !(b.moves[cursor].segment == k && b.moves[cursor].progress))
      ++cursor;
    if (cursor == static_cast<int>(b.moves.size()))
      throw std::logic_error("behavior lost a progress move");
    seg.end = ++cursor;

    // pull the starts of every action the finale completes into the finale
    int f = seg.end - 1;
    while (true) {
      PropSet completed;
      for (int i = f; i < seg.end; ++i) {
        PropSet c = moves_completed(model, catalog, b.moves[i].from, b.moves[i].to);
        completed.insert(c.begin(), c.end());
      }
      int nf = f;
      for (int i = seg.begin; i < f; ++i) {
        PropSet st = moves_started(model, catalog, b.moves[i].from, b.moves[i].to);
        bool needed = std::any_of(st.begin(), st.end(),
                                  [&](const std::string& a) { return completed.count(a) > 0; });
        if (needed) { nf = i; break; }
      }
      if (nf == f) break;
      f = nf;
    }
    seg.finale_begin = f;
    seg.wait_state = b.moves[f].from;
    b.segments[k] = seg;
  }

  return b;
}

std::vector<std::string> sync_participants(const QuadLabel& label,
                                           const std::map<std::string, BindingSet>& assignments) {
  BindingSet mentioned = label.bindings();
  std::vector<std::string> out;
  for (const auto& [name, r] : assignments)
    if (r.intersects(mentioned)) out.push_back(name);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ltlpsi
