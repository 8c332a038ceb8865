#include "ltlpsi/robot.hpp"

#include <algorithm>
#include <stdexcept>

namespace ltlpsi {

int CapabilityTS::add_state(const std::string& n, PropSet label) {
  state_names.push_back(n);
  labels.push_back(std::move(label));
  return static_cast<int>(state_names.size()) - 1;
}

void CapabilityTS::add_edge(int from, int to, double weight) {
  if (weight < 0) throw std::invalid_argument("negative transition weight");
  edges.push_back({from, to, weight});
}

void CapabilityTS::ensure_self_loops() {
  std::vector<bool> has(state_names.size(), false);
  for (const auto& e : edges)
    if (e.from == e.to) has[e.from] = true;
  for (std::size_t s = 0; s < state_names.size(); ++s)
    if (!has[s]) edges.push_back({static_cast<int>(s), static_cast<int>(s), 0.0});
}

PropSet CapabilityTS::atoms() const {
  PropSet out;
  for (const auto& l : labels) out.insert(l.begin(), l.end());
  return out;
}

void CapabilityTS::check() const {
  if (state_names.empty()) throw std::invalid_argument("capability with no states");
  if (initial < 0 || initial >= static_cast<int>(state_names.size()))
    throw std::invalid_argument("bad initial state in capability " + name);
  for (const auto& e : edges)
    if (e.from < 0 || e.to < 0 || e.from >= static_cast<int>(state_names.size()) ||
        e.to >= static_cast<int>(state_names.size()) || e.weight < 0)
      throw std::invalid_argument("bad transition in capability " + name);
}

void ActionCatalog::add(ActionSpec a) {
  if (a.duration_lo < 0 || a.duration_hi < a.duration_lo)
    throw std::invalid_argument("bad duration model for action " + a.name);
  actions[a.name] = std::move(a);
}

std::pair<PropSet, PropSet> ActionCatalog::classify() const {
  PropSet inst, non_inst;
  for (const auto& [name, a] : actions)
    (a.instantaneous() ? inst : non_inst).insert(a.completion());
  return {inst, non_inst};
}

bool ActionCatalog::completion_is_instantaneous(const std::string& completion_prop) const {
  return !prop_is_non_instantaneous(completion_prop);
}

bool ActionCatalog::prop_is_non_instantaneous(const std::string& prop) const {
  if (prop.size() > 2 && prop.substr(prop.size() - 2) == "_c") {
    auto it = actions.find(prop.substr(0, prop.size() - 2));
    if (it != actions.end()) return !it->second.instantaneous();
  }
  // action propositions are started jointly, hence instantaneous
  return false;
}

const ActionSpec& ActionCatalog::action_of_completion(const std::string& completion_prop) const {
  if (completion_prop.size() > 2 && completion_prop.substr(completion_prop.size() - 2) == "_c") {
    auto it = actions.find(completion_prop.substr(0, completion_prop.size() - 2));
    if (it != actions.end()) return it->second;
  }
  throw std::invalid_argument("no action for completion proposition " + completion_prop);
}

void ActionCatalog::require_covers(const PropSet& props) const {
  for (const auto& p : props) {
    std::string base = p;
    if (base.size() > 2 && base.substr(base.size() - 2) == "_c") base.resize(base.size() - 2);
    if (!actions.count(base))
      throw std::invalid_argument("proposition '" + p + "' has no duration model");
  }
}

PropSet RobotModel::atoms() const {
  PropSet out;
  for (const auto& l : labels) out.insert(l.begin(), l.end());
  return out;
}

void RobotModel::finalize() {
  std::sort(edges.begin(), edges.end(), [](const RobotEdge& a, const RobotEdge& b) {
    return std::tie(a.from, a.to, a.weight) < std::tie(b.from, b.to, b.weight);
  });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const RobotEdge& a, const RobotEdge& b) {
                            return a.from == b.from && a.to == b.to && a.weight == b.weight;
                          }),
              edges.end());
  adjacency.assign(state_names.size(), {});
  for (const auto& e : edges) adjacency[e.from].push_back({e.to, e.weight});
}

void RobotModel::check() const {
  for (std::size_t s = 0; s < state_names.size(); ++s) {
    bool self = false;
    for (const auto& [t, w] : adjacency[s])
      if (t == static_cast<int>(s) && w == 0.0) self = true;
    if (!self) throw std::logic_error("robot state without waiting self-loop: " + state_names[s]);
  }
}

RobotModel product(const std::string& robot_name, const std::vector<CapabilityTS>& caps) {
  if (caps.empty()) throw std::invalid_argument("robot without capabilities");
  for (std::size_t i = 0; i < caps.size(); ++i) {
    caps[i].check();
    for (std::size_t j = i + 1; j < caps.size(); ++j) {
      if (caps[i].name == caps[j].name)
        throw std::invalid_argument("duplicate capability " + caps[i].name);
      PropSet a = caps[i].atoms(), b = caps[j].atoms();
      for (const auto& p : a)
        if (b.count(p))
          throw std::invalid_argument("atom '" + p + "' appears in capabilities " +
                                      caps[i].name + " and " + caps[j].name);
    }
  }

  RobotModel m;
  m.name = robot_name;
  for (const auto& c : caps) m.capability_names.push_back(c.name);

  const std::size_t k = caps.size();
  std::vector<std::size_t> sizes(k);
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    sizes[i] = caps[i].state_names.size();
    total *= sizes[i];
  }
  if (total > 2'000'000) throw std::invalid_argument("robot model too large");

  auto flat = [&](const std::vector<int>& idx) {
    std::size_t id = 0;
    for (std::size_t i = 0; i < k; ++i) id = id * sizes[i] + idx[i];
    return static_cast<int>(id);
  };

  std::vector<int> idx(k, 0);
  for (std::size_t id = 0; id < total; ++id) {
    std::size_t rest = id;
    for (std::size_t i = k; i-- > 0;) {
      idx[i] = static_cast<int>(rest % sizes[i]);
      rest /= sizes[i];
    }
    std::string name;
    PropSet label;
    for (std::size_t i = 0; i < k; ++i) {
      if (i) name += "|";
      name += caps[i].state_names[idx[i]];
      const auto& l = caps[i].labels[idx[i]];
      label.insert(l.begin(), l.end());
    }
    m.state_names.push_back(name);
    m.factors.push_back(idx);
    m.labels.push_back(std::move(label));
  }

  std::vector<int> init(k);
  for (std::size_t i = 0; i < k; ++i) init[i] = caps[i].initial;
  m.initial = flat(init);

  // per-component moves including waiting, combined synchronously
  std::vector<std::vector<std::vector<std::pair<int, double>>>> moves(k);
  for (std::size_t i = 0; i < k; ++i) {
    moves[i].assign(sizes[i], {});
    for (const auto& e : caps[i].edges) moves[i][e.from].push_back({e.to, e.weight});
    for (std::size_t s = 0; s < sizes[i]; ++s) {
      bool self = false;
      for (auto& [t, w] : moves[i][s])
        if (t == static_cast<int>(s)) self = true;
      if (!self) moves[i][s].push_back({static_cast<int>(s), 0.0});
    }
  }

  for (std::size_t sid = 0; sid < total; ++sid) {
    const std::vector<int>& from = m.factors[sid];
    std::vector<std::pair<std::vector<int>, double>> combos{{{}, 0.0}};
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<std::pair<std::vector<int>, double>> next;
      for (const auto& [tuple, w] : combos)
        for (const auto& [t, ew] : moves[i][from[i]]) {
          auto tt = tuple;
          tt.push_back(t);
          next.push_back({std::move(tt), w + ew});
        }
      combos = std::move(next);
    }
    for (const auto& [tuple, w] : combos)
      m.edges.push_back({static_cast<int>(sid), flat(tuple), w});
  }

  m.finalize();
  m.check();
  return m;
}

}  // namespace ltlpsi
