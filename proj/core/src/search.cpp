#include "ltlpsi/search.hpp"

#include <algorithm>
#include <set>

namespace ltlpsi {

bool CandidateFamily::contains(BindingSet r) const {
  if (r.empty()) return false;
  for (const auto& m : maximals)
    if (r.subset_of(m)) return true;
  return false;
}

BindingSet CandidateFamily::constrained(BindingSet m, const std::set<BindingSet>& all_or_nothing) {
  BindingSet r = m;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& c : all_or_nothing) {
      BindingSet inter = r.intersect(c);
      if (!inter.empty() && inter != c) {
        r = r.minus(inter);
        changed = true;
      }
    }
  }
  return r;
}

std::vector<BindingSet> CandidateFamily::options(const std::set<BindingSet>& all_or_nothing) const {
  std::set<BindingSet> distinct;
  for (const auto& m : maximals) {
    BindingSet r = constrained(m, all_or_nothing);
    if (!r.empty()) distinct.insert(r);
  }
  std::vector<BindingSet> out(distinct.begin(), distinct.end());
  std::sort(out.begin(), out.end(), [](BindingSet a, BindingSet b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.bits() < b.bits();
  });
  return out;
}

BindingSet CandidateFamily::coverage(const std::set<BindingSet>& all_or_nothing) const {
  BindingSet u;
  for (const auto& r : options(all_or_nothing)) u = u.union_with(r);
  return u;
}

bool CandidateFamily::empty(const std::set<BindingSet>& all_or_nothing) const {
  return options(all_or_nothing).empty();
}

bool trace_feasible(const ProductAutomaton& g, BindingSet r,
                    const std::vector<BuchiEdge>& raw_trace, const BuchiEdge* final_self) {
  const RobotModel& model = g.model();
  const std::size_t n = model.state_names.size();
  std::vector<char> cur(n, 0);
  cur[model.initial] = 1;

  auto model_state = [&](int product_state) { return g.state_of(product_state).first; };

  auto dwell = [&](const BuchiEdge& be, std::vector<char>& states) {
    // a robot occupies only states whose label admits its assignment while
    // the team sits on a self-transition, starting from where it stands
    std::vector<char> ok_here(n, 0);
    std::vector<std::vector<int>> moves(n);
    for (int ei : g.edges_matching(be)) {
      const ProductEdge& e = g.edges()[ei];
      if (!r.subset_of(e.admissible)) continue;
      int s = model_state(e.from), t = model_state(e.to);
      if (s == t) ok_here[s] = 1;
      moves[s].push_back(t);
    }
    std::vector<char> reach(n, 0);
    std::vector<int> work;
    for (std::size_t s = 0; s < n; ++s)
      if (states[s] && ok_here[s]) { reach[s] = 1; work.push_back(static_cast<int>(s)); }
    while (!work.empty()) {
      int s = work.back();
      work.pop_back();
      for (int t : moves[s])
        if (!reach[t]) { reach[t] = 1; work.push_back(t); }
    }
    states = std::move(reach);
  };

  auto progress = [&](const BuchiEdge& be, std::vector<char>& states) {
    std::vector<char> nxt(n, 0);
    for (int ei : g.edges_matching(be)) {
      const ProductEdge& e = g.edges()[ei];
      if (!r.subset_of(e.admissible)) continue;
      if (states[model_state(e.from)]) nxt[model_state(e.to)] = 1;
    }
    states = std::move(nxt);
  };

  for (const auto& be : raw_trace) {
    if (be.is_self()) dwell(be, cur);
    else progress(be, cur);
    if (std::none_of(cur.begin(), cur.end(), [](char c) { return c != 0; })) return false;
  }
  if (final_self) {
    dwell(*final_self, cur);
    if (std::none_of(cur.begin(), cur.end(), [](char c) { return c != 0; })) return false;
  }
  return true;
}

CandidateFamily update_bindings(const CandidateFamily& fam, const ProductAutomaton& g,
                                const std::vector<BuchiEdge>& raw_trace,
                                const BuchiEdge* final_self) {
  std::map<std::uint32_t, bool> memo;
  auto feasible = [&](BindingSet r) {
    auto it = memo.find(r.bits());
    if (it != memo.end()) return it->second;
    bool ok = trace_feasible(g, r, raw_trace, final_self);
    memo.emplace(r.bits(), ok);
    return ok;
  };

  std::vector<BindingSet> keep;
  std::set<std::uint32_t> enqueued;
  std::vector<BindingSet> work = fam.maximals;
  std::sort(work.begin(), work.end(), [](BindingSet a, BindingSet b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.bits() < b.bits();
  });
  for (const auto& w : work) enqueued.insert(w.bits());

  for (std::size_t i = 0; i < work.size(); ++i) {
    BindingSet w = work[i];
    bool covered = false;
    for (const auto& k : keep)
      if (w.subset_of(k)) { covered = true; break; }
    if (covered) continue;
    if (feasible(w)) {
      keep.push_back(w);
      continue;
    }
    for (int b : w.to_vector()) {
      BindingSet child = w;
      child.erase(b);
      if (!child.empty() && enqueued.insert(child.bits()).second) work.push_back(child);
    }
  }

  // antichain
  std::sort(keep.begin(), keep.end());
  CandidateFamily out;
  for (const auto& k : keep) {
    bool dominated = false;
    for (const auto& o : keep)
      if (o != k && k.subset_of(o)) { dominated = true; break; }
    if (!dominated) out.maximals.push_back(k);
  }
  return out;
}

namespace {

struct Node {
  BuchiEdge edge;
  std::vector<BuchiEdge> raw;
  std::shared_ptr<const BuchiAutomaton> automaton;
  std::vector<int> robots;  // indices into the fleet
  std::vector<std::shared_ptr<const ProductAutomaton>> products;
  std::vector<CandidateFamily> families;
  BindingConstraints constraints;
};

std::string edge_key(const BuchiAutomaton& b, const BuchiEdge& e) {
  return b.state_names[e.from] + "\x1f" + e.label.to_string() + "\x1f" + b.state_names[e.to];
}

std::string family_signature(const Node& n) {
  std::string sig;
  for (std::size_t i = 0; i < n.robots.size(); ++i) {
    sig += std::to_string(n.robots[i]) + ":";
    for (const auto& m : n.families[i].maximals) sig += m.to_string();
    sig += ";";
  }
  return sig;
}

std::vector<BuchiEdge> successors(const BuchiAutomaton& b, const BuchiEdge& cur) {
  std::vector<BuchiEdge> out;
  for (const auto* e : b.edges_from(cur.to)) {
    bool take = cur.is_self() ? !e->is_self() : e->is_self();
    if (take) out.push_back(*e);
  }
  std::sort(out.begin(), out.end(), [&](const BuchiEdge& a, const BuchiEdge& c) {
    return std::tie(b.state_names[a.to], a.label) < std::tie(b.state_names[c.to], c.label);
  });
  return out;
}

/* One covering assignment, preferring larger sets per robot; nothing is
 * returned when no combination of per-robot options covers the universe.
 */
std::optional<std::vector<BindingSet>> choose_covering(
    const std::vector<CandidateFamily>& families, const std::set<BindingSet>& combos,
    BindingSet universe) {
  const std::size_t n = families.size();
  std::vector<std::vector<BindingSet>> opts(n);
  for (std::size_t i = 0; i < n; ++i) {
    opts[i] = families[i].options(combos);
    if (opts[i].empty()) return std::nullopt;
  }
  std::vector<BindingSet> suffix(n + 1);
  for (std::size_t i = n; i-- > 0;) {
    suffix[i] = suffix[i + 1];
    for (const auto& o : opts[i]) suffix[i] = suffix[i].union_with(o);
  }
  std::vector<BindingSet> chosen(n);
  std::function<bool(std::size_t, BindingSet)> go = [&](std::size_t i, BindingSet covered) {
    if (i == n) return covered == universe;
    if (!universe.minus(covered).subset_of(suffix[i])) return false;
    for (const auto& o : opts[i]) {
      chosen[i] = o;
      if (go(i + 1, covered.union_with(o))) return true;
    }
    return false;
  };
  if (!go(0, BindingSet{})) return std::nullopt;
  return chosen;
}

}  // namespace

std::optional<SearchResult> find_team(const Fleet& fleet,
                                      std::shared_ptr<const BuchiAutomaton> automaton,
                                      BindingSet universe, const SearchOptions& options) {
  automaton->check();
  {
    auto missing = automaton->states_missing_self_loop();
    if (!missing.empty())
      throw std::invalid_argument("automaton state '" +
                                  automaton->state_names[missing.front()] +
                                  "' has no self-transition; the waiting assumption fails");
  }

  std::vector<std::shared_ptr<const ProductAutomaton>> products0;
  std::vector<int> robots0;
  std::vector<CandidateFamily> families0;
  for (std::size_t i = 0; i < fleet.robots.size(); ++i) {
    robots0.push_back(static_cast<int>(i));
    products0.push_back(
        std::make_shared<ProductAutomaton>(build_product(fleet.robots[i], *automaton, universe)));
    families0.push_back(CandidateFamily::full(universe));
  }

  std::vector<Node> stack;
  auto initial_edges = [&] {
    std::vector<BuchiEdge> out;
    for (const auto* e : automaton->edges_from(automaton->initial)) out.push_back(*e);
    std::sort(out.begin(), out.end(), [&](const BuchiEdge& a, const BuchiEdge& c) {
      return std::tie(automaton->state_names[a.to], a.label) <
             std::tie(automaton->state_names[c.to], c.label);
    });
    return out;
  }();
  for (auto it = initial_edges.rbegin(); it != initial_edges.rend(); ++it)
    stack.push_back({*it, {}, automaton, robots0, products0, families0, {}});

  std::set<std::string> visited;

  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();

    std::string key = edge_key(*node.automaton, node.edge);
    if (options.strict_visited) key += "\x1f" + family_signature(node);
    if (!visited.insert(key).second) continue;

    std::shared_ptr<const BuchiAutomaton> b = node.automaton;
    std::vector<BuchiEdge> raw = node.raw;
    std::vector<BuchiEdge> updated;
    BindingConstraints constraints = node.constraints;
    auto products = node.products;

    if (!raw.empty()) {
      BuchiUpdate upd = update_buchi(*b, raw.back(), node.edge, fleet.catalog);
      constraints.merge(upd.constraints);
      if (options.insert_intermediate && upd.changed()) {
        auto b_upd = std::make_shared<const BuchiAutomaton>(std::move(upd.automaton));
        for (auto& g : products)
          g = std::make_shared<const ProductAutomaton>(
              update_product(*g, *b, *b_upd, upd.updated_edges));
        b = b_upd;
        updated = upd.updated_edges;
      }
    }

    if (updated.size() == 3) {
      raw.insert(raw.end(), updated.begin(), updated.end());
    } else if (updated.size() == 1) {
      raw.back() = updated.front();
      raw.push_back(node.edge);
    } else {
      raw.push_back(node.edge);
    }

    // refine candidates; robots that cannot carry any binding leave
    std::vector<int> robots;
    std::vector<std::shared_ptr<const ProductAutomaton>> alive_products;
    std::vector<CandidateFamily> families;
    for (std::size_t i = 0; i < node.robots.size(); ++i) {
      CandidateFamily fam = update_bindings(node.families[i], *products[i], raw, nullptr);
      if (fam.empty(constraints.all_or_nothing)) continue;
      robots.push_back(node.robots[i]);
      alive_products.push_back(products[i]);
      families.push_back(std::move(fam));
    }

    BindingSet cov;
    for (const auto& f : families) cov = cov.union_with(f.coverage(constraints.all_or_nothing));
    if (cov != universe) continue;

    const BuchiEdge& cur = raw.back();
    if (b->accepting[cur.to]) {
      auto loops = b->self_loops(cur.to);
      std::sort(loops.begin(), loops.end(),
                [](const BuchiEdge* a, const BuchiEdge* c) { return a->label < c->label; });
      for (const BuchiEdge* loop : loops) {
        std::vector<CandidateFamily> fin;
        bool dead = false;
        for (std::size_t i = 0; i < robots.size(); ++i) {
          CandidateFamily fam = update_bindings(families[i], *alive_products[i], raw, loop);
          if (fam.empty(constraints.all_or_nothing)) { dead = true; break; }
          fin.push_back(std::move(fam));
        }
        if (dead) continue;
        auto chosen = choose_covering(fin, constraints.all_or_nothing, universe);
        if (!chosen) continue;

        SearchResult sr;
        for (std::size_t i = 0; i < robots.size(); ++i)
          sr.robots.push_back(fleet.robots[robots[i]].name);
        sr.families = fin;
        sr.chosen = *chosen;
        sr.constraints = constraints;
        sr.raw_trace = raw;
        for (const auto& e : raw)
          if (!e.is_self()) sr.beta.push_back(e);
        sr.dwell_labels.assign(sr.beta.size(), std::nullopt);
        std::size_t k = 0;
        for (std::size_t i = 0; i < raw.size(); ++i) {
          if (raw[i].is_self()) continue;
          if (i > 0 && raw[i - 1].is_self() && raw[i - 1].from == raw[i].from)
            sr.dwell_labels[k] = raw[i - 1].label;
          ++k;
        }
        sr.final_dwell = loop->label;
        sr.original = automaton;
        sr.automaton = b;
        sr.products = alive_products;
        return sr;
      }
    }

    auto succ = successors(*b, cur);
    for (auto it = succ.rbegin(); it != succ.rend(); ++it)
      stack.push_back({*it, raw, b, robots, alive_products, families, constraints});
  }
  return std::nullopt;
}

SingleChooser first_candidate_chooser() {
  return [](BindingSet, const std::vector<std::string>& candidates) { return candidates.front(); };
}

SingleChooser min_cost_chooser(std::function<double(const std::string&, BindingSet)> cost,
                               std::map<std::string, double>* cost_log) {
  return [cost, cost_log](BindingSet c, const std::vector<std::string>& candidates) {
    std::string best;
    double best_cost = 0;
    for (const auto& name : candidates) {
      double v = cost(name, c);
      if (cost_log) (*cost_log)[name] = v;
      if (best.empty() || v < best_cost) {  // ties fall to name order
        best = name;
        best_cost = v;
      }
    }
    return best;
  };
}

TeamPlan resolve_single(const SearchResult& sr, const Fleet& fleet, const SingleChooser& choose) {
  std::vector<std::string> team = sr.robots;
  std::vector<BindingSet> assign = sr.chosen;
  std::vector<std::shared_ptr<const ProductAutomaton>> products = sr.products;

  BindingSet universe;
  for (const auto& r : assign) universe = universe.union_with(r);

  for (const auto& c : sr.constraints.exactly_one) {
    std::vector<std::string> candidates;
    for (std::size_t i = 0; i < team.size(); ++i)
      if (c.subset_of(assign[i])) candidates.push_back(team[i]);
    std::sort(candidates.begin(), candidates.end());
    if (candidates.empty())
      throw std::runtime_error("no robot can own all of the exactly-one bindings " + c.to_string());
    std::string winner = choose(c, candidates);

    for (std::size_t i = 0; i < team.size();) {
      if (team[i] != winner && assign[i].intersects(c)) {
        BindingSet stripped = assign[i].minus(c);
        stripped = CandidateFamily::constrained(stripped, sr.constraints.all_or_nothing);
        if (stripped.empty()) {
          team.erase(team.begin() + i);
          assign.erase(assign.begin() + i);
          products.erase(products.begin() + i);
          continue;
        }
        assign[i] = stripped;
      }
      ++i;
    }
  }

  BindingSet covered;
  for (const auto& r : assign) covered = covered.union_with(r);
  if (covered != universe)
    throw std::runtime_error("binding coverage lost while resolving exactly-one constraints");

  // independent soundness pass: the fixed assignments realize the walk
  BuchiEdge final_loop{sr.beta.empty() ? sr.automaton->initial : sr.beta.back().to,
                       sr.beta.empty() ? sr.automaton->initial : sr.beta.back().to,
                       sr.final_dwell};
  for (std::size_t i = 0; i < team.size(); ++i)
    if (!trace_feasible(*products[i], assign[i], sr.raw_trace, &final_loop))
      throw std::logic_error("robot " + team[i] +
                             " cannot realize the accepted walk with its final assignment");

  TeamPlan plan;
  plan.team = team;
  for (std::size_t i = 0; i < team.size(); ++i) plan.assignments[team[i]] = assign[i];
  plan.constraints = sr.constraints;
  plan.beta = sr.beta;
  plan.dwell_labels = sr.dwell_labels;
  plan.final_dwell = sr.final_dwell;
  for (std::size_t k = 0; k < sr.beta.size(); ++k)
    if (sr.dwell_labels[k])
      plan.self_loops[sr.automaton->state_names[sr.beta[k].from]] = *sr.dwell_labels[k];
  int last = sr.beta.empty() ? sr.automaton->initial : sr.beta.back().to;
  plan.self_loops[sr.automaton->state_names[last]] = sr.final_dwell;
  plan.original = sr.original;
  plan.automaton = sr.automaton;
  for (std::size_t i = 0; i < team.size(); ++i) plan.products[team[i]] = products[i];
  (void)fleet;
  return plan;
}

}  // namespace ltlpsi
