#include "ltlpsi/sim.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <sstream>

namespace ltlpsi {

double SimRun::first_time(const std::string& robot, const std::string& prop) const {
  auto it = std::find(robots.begin(), robots.end(), robot);
  if (it == robots.end()) return -1.0;
  std::size_t j = static_cast<std::size_t>(it - robots.begin());
  for (const auto& s : snapshots)
    if (s.atoms[j].count(prop)) return s.time;
  return -1.0;
}

namespace {

struct RobotProc {
  const Behavior* behavior = nullptr;
  int cursor = 0;
  int state = 0;
  std::map<std::string, double> running;  // started action -> completion ready time
  bool done = false;
  double timer_at = -1.0;       // completion wake-up already scheduled
  std::set<int> ready_marked;   // segments where readiness was recorded
  std::set<int> flag0_sent;     // segments where the completion flag went out
  std::map<int, std::set<std::string>> got_ready;  // segment -> senders
  std::map<int, std::set<std::string>> got_done;
};

struct Pending {
  double time = 0.0;
  long seq = 0;
  int kind = 0;  // 0 timer, 1 message delivery
  int robot = -1;
  SyncMessage msg;
  int receiver = -1;

  bool operator>(const Pending& o) const {
    return std::tie(time, seq) > std::tie(o.time, o.seq);
  }
};

class Engine {
public:
  Engine(const TeamPlan& plan, const std::map<std::string, Behavior>& behaviors,
         const Fleet& fleet, const SimConfig& config)
      : plan_(plan), fleet_(fleet), config_(config), rng_(config.seed) {
    run_.robots = plan.team;
    const int K = static_cast<int>(plan.beta.size());
    participants_.resize(K);
    ready_.assign(K, {});
    released_.assign(K, false);
    inst_ok_.assign(K, false);
    done0_.assign(K, {});
    for (int k = 0; k < K; ++k) {
      std::map<std::string, BindingSet> assign(plan.assignments.begin(), plan.assignments.end());
      participants_[k] = sync_participants(plan.beta[k].label, assign);
    }
    for (const auto& name : plan.team) {
      RobotProc p;
      p.behavior = &behaviors.at(name);
      p.state = p.behavior->initial_state;
      procs_.push_back(p);
    }
    record_atoms();  // initial configuration
  }

  SimRun run() {
    drain();
    while (!queue_.empty()) {
      if (++processed_ > config_.max_events) {
        run_.horizon_exhausted = true;
        run_.error = "event horizon exhausted";
        break;
      }
      Pending ev = queue_.top();
      queue_.pop();
      now_ = std::max(now_, ev.time);
      if (ev.kind == 1) deliver(ev);
      drain();
    }
    if (!run_.horizon_exhausted) {
      for (std::size_t j = 0; j < procs_.size(); ++j)
        if (!procs_[j].done) {
          run_.deadlock = true;
          run_.error = "deadlock: robot " + plan_.team[j] + " is waiting forever";
          break;
        }
    }
    build_snapshots();
    return std::move(run_);
  }

private:
  bool is_participant(int k, const std::string& name) const {
    const auto& r = participants_[k];
    return std::find(r.begin(), r.end(), name) != r.end();
  }
  bool messaging(int k) const { return participants_[k].size() >= 2; }

  void broadcast(int k, const std::string& sender, int flag) {
    if ((flag == 1 && config_.drop_readiness_messages) ||
        (flag == 0 && config_.drop_completion_messages))
      return;
    SyncMessage m{now_, sender, plan_.automaton->state_names[plan_.beta[k].to], flag};
    run_.messages.push_back(m);
    for (std::size_t j = 0; j < procs_.size(); ++j) {
      if (plan_.team[j] == sender) {
        receive(static_cast<int>(j), k, m);
        continue;
      }
      if (config_.message_latency <= 0) {
        receive(static_cast<int>(j), k, m);
      } else {
        Pending p;
        p.time = now_ + config_.message_latency;
        p.seq = seq_++;
        p.kind = 1;
        p.receiver = static_cast<int>(j);
        p.robot = k;  // segment rides in robot field for deliveries
        p.msg = m;
        queue_.push(p);
      }
    }
  }

  void deliver(const Pending& ev) { receive(ev.receiver, ev.robot, ev.msg); }

  void receive(int j, int k, const SyncMessage& m) {
    if (m.flag == 1) procs_[j].got_ready[k].insert(m.robot);
    else procs_[j].got_done[k].insert(m.robot);
  }

  double sample_duration(const std::string& action) {
    const ActionSpec& spec = fleet_.catalog.actions.at(action);
    if (config_.zero_durations || spec.instantaneous()) return 0.0;
    std::uniform_real_distribution<double> d(spec.duration_lo, spec.duration_hi);
    return d(rng_);
  }

  void log(const std::string& robot, const std::string& kind, const std::string& detail) {
    run_.events.push_back({now_, phase_, robot, kind, detail});
  }

  void record_atoms() {
    std::vector<PropSet> atoms;
    for (std::size_t j = 0; j < procs_.size(); ++j) {
      const RobotModel& m = fleet_.robot(plan_.team[j]);
      atoms.push_back(m.labels[procs_[j].state]);
    }
    atom_log_.push_back({now_, phase_, std::move(atoms)});
  }

  void mark_ready(int j, int k) {
    RobotProc& p = procs_[j];
    if (p.ready_marked.count(k)) return;
    p.ready_marked.insert(k);
    ready_[k].insert(plan_.team[j]);
    log(plan_.team[j], "ready", "waiting at " + model(j).state_names[p.state] + " for " +
                                    plan_.automaton->state_names[plan_.beta[k].to]);
    if (messaging(k) && is_participant(k, plan_.team[j])) broadcast(k, plan_.team[j], 1);
    if (!released_[k] && ready_[k].size() == procs_.size()) {
      released_[k] = true;
      ++phase_;
      log("", "release", "transition " + std::to_string(k) + " to " +
                             plan_.automaton->state_names[plan_.beta[k].to]);
      check_inst_ok(k);
    }
  }

  /* completion flag: sent once every non-instantaneous action completed by
   * this robot's finale has finished (immediately at release when there is
   * none). */
  void maybe_flag0(int j, int k) {
    RobotProc& p = procs_[j];
    if (!released_[k] || p.flag0_sent.count(k)) return;
    if (!is_participant(k, plan_.team[j])) return;
    const auto& seg = p.behavior->segments[k];
    for (int i = seg.finale_begin; i < seg.end; ++i) {
      const auto& mv = p.behavior->moves[i];
      if (moves_completed(model(j), fleet_.catalog, mv.from, mv.to).empty()) continue;
      if (p.cursor <= i) return;  // still pending
    }
    p.flag0_sent.insert(k);
    done0_[k].insert(plan_.team[j]);
    log(plan_.team[j], "complete", "finale actions done for transition " + std::to_string(k));
    if (messaging(k)) broadcast(k, plan_.team[j], 0);
    check_inst_ok(k);
  }

  void check_inst_ok(int k) {
    if (inst_ok_[k]) return;
    for (const auto& r : participants_[k])
      if (!done0_[k].count(r)) return;
    inst_ok_[k] = true;
    ++phase_;
    log("", "commit", "transition " + std::to_string(k) + " committed");
  }

  const RobotModel& model(int j) const { return fleet_.robot(plan_.team[j]); }

  // released from this robot's point of view (messages, not engine state)
  bool robot_released(int j, int k) {
    if (!released_[k]) return false;
    if (!messaging(k) || !is_participant(k, plan_.team[j])) return true;
    for (const auto& r : participants_[k])
      if (r != plan_.team[j] && !procs_[j].got_ready[k].count(r)) return false;
    return true;
  }

  bool robot_inst_ok(int j, int k) {
    if (!messaging(k) || !is_participant(k, plan_.team[j])) return inst_ok_[k];
    for (const auto& r : participants_[k])
      if (!procs_[j].got_done[k].count(r)) return false;
    return true;
  }

  // one attempt to make robot j act; true when something happened
  bool step(int j) {
    RobotProc& p = procs_[j];
    if (p.done) return false;
    if (p.cursor >= static_cast<int>(p.behavior->moves.size())) {
      p.done = true;
      log(plan_.team[j], "done", "dwelling at " + model(j).state_names[p.state]);
      return true;
    }
    const Behavior::Move& mv = p.behavior->moves[p.cursor];
    int k = mv.segment;
    const Behavior::Segment& seg = p.behavior->segments[k];
    bool intermediate = plan_.automaton->intermediate[plan_.beta[k].to];

    if (!intermediate && p.cursor >= seg.finale_begin) {
      if (!p.ready_marked.count(k)) {
        mark_ready(j, k);
        return true;
      }
      if (!robot_released(j, k)) return false;
      bool participant = is_participant(k, plan_.team[j]);
      bool is_progress = (p.cursor == seg.end - 1);
      bool completes =
          !moves_completed(model(j), fleet_.catalog, mv.from, mv.to).empty();
      if (!participant && !inst_ok_[k]) return false;
      if (participant && is_progress && !completes && !robot_inst_ok(j, k)) return false;
    }

    // completion moves fire when the slowest involved action finishes
    PropSet completed = moves_completed(model(j), fleet_.catalog, mv.from, mv.to);
    double ready_at = now_;
    for (const auto& a : completed) {
      auto it = p.running.find(a);
      if (it == p.running.end())
        throw std::logic_error("completion of an action that never started: " + a);
      ready_at = std::max(ready_at, it->second);
    }
    if (ready_at > now_) {
      if (p.timer_at != ready_at) {
        p.timer_at = ready_at;
        Pending t;
        t.time = ready_at;
        t.seq = seq_++;
        t.kind = 0;
        t.robot = j;
        queue_.push(t);
      }
      return false;
    }
    p.timer_at = -1.0;

    // execute
    for (const auto& a : moves_started(model(j), fleet_.catalog, mv.from, mv.to)) {
      double d = sample_duration(a);
      p.running[a] = now_ + d;
      log(plan_.team[j], "start", a + " (" + std::to_string(d) + "s)");
    }
    for (const auto& a : completed) p.running.erase(a);
    p.state = mv.to;
    ++p.cursor;
    std::ostringstream os;
    os << model(j).state_names[mv.from] << " -> " << model(j).state_names[mv.to];
    if (mv.progress) os << " (enters " << plan_.automaton->state_names[plan_.beta[k].to] << ")";
    log(plan_.team[j], "move", os.str());
    record_atoms();
    maybe_flag0(j, k);
    return true;
  }

  void drain() {
    bool moved = true;
    while (moved) {
      moved = false;
      for (std::size_t j = 0; j < procs_.size(); ++j)
        while (step(static_cast<int>(j))) moved = true;
      // release/flag0 conditions may have been enabled by other robots
      for (int k = 0; k < static_cast<int>(plan_.beta.size()); ++k)
        if (released_[k])
          for (std::size_t j = 0; j < procs_.size(); ++j) maybe_flag0(static_cast<int>(j), k);
    }
  }

  void build_snapshots() {
    for (std::size_t i = 0; i < atom_log_.size(); ++i) {
      bool last_of_group = i + 1 == atom_log_.size() ||
                           atom_log_[i + 1].time != atom_log_[i].time ||
                           atom_log_[i + 1].phase != atom_log_[i].phase;
      if (!last_of_group) continue;
      if (!run_.snapshots.empty() && run_.snapshots.back().atoms == atom_log_[i].atoms) continue;
      run_.snapshots.push_back(atom_log_[i]);
    }
  }

  const TeamPlan& plan_;
  const Fleet& fleet_;
  SimConfig config_;
  std::mt19937_64 rng_;
  SimRun run_;
  std::vector<RobotProc> procs_;
  std::vector<std::vector<std::string>> participants_;
  std::vector<std::set<std::string>> ready_;
  std::vector<bool> released_, inst_ok_;
  std::vector<std::set<std::string>> done0_;
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> queue_;
  std::vector<Snapshot> atom_log_;
  double now_ = 0.0;
  int phase_ = 0;
  long seq_ = 0;
  long processed_ = 0;
};

}  // namespace

SimRun simulate(const TeamPlan& plan, const std::map<std::string, Behavior>& behaviors,
                const Fleet& fleet, const SimConfig& config) {
  for (const auto& name : plan.team)
    if (!behaviors.count(name))
      throw std::invalid_argument("missing behavior for robot " + name);
  Engine engine(plan, behaviors, fleet, config);
  return engine.run();
}

}  // namespace ltlpsi
