#include "macoord/executor.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "macoord/errors.hpp"
#include "macoord/log.hpp"

namespace macoord {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Completions sort before starts at equal timestamps so back-to-back
// activities read in causal order.
int event_rank(EventType t) {
  switch (t) {
    case EventType::MoveEnd: return 0;
    case EventType::ActionEnd: return 1;
    case EventType::ArriveRendezvous: return 2;
    case EventType::CommEnd: return 3;
    case EventType::CommStart: return 4;
    case EventType::MoveStart: return 5;
    case EventType::ActionStart: return 6;
  }
  return 7;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  bool all_one() {
    for (std::size_t i = 1; i < parent.size(); ++i) {
      if (find(static_cast<int>(i)) != find(0)) return false;
    }
    return true;
  }
};

}  // namespace

std::string event_type_name(EventType t) {
  switch (t) {
    case EventType::MoveStart: return "move_start";
    case EventType::MoveEnd: return "move_end";
    case EventType::ActionStart: return "action_start";
    case EventType::ActionEnd: return "action_end";
    case EventType::ArriveRendezvous: return "arrive_rendezvous";
    case EventType::CommStart: return "comm_start";
    case EventType::CommEnd: return "comm_end";
  }
  return "unknown";
}

double realized_makespan(const std::vector<double>& instants) {
  if (instants.size() < 2) return kInf;
  double gap = 0.0;
  for (std::size_t k = 1; k < instants.size(); ++k) {
    gap = std::max(gap, instants[k] - instants[k - 1]);
  }
  return gap;
}

std::vector<bool> verify_sufficient_communication(const ConnectivityLog& log,
                                                  int rounds, double Tc,
                                                  double Dc) {
  std::vector<bool> pass(static_cast<std::size_t>(std::max(rounds, 0)), false);
  for (int r = 0; r < rounds; ++r) {
    for (const ConnectivityInterval& iv : log.intervals) {
      double s = std::max(iv.a, r * Tc);
      if (s + Dc <= iv.b && s < (r + 1) * Tc) {
        pass[static_cast<std::size_t>(r)] = true;
        break;
      }
    }
  }
  return pass;
}

SimEngine::SimEngine(const Scenario& sc, std::vector<PlannedAgent>& agents,
                     const RunOptions& opt)
    : sc_(&sc), opt_(opt), pending_(opt.perturbations) {
  const int n = static_cast<int>(agents.size());
  rt_.resize(agents.size());
  for (int i = 0; i < n; ++i) {
    AgentRt& a = rt_[i];
    a.pa = &agents[i];
    a.pos = agents[i].spec.start;
    a.estimate = measure(sc.signal, i, n, 0.0);
    a.history.push_back({0.0, a.estimate});
  }
}

void SimEngine::move_leg(int i, Cell to, int round) {
  AgentRt& a = rt_[i];
  if (a.pos == to) return;
  TravelOracle& tr = *a.pa->travel;
  const Path& path = tr.path(a.pos, to);
  double heading = tr.canonical_heading(a.pos);
  const MotionParams& m = sc_->motion;

  events_.push_back(
      Event{EventType::MoveStart, a.clock, i, round, a.pos, to, "", "", 0.0});
  double t = a.clock;
  for (std::size_t k = 1; k < path.cells.size(); ++k) {
    Point p0 = path.waypoints[k - 1];
    Point p1 = path.waypoints[k];
    double dir = std::atan2(p1.y - p0.y, p1.x - p0.x);
    double turn = std::abs(wrap_angle(heading, dir)) / m.angular_speed;
    if (turn > 0.0) {
      a.phases.push_back(MotionPhase{t, t + turn, p0, p0});
      t += turn;
    }
    double drive = point_distance(p0, p1) / m.linear_speed;
    a.phases.push_back(MotionPhase{t, t + drive, p0, p1});
    t += drive;
    heading = dir;
  }
  // The clock advances by the cached leg duration rather than the re-derived
  // per-phase sum, so realized times match scheduled times exactly; the last
  // phase is snapped onto that boundary.
  a.clock += tr.time(a.pos, to);
  a.phases.back().t1 = a.clock;
  Cell from = a.pos;
  a.pos = to;
  events_.push_back(
      Event{EventType::MoveEnd, a.clock, i, round, from, to, "", "", 0.0});
}

void SimEngine::do_action(int i, const UnrolledPlan::StepInfo& si, int round) {
  AgentRt& a = rt_[i];
  const TransitionSystem& ts = a.pa->ts;
  double duration = ts.durations[si.action];
  for (auto it = pending_.begin(); it != pending_.end(); ++it) {
    if (it->agent == i && it->round == round) {
      duration += it->extra_seconds;
      pending_.erase(it);
      break;
    }
  }
  const std::string& name = ts.actions[si.action];
  std::string region_name = si.region >= 0 ? ts.regions[si.region] : "";
  events_.push_back(Event{EventType::ActionStart, a.clock, i, round, a.pos,
                          a.pos, region_name, name, duration});
  Point p = sc_->ws.center(a.pos);
  a.phases.push_back(MotionPhase{a.clock, a.clock + duration, p, p});
  a.clock += duration;
  events_.push_back(Event{EventType::ActionEnd, a.clock, i, round, a.pos,
                          a.pos, region_name, name, duration});
  if (name == sc_->signal.monitor_action) refresh_estimate(i);
}

void SimEngine::refresh_estimate(int i) {
  AgentRt& a = rt_[i];
  a.estimate = measure(sc_->signal, i, players(), a.clock);
  a.history.push_back({a.clock, a.estimate});
}

void SimEngine::advance_plan(int i, long long h, int round) {
  AgentRt& a = rt_[i];
  while (a.next_step <= h) {
    long long j = a.next_step;
    const UnrolledPlan::StepInfo& si = a.pa->pattern.step(j);
    if (si.cell != a.pos) move_leg(i, si.cell, round);
    if (si.action != kIdleAction) do_action(i, si, round);
    if (a.pa->pattern.is_anchor(j)) a.satisfaction.push_back(a.clock);
    ++a.next_step;
  }
}

double SimEngine::goto_meeting(int i, Cell z, int round) {
  AgentRt& a = rt_[i];
  move_leg(i, z, round);
  events_.push_back(Event{EventType::ArriveRendezvous, a.clock, i, round, z, z,
                          "", "", 0.0});
  a.min_divert = a.next_step;
  return a.clock;
}

void SimEngine::hold_until(int i, double t) {
  AgentRt& a = rt_[i];
  if (t <= a.clock) return;
  Point p = sc_->ws.center(a.pos);
  a.phases.push_back(MotionPhase{a.clock, t, p, p});
  a.clock = t;
}

double SimEngine::execute_meeting(const std::vector<int>& who,
                                  const std::vector<Strategy>& profile,
                                  int round, RoundRecord& rec) {
  std::vector<double> arrivals(who.size());
  for (std::size_t k = 0; k < who.size(); ++k) {
    int i = who[k];
    advance_plan(i, profile[k].h, round);
    arrivals[k] = goto_meeting(i, profile[k].z, round);
  }
  double tc = *std::max_element(arrivals.begin(), arrivals.end());
  if (tc >= rec.window_end) {
    log::warn("round ", round, ": realized meeting time ", tc,
              " spilled past its window end ", rec.window_end);
  }
  for (int i : who) hold_until(i, tc + sc_->comm.Dc);
  rec.connected = comm_window(who, tc, round);
  rec.arrivals = std::move(arrivals);
  rec.t_c = tc;
  return tc + sc_->comm.Dc;
}

bool SimEngine::comm_window(const std::vector<int>& who, double t0, int round) {
  events_.push_back(Event{EventType::CommStart, t0, -1, round, Cell{}, Cell{},
                          "", "", sc_->comm.Dc});
  std::vector<Cell> pts;
  for (int i : who) pts.push_back(rt_[i].pos);
  ConsensusGraph g = make_consensus_graph(sc_->ws, pts, sc_->comm.range);
  std::vector<double> x;
  for (int i : who) x.push_back(rt_[i].estimate);
  int steps = static_cast<int>(std::floor(sc_->comm.Dc * 10.0 + 1e-9));
  for (int k = 1; k <= steps; ++k) {
    double t = t0 + k * 0.1;
    consensus_round(x, g);
    for (std::size_t w = 0; w < who.size(); ++w) {
      rt_[who[w]].estimate = x[w];
      rt_[who[w]].history.push_back({t, x[w]});
    }
  }
  events_.push_back(Event{EventType::CommEnd, t0 + sc_->comm.Dc, -1, round,
                          Cell{}, Cell{}, "", "", sc_->comm.Dc});
  return g.connected;
}

void SimEngine::comm_continuous(const std::vector<int>& who, double t0,
                                double t1) {
  std::vector<Cell> pts;
  for (int i : who) pts.push_back(rt_[i].pos);
  ConsensusGraph g = make_consensus_graph(sc_->ws, pts, sc_->comm.range);
  long long k = static_cast<long long>(std::floor(t0 / 0.1)) + 1;
  for (; k * 0.1 <= t1; ++k) {
    double t = k * 0.1;
    if (t <= t0) continue;
    std::vector<double> x;
    for (int i : who) x.push_back(rt_[i].estimate);
    consensus_round(x, g);
    for (std::size_t w = 0; w < who.size(); ++w) {
      rt_[who[w]].estimate = x[w];
      rt_[who[w]].history.push_back({t, x[w]});
    }
  }
}

void SimEngine::mirror_phases(int follower, int source,
                              std::size_t from_index) {
  AgentRt& f = rt_[follower];
  const AgentRt& s = rt_[source];
  for (std::size_t k = from_index; k < s.phases.size(); ++k) {
    f.phases.push_back(s.phases[k]);
  }
  f.pos = s.pos;
  f.clock = s.clock;
}

AgentTimeline SimEngine::project(int i, double window_end) const {
  const AgentRt& a = rt_[i];
  const UnrolledPlan& pat = a.pa->pattern;
  AgentTimeline tl;
  tl.first_h = a.min_divert;

  // Before the first rendezvous the agent sits on its pattern and may divert
  // right away; afterwards it must rejoin the plan for one step first.
  if (a.min_divert == a.next_step - 1) {
    tl.options.push_back(
        AgentTimeline::Option{a.pos, pat.step(a.next_step).cell, a.clock});
  }
  TravelOracle& tr = *a.pa->travel;
  double t = a.clock;
  Cell pos = a.pos;
  for (long long j = a.next_step;; ++j) {
    const UnrolledPlan::StepInfo& si = pat.step(j);
    if (si.cell != pos) t += tr.time(pos, si.cell);
    t += si.action_duration;
    pos = si.cell;
    if (t >= window_end) break;
    tl.options.push_back(AgentTimeline::Option{pos, pat.step(j + 1).cell, t});
  }
  return tl;
}

GameContext SimEngine::make_context(const std::vector<int>& who,
                                    double window_start,
                                    double window_end) const {
  GameContext ctx;
  ctx.ws = &sc_->ws;
  ctx.range = sc_->comm.range;
  ctx.window_start = window_start;
  ctx.window_end = window_end;
  for (int i : who) {
    ctx.travel.push_back(rt_[i].pa->travel.get());
    ctx.timelines.push_back(project(i, window_end));
  }
  return ctx;
}

void SimEngine::record_round(RoundRecord r) { rounds_.push_back(std::move(r)); }

Point SimEngine::position_at(int i, double t) const {
  const AgentRt& a = rt_[i];
  if (a.phases.empty() || t < a.phases.front().t0) {
    return sc_->ws.center(a.pa->spec.start);
  }
  std::size_t lo = 0, hi = a.phases.size();
  while (lo + 1 < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (a.phases[mid].t0 <= t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const MotionPhase& ph = a.phases[lo];
  if (t >= ph.t1) return ph.p1;
  if (ph.p0.x == ph.p1.x && ph.p0.y == ph.p1.y) return ph.p0;
  double s = (t - ph.t0) / (ph.t1 - ph.t0);
  return Point{ph.p0.x + s * (ph.p1.x - ph.p0.x),
               ph.p0.y + s * (ph.p1.y - ph.p0.y)};
}

RunResult SimEngine::finish(double horizon) {
  const int n = players();
  for (int i = 0; i < n; ++i) hold_until(i, horizon);

  RunResult res;
  res.horizon = horizon;

  std::stable_sort(events_.begin(), events_.end(),
                   [](const Event& a, const Event& b) {
                     if (a.t != b.t) return a.t < b.t;
                     int ra = event_rank(a.type), rb = event_rank(b.type);
                     if (ra != rb) return ra < rb;
                     return a.agent < b.agent;
                   });
  res.events = std::move(events_);

  // Connectivity on the tick grid plus every event boundary.
  std::vector<double> times;
  for (double t = 0.0; t <= horizon + 1e-12; t += opt_.tick) times.push_back(t);
  for (const Event& e : res.events) {
    if (e.t <= horizon) times.push_back(e.t);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  for (double t : times) {
    ConnectivitySample s;
    s.t = t;
    std::vector<Point> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) pts.push_back(position_at(i, t));
    UnionFind uf(n);
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (point_distance(pts[a], pts[b]) <= sc_->comm.range) {
          s.edges.push_back({a, b});
          uf.unite(a, b);
        }
      }
    }
    s.connected = uf.all_one();
    res.connectivity.samples.push_back(std::move(s));
  }
  bool open = false;
  double start = 0.0, last = 0.0;
  for (const ConnectivitySample& s : res.connectivity.samples) {
    if (s.connected && !open) {
      open = true;
      start = s.t;
    }
    if (!s.connected && open) {
      open = false;
      res.connectivity.intervals.push_back({start, last});
    }
    last = s.t;
  }
  if (open) res.connectivity.intervals.push_back({start, last});

  // Estimate rows: every recorded update plus a 1 Hz held-value cadence; the
  // cadence also drives the deviation metrics so stale estimates weigh in
  // for as long as they are held, not once per update.
  for (int i = 0; i < n; ++i) {
    const auto& hist = rt_[i].history;
    for (const auto& [t, v] : hist) {
      res.api.push_back(ApiSample{t, i, v, truth(sc_->signal, t)});
    }
    std::vector<double> errors;
    std::size_t k = 0;
    double held = hist.front().second;
    for (double t = 0.0; t <= horizon + 1e-12; t += 1.0) {
      while (k < hist.size() && hist[k].first <= t) held = hist[k++].second;
      double tr = truth(sc_->signal, t);
      res.api.push_back(ApiSample{t, i, held, tr});
      errors.push_back(held - tr);
    }

    AgentResult ar;
    ar.agent = i;
    ar.plan_prefix_cost = rt_[i].pa->plan.prefix_cost;
    ar.plan_cycle_cost = rt_[i].pa->plan.cycle_cost;
    ar.satisfaction = rt_[i].satisfaction;
    ar.makespan = realized_makespan(ar.satisfaction);
    ar.deviation = deviation_metrics(errors);
    res.agents.push_back(std::move(ar));
  }
  std::sort(res.api.begin(), res.api.end(),
            [](const ApiSample& a, const ApiSample& b) {
              if (a.t != b.t) return a.t < b.t;
              return a.agent < b.agent;
            });

  res.rounds = std::move(rounds_);
  return res;
}

RunResult run_simulation(const Scenario& sc, std::vector<PlannedAgent>& agents,
                         const RunOptions& opt) {
  SimEngine eng(sc, agents, opt);
  const int n = eng.players();

  if (sc.rounds == 0) {
    double horizon = opt.horizon;
    if (horizon <= 0.0) {
      for (const PlannedAgent& pa : agents) {
        horizon =
            std::max(horizon, pa.plan.prefix_cost + 5.0 * pa.plan.cycle_cost);
      }
    }
    for (int i = 0; i < n; ++i) {
      while (eng.clock(i) < horizon) {
        eng.advance_plan(i, eng.next_step(i), -1);
      }
    }
    return eng.finish(horizon);
  }

  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);

  double last_end = 0.0;
  for (int r = 0; r < sc.rounds; ++r) {
    double ws = r * sc.comm.Tc;
    double we = (r + 1) * sc.comm.Tc;

    auto wall0 = std::chrono::steady_clock::now();
    GameContext ctx = eng.make_context(all, ws, we);
    std::vector<Strategy> Z0 = initial_strategy(ctx);
    NashResult nr = nash_iterate(ctx, Z0, sc.game.max_iters, opt.reduce);
    double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0)
            .count();
    Evaluation ev = evaluate(ctx, nr.profile);

    RoundRecord rec;
    rec.round = r;
    rec.participants = all;
    rec.window_start = ws;
    rec.window_end = we;
    rec.profile = nr.profile;
    rec.phi = ev.phi;
    rec.xi = ev.xi;
    rec.iterations = nr.iterations;
    rec.converged = nr.converged;
    rec.trace = nr.trace;
    rec.wall_seconds = wall;

    last_end = eng.execute_meeting(all, nr.profile, r, rec);
    eng.record_round(std::move(rec));
  }
  return eng.finish(last_end);
}

}  // namespace macoord
