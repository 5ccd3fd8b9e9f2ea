#include "macoord/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "macoord/errors.hpp"

namespace macoord {

namespace {

std::vector<int> everyone(int n) {
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  return all;
}

double wall_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

RunResult run_static(const Scenario& sc, std::vector<PlannedAgent>& agents,
                     const RunOptions& opt) {
  SimEngine eng(sc, agents, opt);
  const int n = eng.players();
  std::vector<int> all = everyone(n);

  std::vector<Cell> cells(n);
  for (int i = 0; i < n; ++i) cells[i] = agents[i].spec.start;

  double last_end = 0.0;
  for (int r = 0; r < sc.rounds; ++r) {
    double ws = r * sc.comm.Tc;
    double we = (r + 1) * sc.comm.Tc;

    auto wall0 = std::chrono::steady_clock::now();
    GameContext ctx = eng.make_context(all, ws, we);
    MeetingSchedule ms = schedule_meeting(ctx, cells);
    if (!ms.ok) {
      std::vector<int> blocking;
      for (int i = 0; i < n; ++i) {
        if (!ms.has_option[i]) blocking.push_back(i);
      }
      if (blocking.empty()) blocking = all;
      throw InfeasibleError(
          "fixed rendezvous points are unreachable in the window", blocking,
          r);
    }
    double wall = wall_since(wall0);
    Evaluation ev = evaluate(ctx, ms.profile);

    RoundRecord rec;
    rec.round = r;
    rec.participants = all;
    rec.window_start = ws;
    rec.window_end = we;
    rec.profile = ms.profile;
    rec.phi = ev.phi;
    rec.xi = ev.xi;
    rec.iterations = 0;
    rec.converged = true;
    rec.wall_seconds = wall;

    last_end = eng.execute_meeting(all, ms.profile, r, rec);
    eng.record_round(std::move(rec));
  }
  return eng.finish(last_end);
}

RunResult run_pairwise(const Scenario& sc, std::vector<PlannedAgent>& agents,
                       const RunOptions& opt) {
  const int n = static_cast<int>(agents.size());
  if (n < 2) {
    throw ValidationError("pairwise scheme needs at least two agents");
  }
  SimEngine eng(sc, agents, opt);

  struct Meeting {
    double start = 0.0;
    int pair = 0;
    int round = 0;
  };
  std::vector<Meeting> meetings;
  for (int r = 0; r < sc.rounds; ++r) {
    for (int p = 0; p + 1 < n; ++p) {
      double offset = (p % 2) * (sc.comm.Tc / 2.0);
      meetings.push_back(Meeting{r * sc.comm.Tc + offset, p, r});
    }
  }
  std::sort(meetings.begin(), meetings.end(),
            [](const Meeting& a, const Meeting& b) {
              if (a.start != b.start) return a.start < b.start;
              return a.pair < b.pair;
            });

  double last_end = 0.0;
  for (const Meeting& m : meetings) {
    std::vector<int> who{m.pair, m.pair + 1};
    double ws = m.start;
    double we = m.start + sc.comm.Tc;

    auto wall0 = std::chrono::steady_clock::now();
    GameContext ctx = eng.make_context(who, ws, we);
    std::vector<Strategy> Z0;
    try {
      Z0 = initial_strategy(ctx);
    } catch (const InfeasibleError& e) {
      std::vector<int> blocking;
      for (int local : e.agents()) blocking.push_back(who[local]);
      throw InfeasibleError(e.what(), blocking, m.round);
    }
    NashResult nr = nash_iterate(ctx, Z0, sc.game.max_iters, opt.reduce);
    double wall = wall_since(wall0);
    Evaluation ev = evaluate(ctx, nr.profile);

    RoundRecord rec;
    rec.round = m.round;
    rec.participants = who;
    rec.window_start = ws;
    rec.window_end = we;
    rec.profile = nr.profile;
    rec.phi = ev.phi;
    rec.xi = ev.xi;
    rec.iterations = nr.iterations;
    rec.converged = nr.converged;
    rec.trace = nr.trace;
    for (TraceEntry& te : rec.trace) te.mover = who[te.mover];
    rec.wall_seconds = wall;

    double end = eng.execute_meeting(who, nr.profile, m.round, rec);
    eng.record_round(std::move(rec));
    last_end = std::max(last_end, end);
  }
  return eng.finish(last_end);
}

RunResult run_alltime(const Scenario& sc, std::vector<PlannedAgent>& agents,
                      const RunOptions& opt) {
  SimEngine eng(sc, agents, opt);
  const int n = eng.players();
  std::vector<int> all = everyone(n);
  double horizon = sc.rounds * sc.comm.Tc;

  Cell base = eng.position(0);
  for (int i = 1; i < n; ++i) eng.travel_to(i, base, -1);
  double formed = 0.0;
  for (int i = 0; i < n; ++i) formed = std::max(formed, eng.clock(i));
  for (int i = 0; i < n; ++i) eng.hold_until(i, formed);

  for (int turn = 0;; ++turn) {
    int active = turn % n;
    if (eng.clock(active) >= horizon) break;

    std::size_t mark = eng.phases(active).size();
    double t0 = eng.clock(active);
    const UnrolledPlan& pat = agents[active].pattern;
    long long guard = pat.anchor() + pat.cycle_len() + 2;
    while (eng.clock(active) == t0 && guard-- > 0) {
      eng.advance_plan(active, eng.next_step(active), -1);
    }
    if (eng.clock(active) == t0) {
      throw Error("internal: plan of agent " + std::to_string(active) +
                  " made no time progress over a full cycle");
    }
    for (int i = 0; i < n; ++i) {
      if (i != active) eng.mirror_phases(i, active, mark);
    }
    eng.comm_continuous(all, t0, eng.clock(active));
  }
  return eng.finish(horizon);
}

RunResult run_scenario(const Scenario& sc, std::vector<PlannedAgent>& agents,
                       const RunOptions& opt) {
  if (sc.rounds == 0 || sc.baseline == BaselineKind::None) {
    return run_simulation(sc, agents, opt);
  }
  switch (sc.baseline) {
    case BaselineKind::Static:
      return run_static(sc, agents, opt);
    case BaselineKind::PairWise:
      return run_pairwise(sc, agents, opt);
    case BaselineKind::AllTime:
      return run_alltime(sc, agents, opt);
    default:
      return run_simulation(sc, agents, opt);
  }
}

}  // namespace macoord
