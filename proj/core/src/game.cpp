#include "macoord/game.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "macoord/errors.hpp"

namespace macoord {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Union-find over a handful of points.
struct Components {
  std::vector<int> parent;
  explicit Components(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  bool connected() {
    for (std::size_t i = 1; i < parent.size(); ++i) {
      if (find(static_cast<int>(i)) != find(0)) return false;
    }
    return true;
  }
};

bool points_connected(const Workspace& ws, const std::vector<Cell>& pts,
                      double range) {
  if (pts.empty()) return true;
  Components comp(static_cast<int>(pts.size()));
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      if (ws.distance(pts[a], pts[b]) <= range) {
        comp.unite(static_cast<int>(a), static_cast<int>(b));
      }
    }
  }
  return comp.connected();
}

// Free cells drivable from seed.  Meeting points outside this component can
// never be reached, so the searches below must not offer them.
std::vector<char> reachable_mask(const Workspace& ws, Cell seed) {
  std::vector<char> seen(static_cast<std::size_t>(ws.cols) * ws.rows, 0);
  if (!ws.is_free(seed)) return seen;
  std::vector<Cell> stack{seed};
  seen[static_cast<std::size_t>(seed.row) * ws.cols + seed.col] = 1;
  while (!stack.empty()) {
    Cell c = stack.back();
    stack.pop_back();
    const Cell nbrs[4] = {{c.col, c.row - 1},
                          {c.col - 1, c.row},
                          {c.col + 1, c.row},
                          {c.col, c.row + 1}};
    for (const Cell& nb : nbrs) {
      if (!ws.is_free(nb)) continue;
      char& flag = seen[static_cast<std::size_t>(nb.row) * ws.cols + nb.col];
      if (flag) continue;
      flag = 1;
      stack.push_back(nb);
    }
  }
  return seen;
}

}  // namespace

double additional_time(const GameContext& ctx, int i, const Strategy& s) {
  const AgentTimeline::Option& o = ctx.timelines[i].option(s.h);
  TravelOracle& tr = *ctx.travel[i];
  return tr.time(o.from, s.z) + tr.time(s.z, o.to) - tr.time(o.from, o.to);
}

double arrival_time(const GameContext& ctx, int i, const Strategy& s) {
  const AgentTimeline::Option& o = ctx.timelines[i].option(s.h);
  return o.complete + ctx.travel[i]->time(o.from, s.z);
}

Evaluation evaluate(const GameContext& ctx, const std::vector<Strategy>& Z) {
  Evaluation ev;
  const int n = ctx.players();
  ev.delta.resize(n);
  ev.arrival.resize(n);
  ev.xi.resize(n);
  ev.t_c = -kInf;
  for (int i = 0; i < n; ++i) {
    ev.delta[i] = additional_time(ctx, i, Z[i]);
    ev.arrival[i] = arrival_time(ctx, i, Z[i]);
    ev.t_c = std::max(ev.t_c, ev.arrival[i]);
  }
  ev.phi = 0.0;
  for (int i = 0; i < n; ++i) {
    ev.xi[i] = ev.delta[i] + (ev.t_c - ev.arrival[i]);
    ev.phi += ev.xi[i];
  }
  return ev;
}

double potential(const GameContext& ctx, const std::vector<Strategy>& Z) {
  return evaluate(ctx, Z).phi;
}

double cost(const GameContext& ctx, int i, const std::vector<Strategy>& Z) {
  Evaluation ev = evaluate(ctx, Z);
  return ev.delta[i] + ctx.players() * ev.t_c - ev.arrival[i];
}

MeetingSchedule schedule_meeting(const GameContext& ctx,
                                 const std::vector<Cell>& cells) {
  const int n = ctx.players();

  struct Opt {
    double psi = 0.0;   // delta - arrival
    double t = 0.0;     // arrival
    long long h = 0;
  };

  MeetingSchedule out;
  out.has_option.assign(n, 0);

  std::vector<std::vector<Opt>> opts(n);
  std::vector<double> taus;
  bool all_have = true;
  for (int i = 0; i < n; ++i) {
    const AgentTimeline& tl = ctx.timelines[i];
    for (std::size_t k = 0; k < tl.options.size(); ++k) {
      long long h = tl.first_h + static_cast<long long>(k);
      Strategy s{cells[i], h};
      double t = arrival_time(ctx, i, s);
      if (t >= ctx.window_end) continue;
      opts[i].push_back(Opt{additional_time(ctx, i, s) - t, t, h});
      if (t >= ctx.window_start) taus.push_back(t);
    }
    if (opts[i].empty()) {
      all_have = false;
      continue;
    }
    out.has_option[i] = 1;
    std::sort(opts[i].begin(), opts[i].end(), [](const Opt& a, const Opt& b) {
      if (a.t != b.t) return a.t < b.t;
      return a.h < b.h;
    });
  }
  if (!all_have) return out;
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());

  double best_value = kInf;
  std::vector<long long> best_picks;

  // Sweep candidate meeting times in increasing order, keeping for every
  // player its cheapest option arriving by the current candidate.
  std::vector<Opt> pick(n, Opt{kInf, kInf, 0});
  std::vector<std::size_t> ptr(n, 0);
  std::vector<Opt> exact(n);
  std::vector<char> has_exact(n);
  for (double tau : taus) {
    for (int i = 0; i < n; ++i) {
      has_exact[i] = 0;
      while (ptr[i] < opts[i].size() && opts[i][ptr[i]].t <= tau) {
        const Opt& o = opts[i][ptr[i]];
        if (o.psi < pick[i].psi) pick[i] = o;
        if (o.t == tau && (!has_exact[i] || o.psi < exact[i].psi)) {
          exact[i] = o;
          has_exact[i] = 1;
        }
        ++ptr[i];
      }
    }
    bool all_picked = true;
    double sum_psi = 0.0, m = -kInf;
    for (int i = 0; i < n; ++i) {
      if (pick[i].psi == kInf) {
        all_picked = false;
        break;
      }
      sum_psi += pick[i].psi;
      m = std::max(m, pick[i].t);
    }
    if (!all_picked) continue;

    if (m >= ctx.window_start) {
      double value = sum_psi + n * m;
      if (value < best_value) {
        best_value = value;
        best_picks.clear();
        for (int i = 0; i < n; ++i) best_picks.push_back(pick[i].h);
      }
    } else {
      // Nobody naturally arrives inside the window yet; pin one player's
      // arrival to exactly tau so the meeting time is valid.
      for (int j = 0; j < n; ++j) {
        if (!has_exact[j]) continue;
        double value = sum_psi - pick[j].psi + exact[j].psi + n * tau;
        if (value < best_value) {
          best_value = value;
          best_picks.clear();
          for (int i = 0; i < n; ++i) {
            best_picks.push_back(i == j ? exact[j].h : pick[i].h);
          }
        }
      }
    }
  }

  if (best_picks.empty()) return out;
  out.ok = true;
  out.value = best_value;
  for (int i = 0; i < n; ++i) {
    out.profile.push_back(Strategy{cells[i], best_picks[i]});
  }
  return out;
}

std::vector<Strategy> initial_strategy(const GameContext& ctx) {
  const int n = ctx.players();

  std::vector<char> ever_feasible(n, 0);
  double best_value = kInf;
  std::vector<Strategy> best;

  // Every player starts from a cell of the same drivable component, so one
  // mask (seeded from player 0's divert origin) covers the whole team.
  std::vector<char> reach(static_cast<std::size_t>(ctx.ws->cols) * ctx.ws->rows,
                          1);
  if (n > 0 && !ctx.timelines[0].options.empty()) {
    reach = reachable_mask(*ctx.ws, ctx.timelines[0].options.front().from);
  }

  std::vector<Cell> cells(n);
  for (const Cell& zc : ctx.ws->free_cells()) {
    if (!reach[static_cast<std::size_t>(zc.row) * ctx.ws->cols + zc.col]) {
      continue;
    }
    std::fill(cells.begin(), cells.end(), zc);
    MeetingSchedule ms = schedule_meeting(ctx, cells);
    for (int i = 0; i < n; ++i) {
      if (ms.has_option[i]) ever_feasible[i] = 1;
    }
    if (ms.ok && ms.value < best_value) {
      best_value = ms.value;
      best = std::move(ms.profile);
    }
  }

  if (best.empty()) {
    std::vector<int> blocking;
    for (int i = 0; i < n; ++i) {
      if (!ever_feasible[i]) blocking.push_back(i);
    }
    if (blocking.empty()) {
      for (int i = 0; i < n; ++i) blocking.push_back(i);
    }
    throw InfeasibleError("no shared meeting point is reachable in the window",
                          blocking);
  }
  return best;
}

std::vector<Cell> candidate_region(const GameContext& ctx, int i,
                                   const std::vector<Strategy>& Z) {
  const Workspace& ws = *ctx.ws;
  std::vector<Cell> out;
  std::vector<Cell> pts;
  for (int j = 0; j < ctx.players(); ++j) {
    if (j != i) pts.push_back(Z[j].z);
  }
  std::vector<char> reach = reachable_mask(ws, Z[i].z);
  pts.push_back(Z[i].z);  // placeholder, replaced per candidate
  for (const Cell& z : ws.free_cells()) {
    if (ws.distance(z, Z[i].z) > ctx.range) continue;
    if (!reach[static_cast<std::size_t>(z.row) * ws.cols + z.col]) continue;
    pts.back() = z;
    if (!points_connected(ws, pts, ctx.range)) continue;
    out.push_back(z);
  }
  return out;
}

namespace {

// sigma of player i switching to s, given the fixed arrivals of the others.
// Returns +inf when the switched meeting time leaves the window.
double deviation_sigma(const GameContext& ctx, int i, const Strategy& s,
                       double max_other_arrival, double u_current) {
  double t = arrival_time(ctx, i, s);
  double tc = std::max(max_other_arrival, t);
  if (tc < ctx.window_start || tc >= ctx.window_end) return kInf;
  double u = additional_time(ctx, i, s) + ctx.players() * tc - t;
  return u - u_current;
}

double max_other(const GameContext& ctx, const std::vector<Strategy>& Z,
                 int skip) {
  double m = -kInf;
  for (int j = 0; j < ctx.players(); ++j) {
    if (j != skip) m = std::max(m, arrival_time(ctx, j, Z[j]));
  }
  return m;
}

}  // namespace

BestResponse best_response(const GameContext& ctx, int i,
                           const std::vector<Strategy>& Z) {
  const Workspace& ws = *ctx.ws;
  double others = max_other(ctx, Z, i);
  double u_cur = cost(ctx, i, Z);

  std::vector<Cell> cand = candidate_region(ctx, i, Z);
  std::stable_sort(cand.begin(), cand.end(), [&](const Cell& a, const Cell& b) {
    return ws.distance(a, Z[i].z) < ws.distance(b, Z[i].z);
  });

  BestResponse best{Z[i], 0.0};
  const AgentTimeline& tl = ctx.timelines[i];
  for (const Cell& z : cand) {
    for (std::size_t k = 0; k < tl.options.size(); ++k) {
      Strategy s{z, tl.first_h + static_cast<long long>(k)};
      double sigma = deviation_sigma(ctx, i, s, others, u_cur);
      if (sigma < best.sigma) {
        best.sigma = sigma;
        best.strategy = s;
      }
    }
  }
  return best;
}

NashResult nash_iterate(const GameContext& ctx, std::vector<Strategy> Z,
                        int max_iters, ReduceMode mode) {
  NashResult res;
  const int n = ctx.players();
  for (int it = 1; it <= max_iters; ++it) {
    std::vector<BestResponse> props;
    props.reserve(n);
    for (int i = 0; i < n; ++i) props.push_back(best_response(ctx, i, Z));

    int winner = 0;
    if (mode == ReduceMode::Direct) {
      for (int i = 1; i < n; ++i) {
        if (props[i].sigma < props[winner].sigma) winner = i;
      }
    } else {
      // Min-reduction gossip: every sweep each player keeps the smallest
      // (sigma, id) among itself and its meeting-point neighbors.  After n
      // sweeps all players of a connected graph agree on the global winner.
      std::vector<std::pair<double, int>> v(n);
      for (int i = 0; i < n; ++i) v[i] = {props[i].sigma, i};
      for (int sweep = 0; sweep < n; ++sweep) {
        std::vector<std::pair<double, int>> next = v;
        for (int a = 0; a < n; ++a) {
          for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            if (ctx.ws->distance(Z[a].z, Z[b].z) <= ctx.range) {
              next[a] = std::min(next[a], v[b]);
            }
          }
        }
        v = std::move(next);
      }
      winner = v[0].second;
    }

    if (!(props[winner].sigma < 0.0)) {
      res.converged = true;
      break;
    }
    Z[winner] = props[winner].strategy;
    TraceEntry entry;
    entry.iteration = it;
    entry.mover = winner;
    entry.sigma = props[winner].sigma;
    entry.phi_after = potential(ctx, Z);
    entry.profile = Z;
    res.trace.push_back(std::move(entry));
  }
  res.iterations = static_cast<int>(res.trace.size());
  res.profile = std::move(Z);
  return res;
}

bool is_nash(const GameContext& ctx, const std::vector<Strategy>& Z,
             double tolerance, long long cap) {
  long long count = 0;
  for (int i = 0; i < ctx.players(); ++i) {
    double others = max_other(ctx, Z, i);
    double u_cur = cost(ctx, i, Z);
    const AgentTimeline& tl = ctx.timelines[i];
    for (const Cell& z : candidate_region(ctx, i, Z)) {
      for (std::size_t k = 0; k < tl.options.size(); ++k) {
        if (++count > cap) {
          throw ResourceLimitError("deviation check exceeded " +
                                   std::to_string(cap) + " evaluations");
        }
        Strategy s{z, tl.first_h + static_cast<long long>(k)};
        double sigma = deviation_sigma(ctx, i, s, others, u_cur);
        if (sigma == kInf) continue;
        if (sigma < -tolerance) return false;
      }
    }
  }
  return true;
}

}  // namespace macoord
