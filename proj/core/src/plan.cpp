#include "macoord/plan.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>

#include <json.hpp>

#include "macoord/errors.hpp"
#include "macoord/lasso.hpp"

namespace macoord {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct DijkstraOut {
  std::vector<double> dist;
  std::vector<int> parent;
  std::vector<double> parent_cost;
};

// Smallest (dist, node) first; the node id in the key plus strict-improvement
// relaxation make the tree (and every accumulated sum) reproducible.
DijkstraOut dijkstra(const Product& p, const std::vector<int>& sources) {
  DijkstraOut out;
  const int n = static_cast<int>(p.states.size());
  out.dist.assign(n, kInf);
  out.parent.assign(n, -1);
  out.parent_cost.assign(n, 0.0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  for (int s : sources) {
    if (out.dist[s] == 0.0) continue;
    out.dist[s] = 0.0;
    pq.push({0.0, s});
  }
  std::vector<char> done(n, 0);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (const ProductEdge& e : p.edges[u]) {
      double nd = d + e.cost;
      if (nd < out.dist[e.target]) {
        out.dist[e.target] = nd;
        out.parent[e.target] = u;
        out.parent_cost[e.target] = e.cost;
        pq.push({nd, e.target});
      }
    }
  }
  return out;
}

std::vector<int> walk_parents(const DijkstraOut& d, int to) {
  std::vector<int> states;
  for (int v = to; v != -1; v = d.parent[v]) states.push_back(v);
  std::reverse(states.begin(), states.end());
  return states;
}

PlanStep make_step(const TransitionSystem& ts, const Product& p, int pstate,
                   double cost) {
  const TsState& s = ts.states[p.states[pstate].ts_state];
  return PlanStep{pstate, p.states[pstate].ts_state, s.region, s.action,
                  s.cell, cost};
}

}  // namespace

Plan synthesize_plan(const TransitionSystem& ts, const Product& product,
                     int agent) {
  const int n = static_cast<int>(product.states.size());
  auto fail = [&](const std::string& msg) -> InfeasibleError {
    std::vector<int> who;
    if (agent >= 0) who.push_back(agent);
    return InfeasibleError(msg, who);
  };
  if (product.initial.empty()) throw fail("task product has no initial state");

  DijkstraOut prefix = dijkstra(product, product.initial);

  std::vector<std::vector<std::pair<int, double>>> in_edges(n);
  for (int u = 0; u < n; ++u) {
    for (const ProductEdge& e : product.edges[u]) {
      in_edges[e.target].push_back({u, e.cost});
    }
  }

  int best_f = -1, best_y = -1;
  double best_cycle = kInf, best_prefix = kInf;
  for (int f = 0; f < n; ++f) {
    if (!product.accepting[f] || prefix.dist[f] == kInf) continue;
    DijkstraOut back = dijkstra(product, {f});
    int y_pick = -1;
    double cycle = kInf;
    for (const auto& [y, c] : in_edges[f]) {
      if (back.dist[y] == kInf) continue;
      double total = back.dist[y] + c;
      if (total < cycle) {
        cycle = total;
        y_pick = y;
      }
    }
    if (y_pick < 0) continue;
    if (cycle < best_cycle ||
        (cycle == best_cycle && prefix.dist[f] < best_prefix)) {
      best_cycle = cycle;
      best_prefix = prefix.dist[f];
      best_f = f;
      best_y = y_pick;
    }
  }
  if (best_f < 0) throw fail("no recurrent accepting behavior is reachable");
  if (best_cycle <= 1e-12) {
    throw fail("recurring behavior has zero duration");
  }

  Plan plan;
  plan.prefix_cost = prefix.dist[best_f];
  plan.cycle_cost = best_cycle;

  for (int v : walk_parents(prefix, best_f)) {
    plan.prefix.push_back(
        make_step(ts, product, v, prefix.parent[v] == -1 ? 0.0
                                                         : prefix.parent_cost[v]));
  }

  DijkstraOut back = dijkstra(product, {best_f});
  std::vector<int> tail = walk_parents(back, best_y);
  for (std::size_t i = 1; i < tail.size(); ++i) {
    plan.cycle.push_back(make_step(ts, product, tail[i], back.parent_cost[tail[i]]));
  }
  double close_cost = 0.0;
  for (const auto& [y, c] : in_edges[best_f]) {
    if (y == best_y) {
      close_cost = c;
      break;
    }
  }
  plan.cycle.push_back(make_step(ts, product, best_f, close_cost));
  return plan;
}

bool plan_satisfies(const Plan& plan, const TransitionSystem& ts,
                    const Nba& nba) {
  Lasso word;
  for (std::size_t i = 1; i < plan.prefix.size(); ++i) {
    word.prefix.push_back(ts.labels[plan.prefix[i].ts_state]);
  }
  for (const PlanStep& s : plan.cycle) {
    word.cycle.push_back(ts.labels[s.ts_state]);
  }
  return nba_accepts_lasso(nba, word);
}

std::string plan_json(const Plan& plan, const TransitionSystem& ts) {
  using nlohmann::json;
  auto steps = [&](const std::vector<PlanStep>& v) {
    json arr = json::array();
    for (const PlanStep& s : v) {
      json j;
      j["region"] = s.region >= 0 ? json(ts.regions[s.region]) : json(nullptr);
      j["action"] = ts.actions[s.action];
      j["cell"] = {s.cell.col, s.cell.row};
      j["cost"] = s.cost;
      arr.push_back(std::move(j));
    }
    return arr;
  };
  json j;
  j["prefix_cost"] = plan.prefix_cost;
  j["cycle_cost"] = plan.cycle_cost;
  j["prefix"] = steps(plan.prefix);
  j["cycle"] = steps(plan.cycle);
  return j.dump(2);
}

}  // namespace macoord
