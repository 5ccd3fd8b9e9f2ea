#include "macoord/consensus.hpp"

#include <cmath>

namespace macoord {

double truth(const SignalSpec& sig, double t) {
  if (sig.knots.empty()) return 0.0;
  if (t <= sig.knots.front().first) return sig.knots.front().second;
  if (t >= sig.knots.back().first) return sig.knots.back().second;
  for (std::size_t k = 1; k < sig.knots.size(); ++k) {
    if (t > sig.knots[k].first) continue;
    auto [t0, v0] = sig.knots[k - 1];
    auto [t1, v1] = sig.knots[k];
    if (t1 == t0) return v1;
    return v0 + (v1 - v0) * ((t - t0) / (t1 - t0));
  }
  return sig.knots.back().second;
}

double phase_of(const SignalSpec& sig, int i, int n) {
  if (i < static_cast<int>(sig.phases.size())) return sig.phases[i];
  return 2.0 * std::numbers::pi * i / n;
}

double measure(const SignalSpec& sig, int i, int n, double t) {
  return truth(sig, t) +
         sig.magnitude * std::sin(sig.freq * t + phase_of(sig, i, n));
}

ConsensusGraph make_consensus_graph(const Workspace& ws,
                                    const std::vector<Cell>& pts,
                                    double range) {
  ConsensusGraph g;
  g.n = static_cast<int>(pts.size());
  g.adj.assign(static_cast<std::size_t>(g.n) * g.n, 0);
  for (int a = 0; a < g.n; ++a) {
    for (int b = a + 1; b < g.n; ++b) {
      if (ws.distance(pts[a], pts[b]) <= range) {
        g.adj[static_cast<std::size_t>(a) * g.n + b] = 1;
        g.adj[static_cast<std::size_t>(b) * g.n + a] = 1;
      }
    }
  }
  for (int a = 0; a < g.n; ++a) {
    int deg = 0;
    for (int b = 0; b < g.n; ++b) deg += g.adj[static_cast<std::size_t>(a) * g.n + b];
    g.max_degree = std::max(g.max_degree, deg);
  }
  // Reachability from node 0 decides connectedness.
  std::vector<char> seen(g.n, 0);
  std::vector<int> stack;
  if (g.n > 0) {
    seen[0] = 1;
    stack.push_back(0);
  }
  while (!stack.empty()) {
    int a = stack.back();
    stack.pop_back();
    for (int b = 0; b < g.n; ++b) {
      if (g.edge(a, b) && !seen[b]) {
        seen[b] = 1;
        stack.push_back(b);
      }
    }
  }
  for (int a = 0; a < g.n; ++a) {
    if (!seen[a]) g.connected = false;
  }
  return g;
}

void consensus_round(std::vector<double>& x, const ConsensusGraph& g,
                     double eps) {
  if (g.max_degree == 0) return;
  std::vector<double> delta(x.size(), 0.0);
  for (int a = 0; a < g.n; ++a) {
    double acc = 0.0;
    for (int b = 0; b < g.n; ++b) {
      if (g.edge(a, b)) acc += x[b] - x[a];
    }
    delta[a] = eps * acc;
  }
  for (int a = 0; a < g.n; ++a) x[a] += delta[a];
}

void consensus_round(std::vector<double>& x, const ConsensusGraph& g) {
  if (g.max_degree == 0) return;
  consensus_round(x, g, 0.4 / g.max_degree);
}

DeviationMetrics deviation_metrics(const std::vector<double>& errors) {
  DeviationMetrics m;
  if (errors.empty()) return m;
  double sq = 0.0;
  for (double e : errors) {
    m.max_abs = std::max(m.max_abs, std::abs(e));
    sq += e * e;
  }
  m.rms = std::sqrt(sq / errors.size());
  return m;
}

}  // namespace macoord
