#pragma once

#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "macoord/cell.hpp"
#include "macoord/workspace.hpp"

namespace macoord {

// Scalar field the team estimates: a piecewise-linear ground truth plus a
// per-agent sinusoidal measurement disturbance.
struct SignalSpec {
  std::vector<std::pair<double, double>> knots;  // (t, value), t ascending
  double magnitude = 1.0;
  double freq = std::numbers::pi / 6000.0;
  std::vector<double> phases;  // empty: phase of agent i is 2*pi*i/n
  std::string monitor_action = "monitor";
};

// Ground truth at time t (clamped to the first/last knot outside the range;
// 0 with no knots).
double truth(const SignalSpec& sig, double t);

double phase_of(const SignalSpec& sig, int i, int n);

// What agent i reads at time t: truth plus its phase-shifted disturbance.
// Uniform phases cancel in a full-team average.
double measure(const SignalSpec& sig, int i, int n, double t);

// Symmetric communication graph over current agent positions.
struct ConsensusGraph {
  int n = 0;
  std::vector<char> adj;  // n*n, row-major, diagonal 0
  int max_degree = 0;
  bool connected = true;

  bool edge(int a, int b) const { return adj[static_cast<std::size_t>(a) * n + b] != 0; }
};

ConsensusGraph make_consensus_graph(const Workspace& ws,
                                    const std::vector<Cell>& pts,
                                    double range);

// One synchronous averaging step x_i += eps * sum_j (x_j - x_i) over graph
// neighbors.  Any eps in (0, 1/max_degree) keeps the update a contraction
// and preserves the mean; components mix independently.
void consensus_round(std::vector<double>& x, const ConsensusGraph& g,
                     double eps);

// Same step with the default gain 0.4 / max_degree.
void consensus_round(std::vector<double>& x, const ConsensusGraph& g);

struct DeviationMetrics {
  double max_abs = 0.0;
  double rms = 0.0;
};

DeviationMetrics deviation_metrics(const std::vector<double>& errors);

}  // namespace macoord
