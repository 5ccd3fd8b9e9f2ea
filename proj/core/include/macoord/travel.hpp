#pragma once

#include <unordered_map>

#include "macoord/cell.hpp"
#include "macoord/workspace.hpp"

namespace macoord {

// Per-agent travel-time oracle with memoized paths and durations.
//
// Leg durations are made independent of the route taken so far by fixing a
// canonical approach heading for every cell: the heading an agent ends up
// with after driving the shortest path from its home cell to that cell.
// time(a, b) is then evaluated with the canonical heading of `a` as the
// starting orientation.  The resulting pairwise cost table is static, which
// keeps plan costs, meeting-point costs and realized execution timings in
// exact agreement.
//
// Not thread safe; each agent owns one oracle and queries it from one thread.
class TravelOracle {
 public:
  TravelOracle(const Workspace& ws, MotionParams motion, Cell home,
               double home_heading);

  const Workspace& workspace() const { return *ws_; }
  const MotionParams& motion() const { return motion_; }
  Cell home() const { return home_; }

  // Heading after driving home -> cell along the shortest path; the home
  // cell itself maps to the agent's initial heading.
  double canonical_heading(Cell cell);

  // Shortest path from -> to (cached).
  const Path& path(Cell from, Cell to);

  // Duration of the leg from -> to, starting at canonical_heading(from).
  double time(Cell from, Cell to);

 private:
  const Workspace* ws_;
  MotionParams motion_;
  Cell home_;
  double home_heading_;
  std::unordered_map<Cell, double, CellHash> heading_cache_;
  std::unordered_map<std::pair<Cell, Cell>, Path, CellPairHash> path_cache_;
  std::unordered_map<std::pair<Cell, Cell>, double, CellPairHash> time_cache_;
};

}  // namespace macoord
