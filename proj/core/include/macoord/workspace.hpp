#pragma once

#include <map>
#include <string>
#include <vector>

#include "macoord/cell.hpp"

namespace macoord {

struct MotionParams {
  double linear_speed = 1.0;   // m/s
  double angular_speed = 1.5;  // rad/s
};

// 4-connected grid world. Cells are square with side cell_size (meters);
// motion happens between cell centers.
struct Workspace {
  int cols = 0;
  int rows = 0;
  double cell_size = 1.0;
  std::vector<std::uint8_t> blocked;  // cols*rows, row-major
  std::map<std::string, Cell> regions;

  bool in_bounds(const Cell& c) const {
    return c.col >= 0 && c.col < cols && c.row >= 0 && c.row < rows;
  }
  bool is_free(const Cell& c) const {
    return in_bounds(c) && blocked[static_cast<std::size_t>(c.row) * cols + c.col] == 0;
  }
  void block(const Cell& c) {
    blocked[static_cast<std::size_t>(c.row) * cols + c.col] = 1;
  }
  Point center(const Cell& c) const {
    return {(c.col + 0.5) * cell_size, (c.row + 0.5) * cell_size};
  }
  // Euclidean distance between cell centers, meters.
  double distance(const Cell& a, const Cell& b) const {
    return point_distance(center(a), center(b));
  }
  std::vector<Cell> free_cells() const;  // (row, col) order
};

Workspace make_workspace(int cols, int rows, double cell_size);

struct Path {
  std::vector<Cell> cells;
  std::vector<Point> waypoints;  // cell centers
  double length = 0.0;           // meters
};

// Minimum-length 4-connected path between free cells. Ties are broken by
// expanding neighbors in (row, column) order, so the result is a pure
// function of the workspace. Throws ValidationError if an endpoint is not
// free, InfeasibleError if no path exists.
Path shortest_path(const Workspace& w, const Cell& from, const Cell& to);

// Turn-then-forward timing: per segment, rotate through the minimal signed
// heading change, then drive the segment at linear speed. The first segment
// turns from initial_heading. A single-waypoint path takes zero time.
double travel_time(const Path& p, const MotionParams& m,
                   double initial_heading);

// Heading after traversing the path; initial_heading if the path has no
// segments.
double final_heading(const Path& p, double initial_heading);

// Signed minimal angle from `from` to `to`, in (-pi, pi].
double wrap_angle(double from, double to);

}  // namespace macoord
