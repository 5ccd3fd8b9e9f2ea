#include "macoord/workspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "macoord/errors.hpp"

namespace macoord {

Workspace make_workspace(int cols, int rows, double cell_size) {
  if (cols <= 0 || rows <= 0)
    throw ValidationError("workspace dimensions must be positive");
  if (cell_size <= 0.0) throw ValidationError("cell_size must be positive");
  Workspace w;
  w.cols = cols;
  w.rows = rows;
  w.cell_size = cell_size;
  w.blocked.assign(static_cast<std::size_t>(cols) * rows, 0);
  return w;
}

std::vector<Cell> Workspace::free_cells() const {
  std::vector<Cell> out;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (is_free({c, r})) out.push_back({c, r});
  return out;
}

Path shortest_path(const Workspace& w, const Cell& from, const Cell& to) {
  if (!w.is_free(from))
    throw ValidationError("shortest_path: start cell " + cell_str(from) +
                          " is not free");
  if (!w.is_free(to))
    throw ValidationError("shortest_path: goal cell " + cell_str(to) +
                          " is not free");

  auto idx = [&](const Cell& c) {
    return static_cast<std::size_t>(c.row) * w.cols + c.col;
  };

  std::vector<int> parent(static_cast<std::size_t>(w.cols) * w.rows, -2);
  parent[idx(from)] = -1;
  std::queue<Cell> frontier;
  frontier.push(from);
  bool found = (from == to);

  while (!frontier.empty() && !found) {
    Cell cur = frontier.front();
    frontier.pop();
    // neighbor order fixes the tie-break: (row-1,col), (row,col-1),
    // (row,col+1), (row+1,col)
    const Cell nbrs[4] = {{cur.col, cur.row - 1},
                          {cur.col - 1, cur.row},
                          {cur.col + 1, cur.row},
                          {cur.col, cur.row + 1}};
    for (const Cell& nb : nbrs) {
      if (!w.is_free(nb) || parent[idx(nb)] != -2) continue;
      parent[idx(nb)] = static_cast<int>(idx(cur));
      if (nb == to) {
        found = true;
        break;
      }
      frontier.push(nb);
    }
  }

  if (!found && parent[idx(to)] == -2)
    throw InfeasibleError("no path between " + cell_str(from) + " and " +
                          cell_str(to));

  Path p;
  Cell cur = to;
  while (true) {
    p.cells.push_back(cur);
    int pi = parent[idx(cur)];
    if (pi < 0) break;
    cur = {static_cast<int>(pi % w.cols), static_cast<int>(pi / w.cols)};
  }
  std::reverse(p.cells.begin(), p.cells.end());
  p.waypoints.reserve(p.cells.size());
  for (const Cell& c : p.cells) p.waypoints.push_back(w.center(c));
  p.length = (p.cells.size() - 1) * w.cell_size;
  return p;
}

double wrap_angle(double from, double to) {
  double d = to - from;
  d = std::remainder(d, 2.0 * std::numbers::pi);
  if (d <= -std::numbers::pi) d += 2.0 * std::numbers::pi;
  return d;
}

double travel_time(const Path& p, const MotionParams& m,
                   double initial_heading) {
  if (m.linear_speed <= 0.0 || m.angular_speed <= 0.0)
    throw ValidationError("motion speeds must be positive");
  double t = 0.0;
  double heading = initial_heading;
  for (std::size_t i = 1; i < p.waypoints.size(); ++i) {
    const Point& a = p.waypoints[i - 1];
    const Point& b = p.waypoints[i];
    double dir = std::atan2(b.y - a.y, b.x - a.x);
    t += std::fabs(wrap_angle(heading, dir)) / m.angular_speed;
    t += std::hypot(b.x - a.x, b.y - a.y) / m.linear_speed;
    heading = dir;
  }
  return t;
}

double final_heading(const Path& p, double initial_heading) {
  if (p.waypoints.size() < 2) return initial_heading;
  const Point& a = p.waypoints[p.waypoints.size() - 2];
  const Point& b = p.waypoints.back();
  return std::atan2(b.y - a.y, b.x - a.x);
}

}  // namespace macoord
