#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "macoord/errors.hpp"
#include "macoord/travel.hpp"
#include "macoord/workspace.hpp"
#include "oracles.hpp"

using namespace macoord;
using namespace macoord::testing;

namespace {

Workspace walled_5x5() {
  // Column 2 blocked except a gap at row 3.
  Workspace w = make_workspace(5, 5, 1.0);
  for (int r = 0; r < 5; ++r) {
    if (r != 3) w.block({2, r});
  }
  return w;
}

Workspace random_grid(std::uint64_t seed, int cols, int rows,
                      double density) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Workspace w = make_workspace(cols, rows, 0.5);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (unit(rng) < density) w.block({c, r});
    }
  }
  return w;
}

}  // namespace

TEST_CASE("grid accessors and free cell order") {
  Workspace w = walled_5x5();
  CHECK(w.is_free({0, 0}));
  CHECK_FALSE(w.is_free({2, 0}));
  CHECK_FALSE(w.is_free({-1, 0}));
  CHECK_FALSE(w.is_free({0, 5}));
  CHECK(w.center({0, 0}).x == doctest::Approx(0.5));
  CHECK(w.distance({0, 0}, {3, 4}) == doctest::Approx(5.0));

  std::vector<Cell> free = w.free_cells();
  CHECK(free.size() == 21);
  for (std::size_t k = 1; k < free.size(); ++k) {
    bool ordered = free[k - 1].row < free[k].row ||
                   (free[k - 1].row == free[k].row &&
                    free[k - 1].col < free[k].col);
    CHECK(ordered);
  }
}

TEST_CASE("shortest path length equals breadth-first distance everywhere") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Workspace w = random_grid(seed, 7, 6, 0.2);
    std::vector<Cell> free = w.free_cells();
    for (const Cell& from : free) {
      std::vector<int> dist = bfs_steps(w, from);
      for (const Cell& to : free) {
        int steps = dist[static_cast<std::size_t>(to.row) * w.cols + to.col];
        if (steps < 0) {
          CHECK_THROWS_AS(shortest_path(w, from, to), InfeasibleError);
          continue;
        }
        Path p = shortest_path(w, from, to);
        CHECK(p.cells.size() == static_cast<std::size_t>(steps) + 1);
        CHECK(p.length == doctest::Approx(steps * w.cell_size));
        // Each hop is 4-connected and stays free.
        for (std::size_t k = 1; k < p.cells.size(); ++k) {
          int dc = std::abs(p.cells[k].col - p.cells[k - 1].col);
          int dr = std::abs(p.cells[k].row - p.cells[k - 1].row);
          CHECK(dc + dr == 1);
          CHECK(w.is_free(p.cells[k]));
        }
      }
    }
  }
}

TEST_CASE("wall gap forces the detour through it") {
  Workspace w = walled_5x5();
  Path p = shortest_path(w, {0, 0}, {4, 0});
  std::vector<int> dist = bfs_steps(w, {0, 0});
  CHECK(p.cells.size() ==
        static_cast<std::size_t>(dist[static_cast<std::size_t>(0) * 5 + 4]) + 1);
  bool through_gap = false;
  for (const Cell& c : p.cells) {
    if (c == Cell{2, 3}) through_gap = true;
  }
  CHECK(through_gap);
}

TEST_CASE("path endpoints must be free cells") {
  Workspace w = walled_5x5();
  CHECK_THROWS_AS(shortest_path(w, {2, 0}, {4, 0}), ValidationError);
  CHECK_THROWS_AS(shortest_path(w, {0, 0}, {2, 2}), ValidationError);
  CHECK_THROWS_AS(shortest_path(w, {0, 0}, {9, 9}), ValidationError);
}

TEST_CASE("repeated queries return identical paths") {
  Workspace w = random_grid(9, 8, 8, 0.25);
  std::vector<Cell> free = w.free_cells();
  Cell a = free.front();
  Cell b = free.back();
  std::vector<int> dist = bfs_steps(w, a);
  if (dist[static_cast<std::size_t>(b.row) * w.cols + b.col] >= 0) {
    Path p1 = shortest_path(w, a, b);
    Path p2 = shortest_path(w, a, b);
    REQUIRE(p1.cells.size() == p2.cells.size());
    for (std::size_t k = 0; k < p1.cells.size(); ++k) {
      CHECK(p1.cells[k] == p2.cells[k]);
    }
  }
}

TEST_CASE("wrap_angle returns the minimal signed difference in (-pi, pi]") {
  const double pi = std::numbers::pi;
  CHECK(wrap_angle(0.0, pi / 2) == doctest::Approx(pi / 2));
  CHECK(wrap_angle(pi / 2, 0.0) == doctest::Approx(-pi / 2));
  CHECK(wrap_angle(0.0, pi) == doctest::Approx(pi));
  // Half-turn resolves to +pi, never -pi.
  CHECK(wrap_angle(pi, 0.0) == doctest::Approx(pi));
  CHECK(wrap_angle(-3 * pi / 4, 3 * pi / 4) == doctest::Approx(-pi / 2));
  CHECK(wrap_angle(0.3, 0.3) == 0.0);
}

TEST_CASE("travel time is turn-then-forward per segment") {
  const double pi = std::numbers::pi;
  Workspace w = make_workspace(5, 5, 1.0);
  MotionParams m{1.0, pi / 2};  // quarter turn = 1 s, cell hop = 1 s

  // Straight east run from heading 0: no turning at all.
  Path east = shortest_path(w, {0, 0}, {3, 0});
  CHECK(travel_time(east, m, 0.0) == doctest::Approx(3.0));
  // Same run facing north first: one quarter turn extra.
  CHECK(travel_time(east, m, pi / 2) == doctest::Approx(4.0));
  // Facing west: half turn.
  CHECK(travel_time(east, m, pi) == doctest::Approx(5.0));

  // A northward run from heading 0 turns once up front.
  Path up = shortest_path(w, {0, 0}, {0, 3});
  double t_up = travel_time(up, m, 0.0);
  CHECK(t_up == doctest::Approx(4.0));  // quarter turn + 3 hops

  // Zero-length path costs nothing regardless of heading.
  Path self = shortest_path(w, {2, 2}, {2, 2});
  CHECK(travel_time(self, m, 1.234) == 0.0);
  CHECK(final_heading(self, 1.234) == 1.234);
}

TEST_CASE("travel time matches the segment-wise oracle on random paths") {
  for (std::uint64_t seed = 20; seed < 26; ++seed) {
    Workspace w = random_grid(seed, 8, 7, 0.2);
    std::vector<Cell> free = w.free_cells();
    std::mt19937_64 rng(seed * 77);
    MotionParams m{0.5, 1.5};
    for (int trial = 0; trial < 30; ++trial) {
      Cell a = free[rng() % free.size()];
      Cell b = free[rng() % free.size()];
      std::vector<int> dist = bfs_steps(w, a);
      if (dist[static_cast<std::size_t>(b.row) * w.cols + b.col] < 0) continue;
      Path p = shortest_path(w, a, b);
      double h0 = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
      CHECK(travel_time(p, m, h0) ==
            doctest::Approx(retime_cells(p.cells, w, m, h0)).epsilon(1e-12));
      double hf = final_heading(p, h0);
      if (p.cells.size() > 1) {
        Point pen = w.center(p.cells[p.cells.size() - 2]);
        Point last = w.center(p.cells.back());
        CHECK(hf == doctest::Approx(std::atan2(last.y - pen.y, last.x - pen.x)));
      }
    }
  }
}

TEST_CASE("travel oracle times are route-independent and cached") {
  Workspace w = walled_5x5();
  MotionParams m{1.0, std::numbers::pi / 2};
  TravelOracle tr(w, m, {0, 0}, 0.0);

  // Querying in any order gives identical numbers: times only depend on the
  // canonical heading of the source cell, not on query history.
  double t1 = tr.time({0, 0}, {4, 4});
  double t2 = tr.time({4, 4}, {0, 0});
  TravelOracle fresh(w, m, {0, 0}, 0.0);
  CHECK(fresh.time({4, 4}, {0, 0}) == t2);
  CHECK(fresh.time({0, 0}, {4, 4}) == t1);

  // The canonical heading of home is the construction heading.
  CHECK(tr.canonical_heading({0, 0}) == 0.0);

  // A leg re-timed from its stored path and canonical heading matches.
  const Path& p = tr.path({0, 0}, {4, 4});
  CHECK(tr.time({0, 0}, {4, 4}) ==
        doctest::Approx(travel_time(p, m, tr.canonical_heading({0, 0}))));
  CHECK(tr.time({0, 0}, {0, 0}) == 0.0);
}

TEST_CASE("quarter-turn angular speed makes leg times exact") {
  // pi/2 turn at pi/2 rad/s is exactly 1 s in floating point; legs then sum
  // small dyadic numbers and comparisons can use ==.
  Workspace w = make_workspace(6, 6, 0.5);
  MotionParams m{0.5, std::numbers::pi / 2};
  TravelOracle tr(w, m, {0, 0}, 0.0);
  CHECK(tr.time({0, 0}, {3, 0}) == 3.0);        // three 1 s hops
  CHECK(tr.time({0, 0}, {0, 3}) == 4.0);        // quarter turn + 3 hops
  CHECK(tr.time({3, 0}, {0, 0}) == 5.0);        // half turn + 3 hops
}
