#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>

namespace macoord {

// Grid cell address. Lexicographic order is (row, column); that ordering is
// the tie-breaker everywhere a deterministic cell choice is required.
struct Cell {
  int col = 0;
  int row = 0;

  friend bool operator==(const Cell& a, const Cell& b) {
    return a.col == b.col && a.row == b.row;
  }
  friend bool operator!=(const Cell& a, const Cell& b) { return !(a == b); }
  friend bool operator<(const Cell& a, const Cell& b) {
    if (a.row != b.row) return a.row < b.row;
    return a.col < b.col;
  }
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double point_distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

inline std::string cell_str(const Cell& c) {
  return "(" + std::to_string(c.col) + "," + std::to_string(c.row) + ")";
}

struct CellHash {
  std::size_t operator()(const Cell& c) const noexcept {
    return std::hash<std::uint64_t>{}(
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.col)) << 32) |
        static_cast<std::uint32_t>(c.row));
  }
};

struct CellPairHash {
  std::size_t operator()(const std::pair<Cell, Cell>& p) const noexcept {
    std::size_t h1 = CellHash{}(p.first);
    std::size_t h2 = CellHash{}(p.second);
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
  }
};

}  // namespace macoord
