#include "macoord/travel.hpp"

namespace macoord {

TravelOracle::TravelOracle(const Workspace& ws, MotionParams motion, Cell home,
                           double home_heading)
    : ws_(&ws), motion_(motion), home_(home), home_heading_(home_heading) {}

double TravelOracle::canonical_heading(Cell cell) {
  auto it = heading_cache_.find(cell);
  if (it != heading_cache_.end()) return it->second;
  double h;
  if (cell == home_) {
    h = home_heading_;
  } else {
    h = final_heading(path(home_, cell), home_heading_);
  }
  heading_cache_.emplace(cell, h);
  return h;
}

const Path& TravelOracle::path(Cell from, Cell to) {
  auto key = std::make_pair(from, to);
  auto it = path_cache_.find(key);
  if (it != path_cache_.end()) return it->second;
  Path p = shortest_path(*ws_, from, to);
  return path_cache_.emplace(key, std::move(p)).first->second;
}

double TravelOracle::time(Cell from, Cell to) {
  auto key = std::make_pair(from, to);
  auto it = time_cache_.find(key);
  if (it != time_cache_.end()) return it->second;
  double t = travel_time(path(from, to), motion_, canonical_heading(from));
  time_cache_.emplace(key, t);
  return t;
}

}  // namespace macoord
