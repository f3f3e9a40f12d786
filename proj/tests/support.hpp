#pragma once

#include <algorithm>
#include <filesystem>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "minply/geometry.hpp"
#include "minply/greedy.hpp"
#include "minply/instances.hpp"

namespace support {

using namespace minply;

// Stab line y = 0; every square meets it and every point lies below.
inline Instance instance_a() {
  Instance inst;
  inst.name = "instance-a";
  inst.mode = InstanceMode::kLine;
  inst.line_y = 0.0;
  inst.squares = {{0.0, 0.5, 0}, {0.8, 0.4, 1}, {1.6, 0.5, 2}};
  inst.points = {{0.5, -0.3, 0}, {1.2, -0.4, 1}, {2.0, -0.3, 2}};
  return inst;
}

struct Box {
  double x_lo, x_hi, y_lo, y_hi;
};

inline Box clip_box(const ClipRegion& clip) {
  const double inf = std::numeric_limits<double>::infinity();
  switch (clip.kind()) {
    case ClipRegion::Kind::kNone: return {-inf, inf, -inf, inf};
    case ClipRegion::Kind::kBelow: return {-inf, inf, -inf, clip.y_high()};
    case ClipRegion::Kind::kAbove: return {-inf, inf, clip.y_low(), inf};
    case ClipRegion::Kind::kSlab: return {-inf, inf, clip.y_low(), clip.y_high()};
  }
  return {-inf, inf, -inf, inf};
}

inline bool inside(const UnitSquare& s, const Point& p) {
  return s.x_left <= p.x && p.x <= s.x_left + 1.0 && s.y_top - 1.0 <= p.y && p.y <= s.y_top;
}

// Largest subset whose closed squares share a point of the clip region,
// found by trying every subset.
inline int subset_depth(const std::vector<UnitSquare>& squares, const ClipRegion& clip) {
  const int m = static_cast<int>(squares.size());
  const Box c = clip_box(clip);
  int best = 0;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    Box b = c;
    int size = 0;
    for (int k = 0; k < m; ++k) {
      if (!(mask & (1u << k))) continue;
      ++size;
      b.x_lo = std::max(b.x_lo, squares[k].x_left);
      b.x_hi = std::min(b.x_hi, squares[k].x_left + 1.0);
      b.y_lo = std::max(b.y_lo, squares[k].y_top - 1.0);
      b.y_hi = std::min(b.y_hi, squares[k].y_top);
    }
    if (b.x_lo <= b.x_hi && b.y_lo <= b.y_hi) best = std::max(best, size);
  }
  return best;
}

// Minimum ply over all feasible subsets; -1 if no subset is feasible.
inline int min_ply(const std::vector<Point>& points, const std::vector<UnitSquare>& squares,
                   const ClipRegion& clip) {
  const int m = static_cast<int>(squares.size());
  int best = -1;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<UnitSquare> chosen;
    for (int k = 0; k < m; ++k) {
      if (mask & (1u << k)) chosen.push_back(squares[k]);
    }
    const bool feasible = std::all_of(points.begin(), points.end(), [&](const Point& p) {
      return std::any_of(chosen.begin(), chosen.end(),
                         [&](const UnitSquare& s) { return inside(s, p); });
    });
    if (!feasible) continue;
    const int ply = subset_depth(chosen, clip);
    if (best < 0 || ply < best) best = ply;
  }
  return best;
}

// The table with full id-sets, every candidate evaluated from scratch.
inline CoverEntry naive_table(const std::vector<UnitSquare>& squares, std::vector<Point> points,
                              const ClipRegion& clip, CriteriaMode mode) {
  auto evaluate = [&](std::vector<SquareId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    CoverEntry e;
    e.feasible = true;
    e.squares = ids;
    const PlyResult r = compute_ply(select_squares(squares, ids), clip);
    e.ply = r.ply;
    e.region = representative_region(r.regions);
    return e;
  };
  std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.id < b.id;
  });
  const int m = static_cast<int>(squares.size());
  std::vector<CoverEntry> prev;
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<CoverEntry> row(m);
    for (int j = 0; j < m; ++j) {
      if (!inside(squares[j], points[i])) continue;
      if (i == 0) {
        row[j] = evaluate({squares[j].id});
        continue;
      }
      for (int k = 0; k < m; ++k) {
        if (!prev[k].feasible) continue;
        std::vector<SquareId> ids = prev[k].squares;
        ids.push_back(squares[j].id);
        CoverEntry c = evaluate(ids);
        if (!row[j].feasible || compare_covers(c, row[j], mode) < 0) row[j] = c;
      }
    }
    prev = std::move(row);
  }
  CoverEntry best;
  for (const auto& e : prev) {
    if (e.feasible && (!best.feasible || compare_covers(e, best, mode) < 0)) best = e;
  }
  return best;
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("minply-test-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace support
