#include "minply/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "minply/error.hpp"

namespace minply {

std::pair<SubInstance, SubInstance> split_by_line(double line_y,
                                                  std::span<const UnitSquare> squares,
                                                  std::span<const Point> points) {
  SubInstance below;
  SubInstance above;
  below.squares.assign(squares.begin(), squares.end());
  above.squares.assign(squares.begin(), squares.end());
  for (const Point& p : points) (p.y <= line_y ? below : above).points.push_back(p);
  return {std::move(below), std::move(above)};
}

std::pair<int, std::optional<PlyRegion>> global_ply(std::span<const UnitSquare> squares,
                                                    std::span<const SquareId> cover) {
  const std::vector<UnitSquare> chosen = select_squares(squares, cover);
  const PlyResult result = compute_ply(chosen, ClipRegion::none());
  if (result.regions.empty()) return {0, std::nullopt};
  return {result.ply, representative_region(result.regions)};
}

namespace {

void finish(MergedCover& merged, std::span<const UnitSquare> squares) {
  for (const SubCover& part : merged.parts) {
    merged.squares.insert(merged.squares.end(), part.squares.begin(), part.squares.end());
  }
  std::sort(merged.squares.begin(), merged.squares.end());
  merged.squares.erase(std::unique(merged.squares.begin(), merged.squares.end()),
                       merged.squares.end());
  auto [ply, witness] = global_ply(squares, merged.squares);
  merged.global_ply = ply;
  merged.witness = std::move(witness);
}

}  // namespace

MergedCover solve_line_2approx(double line_y, std::span<const UnitSquare> squares,
                               std::span<const Point> points) {
  auto [below, above] = split_by_line(line_y, squares, points);
  MergedCover merged;
  const CoverEntry low = solve_mpcsihl1(line_y, below.squares, below.points, Side::kBelow,
                                        &merged.stats);
  const CoverEntry high = solve_mpcsihl1(line_y, above.squares, above.points, Side::kAbove,
                                         &merged.stats);
  merged.parts.push_back({"below", std::nullopt, std::nullopt, low.squares, low.ply});
  merged.parts.push_back({"above", std::nullopt, std::nullopt, high.squares, high.ply});
  finish(merged, squares);
  return merged;
}

SlabAssignment partition_slabs(std::span<const Point> points,
                               std::span<const UnitSquare> squares) {
  for (const Point& p : points) {
    if (std::none_of(squares.begin(), squares.end(),
                     [&](const UnitSquare& s) { return contains(s, p); })) {
      throw Error(ErrorCode::kUncoveredPoint, "point " + std::to_string(p.id) + " is in no square",
                  p.id);
    }
  }
  SlabAssignment out;
  if (points.empty()) return out;

  double min_y = points.front().y;
  for (const Point& p : points) min_y = std::min(min_y, p.y);
  out.origin = std::floor(min_y);

  std::map<int, std::vector<PointId>> members;
  for (const Point& p : points) {
    const int index = std::max(0, static_cast<int>(std::ceil(p.y - out.origin)) - 1);
    members[index].push_back(p.id);
  }

  for (auto& [index, ids] : members) {
    SlabPart part;
    part.index = index;
    part.ctx = {out.origin + index, out.origin + index + 1};
    part.point_ids = std::move(ids);
    for (const UnitSquare& s : squares) {
      const bool holds_point = std::any_of(points.begin(), points.end(), [&](const Point& p) {
        return std::find(part.point_ids.begin(), part.point_ids.end(), p.id) !=
                   part.point_ids.end() &&
               contains(s, p);
      });
      if (holds_point) part.square_ids.push_back(s.id);
    }
    out.slabs.push_back(std::move(part));
  }
  return out;
}

MergedCover solve_full(std::span<const Point> points, std::span<const UnitSquare> squares) {
  const SlabAssignment assignment = partition_slabs(points, squares);
  MergedCover merged;
  for (const SlabPart& part : assignment.slabs) {
    std::vector<Point> slab_points;
    for (const Point& p : points) {
      if (std::find(part.point_ids.begin(), part.point_ids.end(), p.id) != part.point_ids.end()) {
        slab_points.push_back(p);
      }
    }
    const std::vector<UnitSquare> slab_squares = select_squares(squares, part.square_ids);
    const CoverEntry entry = solve_slab(part.ctx, slab_squares, slab_points, &merged.stats);
    merged.parts.push_back({"slab", part.index, part.ctx, entry.squares, entry.ply});
  }
  finish(merged, squares);
  return merged;
}

int triple_sum_bound(const MergedCover& cover) {
  std::map<int, int> ply_at;
  for (const SubCover& part : cover.parts) {
    if (part.slab_index) ply_at[*part.slab_index] = part.ply;
  }
  const auto at = [&](int k) {
    auto it = ply_at.find(k);
    return it == ply_at.end() ? 0 : it->second;
  };
  if (ply_at.empty()) return 0;
  // Empty slabs between occupied ones count too: their neighbours can overlap.
  int best = 0;
  for (int k = ply_at.begin()->first - 1; k <= ply_at.rbegin()->first + 1; ++k) {
    best = std::max(best, at(k - 1) + at(k) + at(k + 1));
  }
  return best;
}

}  // namespace minply
