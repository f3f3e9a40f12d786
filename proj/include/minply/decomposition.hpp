#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "minply/geometry.hpp"
#include "minply/greedy.hpp"
#include "minply/slab.hpp"

namespace minply {

struct SubInstance {
  std::vector<Point> points;
  std::vector<UnitSquare> squares;
};

// Points with y <= line_y go below, the rest above; squares go to both.
std::pair<SubInstance, SubInstance> split_by_line(double line_y,
                                                  std::span<const UnitSquare> squares,
                                                  std::span<const Point> points);

// Cover produced for one subproblem of a merged solution.
struct SubCover {
  std::string label;               // "below", "above" or "slab"
  std::optional<int> slab_index;   // integer slab index for slab subproblems
  std::optional<SlabContext> slab;
  std::vector<SquareId> squares;
  int ply = 0;                     // measured within the subproblem's clip

  friend bool operator==(const SubCover&, const SubCover&) = default;
};

struct MergedCover {
  std::vector<SquareId> squares;   // sorted union
  std::vector<SubCover> parts;
  int global_ply = 0;
  std::optional<PlyRegion> witness;
  TableStats stats;
};

// Unclipped ply of the chosen squares and its representative region.
std::pair<int, std::optional<PlyRegion>> global_ply(std::span<const UnitSquare> squares,
                                                    std::span<const SquareId> cover);

MergedCover solve_line_2approx(double line_y, std::span<const UnitSquare> squares,
                               std::span<const Point> points);

struct SlabPart {
  int index = 0;  // slab spans (y0 + index, y0 + index + 1]
  SlabContext ctx;
  std::vector<PointId> point_ids;
  std::vector<SquareId> square_ids;
};

struct SlabAssignment {
  double origin = 0.0;  // y0 = floor(min point y)
  std::vector<SlabPart> slabs;  // occupied slabs, ascending index
};

// Unit slabs anchored at floor(min y); a point on a slab boundary belongs to
// the lower slab. Throws kUncoveredPoint.
SlabAssignment partition_slabs(std::span<const Point> points, std::span<const UnitSquare> squares);

MergedCover solve_full(std::span<const Point> points, std::span<const UnitSquare> squares);

// max over slab indices k of ply(k-1) + ply(k) + ply(k+1), missing slabs
// counting as 0.
int triple_sum_bound(const MergedCover& cover);

}  // namespace minply
