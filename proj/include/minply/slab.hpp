#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "minply/geometry.hpp"
#include "minply/greedy.hpp"

namespace minply {

// Lines L1 (y_low) and L2 (y_high), exactly one unit apart.
struct SlabContext {
  double y_low = 0.0;
  double y_high = 1.0;

  ClipRegion clip() const { return ClipRegion::slab(y_low, y_high); }
  bool meets_bottom(const UnitSquare& s) const { return square_meets_line(s, y_low); }
  bool meets_top(const UnitSquare& s) const { return square_meets_line(s, y_high); }
  bool contains(const Point& p) const { return y_low <= p.y && p.y <= y_high; }

  friend bool operator==(const SlabContext&, const SlabContext&) = default;
};

// Throws kSquareMissesSlab, kPointOutsideSlab or kUncoveredPoint.
CoverEntry solve_slab(const SlabContext& ctx, std::span<const UnitSquare> squares,
                      std::span<const Point> points, TableStats* stats = nullptr);

enum class CliqueShape { kAsc, kDesc, kDescAsc, kAscDesc, kAscAsc, kDescDesc };

const char* to_string(CliqueShape shape);

struct CliqueType {
  Anchor anchor = Anchor::kUnanchored;
  CliqueShape shape = CliqueShape::kAsc;
  // 1-based position of the first square of the second monotone run.
  std::optional<int> transition_index;
};

std::string describe(const CliqueType& type);

bool is_forbidden(const CliqueType& type);

// Orders the clique by x_left, then splits it into maximal monotone runs of
// top edges. One run is ASC or DESC; two runs give the composite shape, where
// a trailing run of a single square is read as the opposite direction.
// Throws kNotAClique if the squares share no point inside the slab and
// kTooManyReversals for three or more runs.
CliqueType classify_clique(std::span<const UnitSquare> clique, const SlabContext& ctx);

// Points covered by exactly one chosen square, listed per chosen square in
// ascending id order.
struct ExclusiveMap {
  std::vector<std::pair<SquareId, std::vector<PointId>>> by_square;

  const std::vector<PointId>& of(SquareId id) const;
};

ExclusiveMap exclusive_points(std::span<const SquareId> cover, std::span<const Point> points,
                              std::span<const UnitSquare> squares);

enum class ViolationKind {
  kRedundantSquare,
  kTooManyReversals,
  kForbiddenCliqueType,
  kFloatingLineCap,
  kExclusivePair,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
  std::vector<SquareId> clique;
  std::vector<SquareId> squares;  // witnessing squares
  std::vector<PointId> points;    // witnessing points
};

struct ViolationReport {
  std::vector<Violation> violations;

  bool empty() const { return violations.empty(); }
};

// Checks a pruned cover against the structural properties of greedy slab
// solutions: allowed clique shapes, line-intersection caps of floating
// cliques, and the exclusive-pair property.
ViolationReport validate_structure(std::span<const SquareId> cover, const SlabContext& ctx,
                                   std::span<const Point> points,
                                   std::span<const UnitSquare> all_squares);

}  // namespace minply
