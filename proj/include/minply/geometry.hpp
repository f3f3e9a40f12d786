#pragma once

#include <compare>
#include <span>
#include <vector>

namespace minply {

using PointId = int;
using SquareId = int;

struct Point {
  double x = 0.0;
  double y = 0.0;
  PointId id = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Closed, axis-parallel, side 1: [x_left, x_left + 1] x [y_top - 1, y_top].
struct UnitSquare {
  double x_left = 0.0;
  double y_top = 0.0;
  SquareId id = 0;

  double x_right() const { return x_left + 1.0; }
  double y_bottom() const { return y_top - 1.0; }

  friend bool operator==(const UnitSquare&, const UnitSquare&) = default;
};

// Closed rectangle; infinite bounds are allowed. Empty iff lo > hi on an axis.
struct Rect {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;

  bool empty() const { return x_lo > x_hi || y_lo > y_hi; }
  double width() const { return x_hi - x_lo; }
  double height() const { return y_hi - y_lo; }
  bool contains(double x, double y) const {
    return x_lo <= x && x <= x_hi && y_lo <= y && y <= y_hi;
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

Rect rect_of(const UnitSquare& square);
Rect intersect(const Rect& a, const Rect& b);
Rect unbounded_rect();

class ClipRegion {
 public:
  enum class Kind { kNone, kBelow, kAbove, kSlab };

  static ClipRegion none() { return ClipRegion(Kind::kNone, 0.0, 0.0); }
  // Closed half-plane y <= line_y.
  static ClipRegion below(double line_y) { return ClipRegion(Kind::kBelow, line_y, line_y); }
  // Closed half-plane y >= line_y.
  static ClipRegion above(double line_y) { return ClipRegion(Kind::kAbove, line_y, line_y); }
  // Closed strip y_low <= y <= y_high; requires y_high - y_low == 1.
  static ClipRegion slab(double y_low, double y_high);

  Kind kind() const { return kind_; }
  double y_low() const { return lo_; }
  double y_high() const { return hi_; }
  Rect bounds() const;

  friend bool operator==(const ClipRegion&, const ClipRegion&) = default;

 private:
  ClipRegion(Kind kind, double lo, double hi) : kind_(kind), lo_(lo), hi_(hi) {}

  Kind kind_;
  double lo_;
  double hi_;
};

enum class Anchor { kTop, kBottom, kFloating, kUnanchored };

const char* to_string(Anchor anchor);

struct PlyRegion {
  Rect rect;
  int depth = 0;
  std::vector<SquareId> clique;  // sorted ascending
  Anchor anchor = Anchor::kUnanchored;

  friend bool operator==(const PlyRegion&, const PlyRegion&) = default;
};

struct PlyResult {
  int ply = 0;
  std::vector<PlyRegion> regions;  // one per distinct maximum-depth clique
};

bool contains(const UnitSquare& square, const Point& point);

// Squares of `all` whose ids appear in `ids`, in the order of `ids`.
// Throws Error(kInvalidArgument) on an unknown id.
std::vector<UnitSquare> select_squares(std::span<const UnitSquare> all,
                                       std::span<const SquareId> ids);
bool square_meets_line(const UnitSquare& square, double y);

// Anchoring class of a clique. Only slab clips anchor; everything else is
// kUnanchored.
Anchor anchor_of(std::span<const UnitSquare> clique, const ClipRegion& clip);

// Maximum depth of the arrangement of `squares` restricted to the closed
// rectangle `clip`, together with every distinct clique attaining it.
// The rect of each clique is the intersection of its members with `clip`.
struct DepthCliques {
  int depth = 0;
  std::vector<std::pair<Rect, std::vector<SquareId>>> cliques;
};
DepthCliques max_depth_cliques(std::span<const UnitSquare> squares, const Rect& clip);

PlyResult compute_ply(std::span<const UnitSquare> squares, const ClipRegion& clip);

// Strict weak order used to pick the representative ("rightmost") region:
// larger x_hi first, then larger y_hi, then the lexicographically smaller
// clique. Returns true if `a` should be preferred over `b`.
bool more_representative(const PlyRegion& a, const PlyRegion& b);

// Throws Error(kInvalidArgument) on empty input.
PlyRegion representative_region(std::span<const PlyRegion> regions);

}  // namespace minply
