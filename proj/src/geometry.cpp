#include "minply/geometry.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "minply/error.hpp"

namespace minply {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

Rect rect_of(const UnitSquare& square) {
  return {square.x_left, square.x_right(), square.y_bottom(), square.y_top};
}

Rect intersect(const Rect& a, const Rect& b) {
  return {std::max(a.x_lo, b.x_lo), std::min(a.x_hi, b.x_hi),
          std::max(a.y_lo, b.y_lo), std::min(a.y_hi, b.y_hi)};
}

Rect unbounded_rect() { return {-kInf, kInf, -kInf, kInf}; }

ClipRegion ClipRegion::slab(double y_low, double y_high) {
  if (y_high - y_low != 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "slab height must be exactly 1");
  }
  return ClipRegion(Kind::kSlab, y_low, y_high);
}

Rect ClipRegion::bounds() const {
  switch (kind_) {
    case Kind::kNone: return unbounded_rect();
    case Kind::kBelow: return {-kInf, kInf, -kInf, hi_};
    case Kind::kAbove: return {-kInf, kInf, lo_, kInf};
    case Kind::kSlab: return {-kInf, kInf, lo_, hi_};
  }
  return unbounded_rect();
}

const char* to_string(Anchor anchor) {
  switch (anchor) {
    case Anchor::kTop: return "top";
    case Anchor::kBottom: return "bottom";
    case Anchor::kFloating: return "floating";
    case Anchor::kUnanchored: return "unanchored";
  }
  return "unanchored";
}

bool contains(const UnitSquare& square, const Point& point) {
  return square.x_left <= point.x && point.x <= square.x_right() &&
         square.y_bottom() <= point.y && point.y <= square.y_top;
}

std::vector<UnitSquare> select_squares(std::span<const UnitSquare> all,
                                       std::span<const SquareId> ids) {
  std::vector<UnitSquare> out;
  out.reserve(ids.size());
  for (SquareId id : ids) {
    auto it = std::find_if(all.begin(), all.end(), [id](const UnitSquare& s) { return s.id == id; });
    if (it == all.end()) {
      throw Error(ErrorCode::kInvalidArgument, "unknown square id " + std::to_string(id), id);
    }
    out.push_back(*it);
  }
  return out;
}

bool square_meets_line(const UnitSquare& square, double y) {
  return square.y_bottom() <= y && y <= square.y_top;
}

Anchor anchor_of(std::span<const UnitSquare> clique, const ClipRegion& clip) {
  if (clip.kind() != ClipRegion::Kind::kSlab) return Anchor::kUnanchored;
  bool bottom = false;
  bool top = false;
  for (const auto& s : clique) {
    bottom = bottom || square_meets_line(s, clip.y_low());
    top = top || square_meets_line(s, clip.y_high());
  }
  if (bottom && top) return Anchor::kFloating;
  if (top) return Anchor::kTop;
  if (bottom) return Anchor::kBottom;
  return Anchor::kUnanchored;
}

// The common intersection of a clique is a closed rectangle whose lower-left
// corner has x equal to some member's clipped left edge and y equal to some
// member's clipped bottom edge. Evaluating depth at all such corners therefore
// finds every maximum clique, including tangential (zero-width) ones.
DepthCliques max_depth_cliques(std::span<const UnitSquare> squares, const Rect& clip) {
  std::vector<Rect> rects;
  std::vector<SquareId> ids;
  rects.reserve(squares.size());
  ids.reserve(squares.size());
  for (const auto& s : squares) {
    const Rect r = intersect(rect_of(s), clip);
    if (!r.empty()) {
      rects.push_back(r);
      ids.push_back(s.id);
    }
  }

  DepthCliques out;
  if (rects.empty()) return out;

  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& r : rects) {
    xs.push_back(r.x_lo);
    ys.push_back(r.y_lo);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  std::vector<std::size_t> members;
  std::vector<std::vector<std::size_t>> best;
  for (double x : xs) {
    for (double y : ys) {
      members.clear();
      for (std::size_t k = 0; k < rects.size(); ++k) {
        if (rects[k].contains(x, y)) members.push_back(k);
      }
      const int depth = static_cast<int>(members.size());
      if (depth == 0 || depth < out.depth) continue;
      if (depth > out.depth) {
        out.depth = depth;
        best.clear();
      }
      best.push_back(members);
    }
  }

  std::sort(best.begin(), best.end());
  best.erase(std::unique(best.begin(), best.end()), best.end());

  for (const auto& clique : best) {
    Rect r = clip;
    std::vector<SquareId> clique_ids;
    for (std::size_t k : clique) {
      r = intersect(r, rects[k]);
      clique_ids.push_back(ids[k]);
    }
    std::sort(clique_ids.begin(), clique_ids.end());
    out.cliques.emplace_back(r, std::move(clique_ids));
  }
  return out;
}

PlyResult compute_ply(std::span<const UnitSquare> squares, const ClipRegion& clip) {
  const DepthCliques dc = max_depth_cliques(squares, clip.bounds());
  PlyResult result;
  result.ply = dc.depth;
  for (const auto& [rect, clique] : dc.cliques) {
    result.regions.push_back(
        {rect, dc.depth, clique, anchor_of(select_squares(squares, clique), clip)});
  }
  std::sort(result.regions.begin(), result.regions.end(), more_representative);
  return result;
}

bool more_representative(const PlyRegion& a, const PlyRegion& b) {
  if (a.rect.x_hi != b.rect.x_hi) return a.rect.x_hi > b.rect.x_hi;
  if (a.rect.y_hi != b.rect.y_hi) return a.rect.y_hi > b.rect.y_hi;
  return a.clique < b.clique;
}

PlyRegion representative_region(std::span<const PlyRegion> regions) {
  if (regions.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "representative_region of empty list");
  }
  return *std::min_element(regions.begin(), regions.end(), more_representative);
}

}  // namespace minply
