#include "minply/slab.hpp"

#include <algorithm>
#include <sstream>

#include "minply/error.hpp"

namespace minply {

CoverEntry solve_slab(const SlabContext& ctx, std::span<const UnitSquare> squares,
                      std::span<const Point> points, TableStats* stats) {
  const ClipRegion clip = ctx.clip();
  for (const auto& s : squares) {
    if (!ctx.meets_bottom(s) && !ctx.meets_top(s)) {
      throw Error(ErrorCode::kSquareMissesSlab,
                  "square " + std::to_string(s.id) + " meets neither slab line", s.id);
    }
  }
  for (const auto& p : points) {
    if (!ctx.contains(p)) {
      throw Error(ErrorCode::kPointOutsideSlab,
                  "point " + std::to_string(p.id) + " lies outside the slab", p.id);
    }
    if (std::none_of(squares.begin(), squares.end(),
                     [&](const UnitSquare& s) { return contains(s, p); })) {
      throw Error(ErrorCode::kUncoveredPoint, "point " + std::to_string(p.id) + " is in no square",
                  p.id);
    }
  }
  return solve_greedy(squares, points, clip, CriteriaMode::kSlab, stats);
}

const char* to_string(CliqueShape shape) {
  switch (shape) {
    case CliqueShape::kAsc: return "ASC";
    case CliqueShape::kDesc: return "DESC";
    case CliqueShape::kDescAsc: return "DESC|ASC";
    case CliqueShape::kAscDesc: return "ASC|DESC";
    case CliqueShape::kAscAsc: return "ASC|ASC";
    case CliqueShape::kDescDesc: return "DESC|DESC";
  }
  return "?";
}

std::string describe(const CliqueType& type) {
  std::string out = std::string(to_string(type.anchor)) + " " + to_string(type.shape);
  if (type.transition_index) out += " @" + std::to_string(*type.transition_index);
  return out;
}

bool is_forbidden(const CliqueType& type) {
  using enum CliqueShape;
  switch (type.anchor) {
    case Anchor::kTop:
      return type.shape == kAscAsc || type.shape == kDescDesc || type.shape == kAscDesc;
    case Anchor::kBottom:
      return type.shape == kAscAsc || type.shape == kDescAsc || type.shape == kDescDesc;
    default:
      return false;
  }
}

namespace {

bool above(const UnitSquare& a, const UnitSquare& b) {
  if (a.y_top != b.y_top) return a.y_top > b.y_top;
  return a.id > b.id;
}

std::vector<UnitSquare> by_left_edge(std::span<const UnitSquare> squares) {
  std::vector<UnitSquare> out(squares.begin(), squares.end());
  std::sort(out.begin(), out.end(), [](const UnitSquare& a, const UnitSquare& b) {
    if (a.x_left != b.x_left) return a.x_left < b.x_left;
    return a.id < b.id;
  });
  return out;
}

std::string ids_string(std::span<const SquareId> ids) {
  std::ostringstream os;
  os << "{";
  for (std::size_t k = 0; k < ids.size(); ++k) os << (k ? "," : "") << ids[k];
  os << "}";
  return os.str();
}

// Monotone runs of an x-ordered clique: [begin, end) index ranges with their
// direction (true = ascending).
struct Run {
  std::size_t begin;
  std::size_t end;
  bool ascending;
};

std::vector<Run> monotone_runs(std::span<const UnitSquare> ordered) {
  std::vector<Run> runs;
  std::size_t start = 0;
  while (start < ordered.size()) {
    if (start + 1 == ordered.size()) {
      // Single trailing square: direction opposite to the previous run.
      const bool dir = runs.empty() ? true : !runs.back().ascending;
      runs.push_back({start, start + 1, dir});
      break;
    }
    const bool dir = above(ordered[start + 1], ordered[start]);
    std::size_t end = start + 1;
    while (end < ordered.size() && above(ordered[end], ordered[end - 1]) == dir) ++end;
    runs.push_back({start, end, dir});
    start = end;
  }
  return runs;
}

}  // namespace

CliqueType classify_clique(std::span<const UnitSquare> clique, const SlabContext& ctx) {
  if (clique.empty()) throw Error(ErrorCode::kNotAClique, "empty clique");
  Rect common = ctx.clip().bounds();
  for (const auto& s : clique) common = intersect(common, rect_of(s));
  if (common.empty()) {
    throw Error(ErrorCode::kNotAClique, "squares have no common point inside the slab");
  }

  const std::vector<UnitSquare> ordered = by_left_edge(clique);
  CliqueType type;
  type.anchor = anchor_of(ordered, ctx.clip());

  const std::vector<Run> runs = monotone_runs(ordered);
  if (runs.size() == 1) {
    type.shape = runs[0].ascending ? CliqueShape::kAsc : CliqueShape::kDesc;
    return type;
  }
  if (runs.size() > 2) {
    throw Error(ErrorCode::kTooManyReversals,
                std::to_string(runs.size()) + " monotone runs in clique");
  }
  const bool first = runs[0].ascending;
  const bool second = runs[1].ascending;
  if (first && second) type.shape = CliqueShape::kAscAsc;
  if (first && !second) type.shape = CliqueShape::kAscDesc;
  if (!first && second) type.shape = CliqueShape::kDescAsc;
  if (!first && !second) type.shape = CliqueShape::kDescDesc;
  type.transition_index = static_cast<int>(runs[1].begin) + 1;
  return type;
}

const std::vector<PointId>& ExclusiveMap::of(SquareId id) const {
  static const std::vector<PointId> kNone;
  for (const auto& [sq, pts] : by_square) {
    if (sq == id) return pts;
  }
  return kNone;
}

ExclusiveMap exclusive_points(std::span<const SquareId> cover, std::span<const Point> points,
                              std::span<const UnitSquare> squares) {
  std::vector<SquareId> ids(cover.begin(), cover.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  const std::vector<UnitSquare> chosen = select_squares(squares, ids);

  ExclusiveMap map;
  for (SquareId id : ids) map.by_square.push_back({id, {}});
  for (const Point& p : points) {
    int owner = -1;
    int count = 0;
    for (std::size_t k = 0; k < chosen.size(); ++k) {
      if (contains(chosen[k], p)) {
        owner = static_cast<int>(k);
        ++count;
      }
    }
    if (count == 1) map.by_square[owner].second.push_back(p.id);
  }
  for (auto& entry : map.by_square) std::sort(entry.second.begin(), entry.second.end());
  return map;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kRedundantSquare: return "RedundantSquare";
    case ViolationKind::kTooManyReversals: return "TooManyReversals";
    case ViolationKind::kForbiddenCliqueType: return "ForbiddenCliqueType";
    case ViolationKind::kFloatingLineCap: return "FloatingLineCap";
    case ViolationKind::kExclusivePair: return "ExclusivePair";
  }
  return "?";
}

namespace {

int count_if_range(std::span<const UnitSquare> ordered, std::size_t begin, std::size_t end,
                   auto pred) {
  int n = 0;
  for (std::size_t k = begin; k < end; ++k) n += pred(ordered[k]) ? 1 : 0;
  return n;
}

void check_floating_caps(const CliqueType& type, std::span<const UnitSquare> ordered,
                         const SlabContext& ctx, const std::vector<SquareId>& clique,
                         ViolationReport& report) {
  if (type.anchor != Anchor::kFloating) return;
  const auto top = [&](const UnitSquare& s) { return ctx.meets_top(s); };
  const auto bottom = [&](const UnitSquare& s) { return ctx.meets_bottom(s); };
  const std::size_t split = type.transition_index ? *type.transition_index - 1 : ordered.size();
  const std::size_t size = ordered.size();

  auto flag = [&](const std::string& what) {
    report.violations.push_back(
        {ViolationKind::kFloatingLineCap, describe(type) + ": " + what, clique, {}, {}});
  };

  switch (type.shape) {
    case CliqueShape::kAscAsc:
      if (count_if_range(ordered, 0, split, top) > 1) flag("first run has >1 square on L2");
      if (count_if_range(ordered, split, size, bottom) > 1) flag("second run has >1 square on L1");
      break;
    case CliqueShape::kDescDesc:
      if (count_if_range(ordered, 0, split, bottom) > 1) flag("first run has >1 square on L1");
      if (count_if_range(ordered, split, size, top) > 1) flag("second run has >1 square on L2");
      break;
    case CliqueShape::kAscDesc:
      if (count_if_range(ordered, 0, size, top) > 2) flag(">2 squares on L2");
      break;
    case CliqueShape::kDescAsc:
      if (count_if_range(ordered, 0, size, bottom) > 2) flag(">2 squares on L1");
      break;
    default:
      break;
  }
}

}  // namespace

ViolationReport validate_structure(std::span<const SquareId> cover, const SlabContext& ctx,
                                   std::span<const Point> points,
                                   std::span<const UnitSquare> all_squares) {
  ViolationReport report;
  std::vector<SquareId> ids(cover.begin(), cover.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  const std::vector<UnitSquare> chosen = select_squares(all_squares, ids);
  const ExclusiveMap excl = exclusive_points(ids, points, all_squares);

  for (const auto& [id, pts] : excl.by_square) {
    if (pts.empty()) {
      report.violations.push_back({ViolationKind::kRedundantSquare,
                                   "square " + std::to_string(id) + " has no exclusive point",
                                   {}, {id}, {}});
    }
  }

  const PlyResult ply = compute_ply(chosen, ctx.clip());
  if (ply.ply < 2) return report;

  SquareId leftmost = -1;
  if (!chosen.empty()) leftmost = by_left_edge(chosen).front().id;

  for (const PlyRegion& region : ply.regions) {
    const std::vector<UnitSquare> ordered = by_left_edge(select_squares(all_squares, region.clique));
    CliqueType type;
    try {
      type = classify_clique(ordered, ctx);
    } catch (const Error& e) {
      report.violations.push_back({ViolationKind::kTooManyReversals,
                                   "clique " + ids_string(region.clique) + ": " + e.what(),
                                   region.clique, {}, {}});
      continue;
    }
    if (is_forbidden(type)) {
      report.violations.push_back({ViolationKind::kForbiddenCliqueType,
                                   "clique " + ids_string(region.clique) + " is " + describe(type),
                                   region.clique, {}, {}});
    }
    check_floating_caps(type, ordered, ctx, region.clique, report);

    for (std::size_t k = 0; k + 1 < ordered.size(); ++k) {
      const UnitSquare& s1 = ordered[k];
      const UnitSquare& s2 = ordered[k + 1];
      if (s1.id == leftmost) continue;
      std::vector<PointId> joint = excl.of(s1.id);
      const auto& second = excl.of(s2.id);
      joint.insert(joint.end(), second.begin(), second.end());
      if (joint.empty()) continue;
      for (const UnitSquare& s : all_squares) {
        const bool covers_all = std::all_of(joint.begin(), joint.end(), [&](PointId pid) {
          auto it = std::find_if(points.begin(), points.end(),
                                 [pid](const Point& p) { return p.id == pid; });
          return contains(s, *it);
        });
        if (covers_all) {
          report.violations.push_back(
              {ViolationKind::kExclusivePair,
               "square " + std::to_string(s.id) + " covers Excl(" + std::to_string(s1.id) +
                   ") and Excl(" + std::to_string(s2.id) + ")",
               region.clique, {s1.id, s2.id, s.id}, joint});
        }
      }
    }
  }
  return report;
}

}  // namespace minply
