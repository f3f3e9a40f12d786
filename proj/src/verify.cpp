#include "minply/verify.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>

#include "minply/error.hpp"

namespace minply {

bool is_feasible(std::span<const SquareId> cover, std::span<const Point> points,
                 std::span<const UnitSquare> squares) {
  const std::vector<UnitSquare> chosen = select_squares(squares, cover);
  return std::all_of(points.begin(), points.end(), [&](const Point& p) {
    return std::any_of(chosen.begin(), chosen.end(),
                       [&](const UnitSquare& s) { return contains(s, p); });
  });
}

std::vector<SquareId> prune_redundant(std::span<const SquareId> cover,
                                      std::span<const Point> points,
                                      std::span<const UnitSquare> squares) {
  if (!is_feasible(cover, points, squares)) {
    throw Error(ErrorCode::kInfeasibleInput, "cannot prune an infeasible cover");
  }
  std::vector<SquareId> ids(cover.begin(), cover.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<UnitSquare> chosen = select_squares(squares, ids);

  for (;;) {
    std::vector<int> covering(points.size(), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (const auto& s : chosen) covering[i] += contains(s, points[i]) ? 1 : 0;
    }
    int victim = -1;
    for (std::size_t k = 0; k < chosen.size(); ++k) {
      bool has_exclusive = false;
      for (std::size_t i = 0; i < points.size() && !has_exclusive; ++i) {
        has_exclusive = covering[i] == 1 && contains(chosen[k], points[i]);
      }
      if (has_exclusive) continue;
      if (victim < 0 || chosen[k].x_left > chosen[victim].x_left ||
          (chosen[k].x_left == chosen[victim].x_left && chosen[k].id > chosen[victim].id)) {
        victim = static_cast<int>(k);
      }
    }
    if (victim < 0) break;
    chosen.erase(chosen.begin() + victim);
  }

  std::vector<SquareId> out;
  for (const auto& s : chosen) out.push_back(s.id);
  std::sort(out.begin(), out.end());
  return out;
}

OracleResult brute_force_opt(std::span<const Point> points, std::span<const UnitSquare> squares,
                             const ClipRegion& clip, int cap) {
  const int m = static_cast<int>(squares.size());
  if (m > cap || m > 30) {
    throw Error(ErrorCode::kCapExceeded,
                std::to_string(m) + " squares exceed the oracle cap of " + std::to_string(cap), m);
  }
  std::vector<std::uint32_t> holders;
  holders.reserve(points.size());
  for (const Point& p : points) {
    std::uint32_t mask = 0;
    for (int k = 0; k < m; ++k) {
      if (contains(squares[k], p)) mask |= std::uint32_t{1} << k;
    }
    if (mask == 0) {
      throw Error(ErrorCode::kUncoveredPoint, "point " + std::to_string(p.id) + " is in no square",
                  p.id);
    }
    holders.push_back(mask);
  }

  OracleResult best;
  best.clip = clip;
  bool found = false;
  std::vector<UnitSquare> subset;
  std::vector<SquareId> ids;
  const std::uint32_t limit = std::uint32_t{1} << m;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    ++best.subsets_examined;
    if (!std::all_of(holders.begin(), holders.end(),
                     [mask](std::uint32_t h) { return (h & mask) != 0; })) {
      continue;
    }
    if (found && std::popcount(mask) > static_cast<int>(best.cover.size()) &&
        best.ply <= 1) {
      continue;
    }
    subset.clear();
    ids.clear();
    for (int k = 0; k < m; ++k) {
      if (mask & (std::uint32_t{1} << k)) {
        subset.push_back(squares[k]);
        ids.push_back(squares[k].id);
      }
    }
    std::sort(ids.begin(), ids.end());
    const int ply = compute_ply(subset, clip).ply;
    const bool better = !found || ply < best.ply ||
                        (ply == best.ply && (ids.size() < best.cover.size() ||
                                             (ids.size() == best.cover.size() && ids < best.cover)));
    if (better) {
      found = true;
      best.ply = ply;
      best.cover = ids;
    }
  }
  return best;
}

const char* to_string(BoundMode mode) {
  switch (mode) {
    case BoundMode::kLineExact: return "line-exact";
    case BoundMode::kLine2Approx: return "line-2approx";
    case BoundMode::kSlab: return "slab";
    case BoundMode::kFull: return "full";
  }
  return "?";
}

bool BoundReport::pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const BoundCheck& c) { return !c.gating || c.pass; });
}

std::string BoundReport::summary() const {
  std::ostringstream os;
  os << (pass() ? "PASS" : "FAIL") << " " << instance << " mode=" << to_string(mode)
     << " sol=" << sol_ply << " opt=" << opt_ply;
  if (ratio) os << " ratio=" << *ratio;
  for (const auto& c : checks) {
    os << " " << c.name << "=" << (c.pass ? "ok" : "fail") << (c.gating ? "" : "(info)");
  }
  return os.str();
}

namespace {

bool clip_fits(BoundMode mode, ClipRegion::Kind kind) {
  using K = ClipRegion::Kind;
  switch (mode) {
    case BoundMode::kLineExact: return kind == K::kBelow || kind == K::kAbove;
    case BoundMode::kLine2Approx: return kind == K::kNone;
    case BoundMode::kSlab: return kind == K::kSlab;
    case BoundMode::kFull: return kind == K::kNone;
  }
  return false;
}

BoundCheck make_check(std::string name, bool pass, std::string detail, bool gating = true) {
  return {std::move(name), pass, gating, std::move(detail)};
}

}  // namespace

BoundReport check_bounds(int sol_ply, const OracleResult& oracle, BoundMode mode,
                         const BoundContext& context) {
  if (!clip_fits(mode, oracle.clip.kind())) {
    throw Error(ErrorCode::kModeMismatch,
                std::string("oracle clip does not match bound mode ") + to_string(mode));
  }
  BoundReport report;
  report.instance = context.instance;
  report.mode = mode;
  report.sol_ply = sol_ply;
  report.opt_ply = oracle.ply;
  if (oracle.ply >= 1) report.ratio = static_cast<double>(sol_ply) / oracle.ply;

  const int opt = oracle.ply;
  const auto bound_detail = [&](int limit) {
    return std::to_string(sol_ply) + " <= " + std::to_string(limit);
  };
  switch (mode) {
    case BoundMode::kLineExact:
      report.checks.push_back(make_check("exact", sol_ply == opt,
                                         std::to_string(sol_ply) + " == " + std::to_string(opt)));
      break;
    case BoundMode::kLine2Approx:
      report.checks.push_back(make_check("factor2", sol_ply <= 2 * opt, bound_detail(2 * opt)));
      break;
    case BoundMode::kSlab:
      report.checks.push_back(
          make_check("factor9", sol_ply <= 9 * opt + 9, bound_detail(9 * opt + 9)));
      break;
    case BoundMode::kFull:
      report.checks.push_back(
          make_check("factor27", sol_ply <= 27 * opt + 27, bound_detail(27 * opt + 27)));
      break;
  }

  if (context.pruned_max_clique) {
    const int k = *context.pruned_max_clique;
    const int need = k / 9 - 1;
    report.checks.push_back(make_check(
        "k9", opt >= need, "opt " + std::to_string(opt) + " >= " + std::to_string(need)));
  }
  if (context.exclusive_cover_minimum && context.pruned_max_clique) {
    const int need = *context.pruned_max_clique / 3;
    report.checks.push_back(make_check("k3", *context.exclusive_cover_minimum >= need,
                                       std::to_string(*context.exclusive_cover_minimum) +
                                           " >= " + std::to_string(need),
                                       false));
  }
  if (context.triple_sum) {
    report.checks.push_back(make_check("triple_sum", sol_ply <= *context.triple_sum,
                                       bound_detail(*context.triple_sum)));
  }
  if (context.row_bound_violations) {
    report.checks.push_back(make_check("row_bounds", *context.row_bound_violations == 0,
                                       std::to_string(*context.row_bound_violations) +
                                           " violations"));
  }
  return report;
}

BoundReport check_bounds(const CoverEntry& sol, const OracleResult& oracle, BoundMode mode,
                         BoundContext context) {
  return check_bounds(sol.ply, oracle, mode, context);
}

BoundReport check_bounds(const MergedCover& sol, const OracleResult& oracle, BoundMode mode,
                         BoundContext context) {
  if (!context.row_bound_violations) context.row_bound_violations = sol.stats.row_bound_violations;
  if (mode == BoundMode::kFull && !context.triple_sum) context.triple_sum = triple_sum_bound(sol);
  return check_bounds(sol.global_ply, oracle, mode, context);
}

namespace {

// Fewest squares of `squares` covering every point of `targets`.
int min_cover_size(std::span<const Point> targets, std::span<const UnitSquare> squares) {
  if (targets.empty()) return 0;
  std::vector<std::uint64_t> masks;
  for (const auto& s : squares) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (contains(s, targets[i])) mask |= std::uint64_t{1} << i;
    }
    if (mask != 0) masks.push_back(mask);
  }
  const std::uint64_t full =
      targets.size() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << targets.size()) - 1;
  // Breadth-first over union masks: layer d holds everything reachable with d squares.
  std::vector<std::uint64_t> layer = {0};
  for (int depth = 1; depth <= static_cast<int>(masks.size()); ++depth) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t have : layer) {
      for (std::uint64_t m : masks) {
        const std::uint64_t u = have | m;
        if (u == full) return depth;
        next.push_back(u);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    layer = std::move(next);
  }
  return -1;
}

}  // namespace

SlabCliqueInputs slab_clique_inputs(std::span<const SquareId> cover, const SlabContext& ctx,
                                  std::span<const Point> points,
                                  std::span<const UnitSquare> squares) {
  SlabCliqueInputs out;
  out.pruned = prune_redundant(cover, points, squares);
  const PlyResult ply = compute_ply(select_squares(squares, out.pruned), ctx.clip());
  out.max_clique = ply.ply;
  if (ply.regions.empty()) return out;

  const ExclusiveMap excl = exclusive_points(out.pruned, points, squares);
  for (const PlyRegion& region : ply.regions) {
    std::vector<Point> targets;
    for (SquareId id : region.clique) {
      for (PointId pid : excl.of(id)) {
        auto it = std::find_if(points.begin(), points.end(),
                               [pid](const Point& p) { return p.id == pid; });
        targets.push_back(*it);
      }
    }
    if (targets.size() > 63) continue;
    const int need = min_cover_size(targets, squares);
    if (need >= 0 && (!out.exclusive_cover_minimum || need < *out.exclusive_cover_minimum)) {
      out.exclusive_cover_minimum = need;
    }
  }
  return out;
}

}  // namespace minply
