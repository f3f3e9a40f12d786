#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minply/decomposition.hpp"
#include "minply/geometry.hpp"
#include "minply/greedy.hpp"
#include "minply/slab.hpp"

namespace minply {

bool is_feasible(std::span<const SquareId> cover, std::span<const Point> points,
                 std::span<const UnitSquare> squares);

// Repeatedly drops the rightmost (largest x_left) square that has no
// exclusive point. Throws kInfeasibleInput if `cover` is not feasible.
std::vector<SquareId> prune_redundant(std::span<const SquareId> cover,
                                      std::span<const Point> points,
                                      std::span<const UnitSquare> squares);

struct OracleResult {
  int ply = 0;
  std::vector<SquareId> cover;  // min ply, then min size, then lexicographic
  long subsets_examined = 0;
  ClipRegion clip = ClipRegion::none();
};

constexpr int kDefaultOracleCap = 16;

// Exhaustive search over all subsets of `squares`. Throws kUncoveredPoint
// and kCapExceeded.
OracleResult brute_force_opt(std::span<const Point> points, std::span<const UnitSquare> squares,
                             const ClipRegion& clip, int cap = kDefaultOracleCap);

enum class BoundMode { kLineExact, kLine2Approx, kSlab, kFull };

const char* to_string(BoundMode mode);

struct BoundCheck {
  std::string name;
  bool pass = true;
  bool gating = true;  // informational checks do not affect BoundReport::pass()
  std::string detail;
};

struct BoundReport {
  std::string instance;
  BoundMode mode = BoundMode::kLineExact;
  int sol_ply = 0;
  int opt_ply = 0;
  std::optional<double> ratio;  // sol / opt when opt >= 1
  std::vector<BoundCheck> checks;

  bool pass() const;
  std::string summary() const;
};

// Optional inputs for the clique and sum checks; absent values skip the check.
struct BoundContext {
  std::string instance;
  std::optional<int> pruned_max_clique;         // k for the k/9 check
  std::optional<int> exclusive_cover_minimum;   // min squares covering a max clique's exclusive points
  std::optional<int> triple_sum;
  std::optional<long> row_bound_violations;
};

// Throws kModeMismatch if the oracle was computed under a clip that does not
// fit `mode`.
BoundReport check_bounds(int sol_ply, const OracleResult& oracle, BoundMode mode,
                         const BoundContext& context = {});
BoundReport check_bounds(const CoverEntry& sol, const OracleResult& oracle, BoundMode mode,
                         BoundContext context = {});
BoundReport check_bounds(const MergedCover& sol, const OracleResult& oracle, BoundMode mode,
                         BoundContext context = {});

// Clique-bound inputs for a slab solution: the pruned cover, its largest clique
// inside the slab, and the fewest input squares that cover the exclusive
// points of one of its maximum cliques (minimised over those cliques).
struct SlabCliqueInputs {
  std::vector<SquareId> pruned;
  int max_clique = 0;
  std::optional<int> exclusive_cover_minimum;
};

SlabCliqueInputs slab_clique_inputs(std::span<const SquareId> cover, const SlabContext& ctx,
                                  std::span<const Point> points,
                                  std::span<const UnitSquare> squares);

}  // namespace minply
