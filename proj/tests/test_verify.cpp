#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "minply/error.hpp"
#include "minply/instances.hpp"
#include "minply/verify.hpp"
#include "support.hpp"

using namespace minply;

namespace {

bool irredundant(const std::vector<SquareId>& cover, const std::vector<Point>& pts,
                 const std::vector<UnitSquare>& sq) {
  for (SquareId drop : cover) {
    std::vector<SquareId> rest;
    for (SquareId id : cover) {
      if (id != drop) rest.push_back(id);
    }
    if (is_feasible(rest, pts, sq)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("is_feasible") {
    const Instance a = support::instance_a();
    CHECK(is_feasible(std::vector<SquareId>{}, std::vector<Point>{}, a.squares));
    CHECK_FALSE(is_feasible(std::vector<SquareId>{}, std::vector<Point>{{0.5, -0.5, 0}}, a.squares));
    CHECK_FALSE(is_feasible(std::vector<SquareId>{0, 2}, a.points, a.squares));
    CHECK(is_feasible(std::vector<SquareId>{0, 1, 2}, a.points, a.squares));
  }

  TEST_CASE("prune_redundant examples") {
    SUBCASE("a covered square is dropped") {
      const std::vector<UnitSquare> sq = {{0.0, 0.5, 0}, {0.5, 0.4, 1}};
      const std::vector<Point> pts = {{0.2, -0.2, 0}, {0.7, -0.3, 1}};
      CHECK(prune_redundant(std::vector<SquareId>{0, 1}, pts, sq) == std::vector<SquareId>{0});
    }
    SUBCASE("irredundant covers are a fixpoint") {
      const Instance a = support::instance_a();
      CHECK(prune_redundant(std::vector<SquareId>{0, 1, 2}, a.points, a.squares) ==
            std::vector<SquareId>{0, 1, 2});
    }
    SUBCASE("of two interchangeable squares the rightmost goes") {
      const std::vector<UnitSquare> sq = {{0.0, 0.5, 0}, {0.1, 0.5, 1}};
      const std::vector<Point> pts = {{0.5, -0.2, 0}};
      CHECK(prune_redundant(std::vector<SquareId>{0, 1}, pts, sq) == std::vector<SquareId>{0});
    }
    SUBCASE("infeasible input") {
      const Instance a = support::instance_a();
      CHECK_THROWS_AS(prune_redundant(std::vector<SquareId>{0}, a.points, a.squares), Error);
    }
  }

  TEST_CASE("every removal order reaches a feasible irredundant cover") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      GenParams p;
      p.n = 6;
      p.m = 6;
      p.x_span = 1.5;
      const Instance inst = gen_line_instance(p, seed);
      std::vector<SquareId> all(inst.squares.size());
      std::iota(all.begin(), all.end(), 0);
      const std::vector<SquareId> pruned = prune_redundant(all, inst.points, inst.squares);
      CHECK(is_feasible(pruned, inst.points, inst.squares));
      CHECK(irredundant(pruned, inst.points, inst.squares));
      CHECK(compute_ply(select_squares(inst.squares, pruned), ClipRegion::none()).ply <=
            compute_ply(inst.squares, ClipRegion::none()).ply);

      // Greedy removal in any order ends feasible and irredundant.
      std::vector<SquareId> order = all;
      do {
        std::vector<SquareId> cover = all;
        for (SquareId id : order) {
          std::vector<SquareId> rest;
          for (SquareId c : cover) {
            if (c != id) rest.push_back(c);
          }
          if (is_feasible(rest, inst.points, inst.squares)) cover = rest;
        }
        CHECK(is_feasible(cover, inst.points, inst.squares));
        CHECK(irredundant(cover, inst.points, inst.squares));
      } while (std::next_permutation(order.begin(), order.end()) && seed <= 3);
    }
  }

  TEST_CASE("oracle examples") {
    const Instance a = support::instance_a();
    const OracleResult r = brute_force_opt(a.points, a.squares, ClipRegion::below(0.0));
    CHECK(r.ply == 2);
    CHECK(r.cover == std::vector<SquareId>{0, 1, 2});
    CHECK(r.subsets_examined == 8);

    const std::vector<UnitSquare> one = {{0.0, 0.5, 0}};
    CHECK(brute_force_opt(std::vector<Point>{{0.5, -0.2, 0}}, one, ClipRegion::below(0.0)).ply == 1);
    try {
      brute_force_opt(std::vector<Point>{{5.0, 0.0, 0}}, one, ClipRegion::none());
      FAIL("expected UncoveredPoint");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kUncoveredPoint);
    }
    std::vector<UnitSquare> many;
    for (int k = 0; k < 17; ++k) many.push_back({k * 0.5, 0.5, k});
    try {
      brute_force_opt(std::vector<Point>{}, many, ClipRegion::none());
      FAIL("expected CapExceeded");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kCapExceeded);
      CHECK(e.subject() == 17);
    }
  }

  TEST_CASE("oracle agrees with the independent minimum and ignores input order") {
    std::mt19937_64 rng(3);
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
      const Instance inst = gen_general_instance(GenParams{6, 7}, seed);
      const OracleResult r = brute_force_opt(inst.points, inst.squares, ClipRegion::none());
      CHECK(r.ply == support::min_ply(inst.points, inst.squares, ClipRegion::none()));
      CHECK(is_feasible(r.cover, inst.points, inst.squares));

      std::vector<UnitSquare> sq = inst.squares;
      std::vector<Point> pts = inst.points;
      std::shuffle(sq.begin(), sq.end(), rng);
      std::shuffle(pts.begin(), pts.end(), rng);
      const OracleResult s = brute_force_opt(pts, sq, ClipRegion::none());
      CHECK(s.ply == r.ply);
      CHECK(s.cover == r.cover);
    }
  }

  TEST_CASE("check_bounds arithmetic") {
    OracleResult below;
    below.clip = ClipRegion::below(0.0);
    below.ply = 2;
    CHECK(check_bounds(2, below, BoundMode::kLineExact).pass());
    CHECK_FALSE(check_bounds(3, below, BoundMode::kLineExact).pass());

    OracleResult slab;
    slab.clip = ClipRegion::slab(0.0, 1.0);
    slab.ply = 1;
    const BoundReport r = check_bounds(3, slab, BoundMode::kSlab);
    CHECK(r.pass());
    REQUIRE(r.ratio);
    CHECK(*r.ratio == 3.0);

    OracleResult global;
    global.ply = 1;
    CHECK_FALSE(check_bounds(60, global, BoundMode::kFull).pass());
    CHECK(check_bounds(54, global, BoundMode::kFull).pass());
    CHECK(check_bounds(2, global, BoundMode::kLine2Approx).pass());
    CHECK_FALSE(check_bounds(3, global, BoundMode::kLine2Approx).pass());

    global.ply = 0;
    CHECK_FALSE(check_bounds(0, global, BoundMode::kFull).ratio);
  }

  TEST_CASE("clique bound checks") {
    OracleResult slab;
    slab.clip = ClipRegion::slab(0.0, 1.0);
    slab.ply = 1;
    BoundContext ctx;
    ctx.pruned_max_clique = 18;
    CHECK(check_bounds(1, slab, BoundMode::kSlab, ctx).pass());
    ctx.pruned_max_clique = 27;
    CHECK_FALSE(check_bounds(1, slab, BoundMode::kSlab, ctx).pass());

    BoundContext info;
    info.pruned_max_clique = 6;
    info.exclusive_cover_minimum = 1;
    const BoundReport r = check_bounds(1, slab, BoundMode::kSlab, info);
    CHECK(r.pass());
    const auto k3 = std::find_if(r.checks.begin(), r.checks.end(),
                                 [](const BoundCheck& c) { return c.name == "k3"; });
    REQUIRE(k3 != r.checks.end());
    CHECK_FALSE(k3->pass);
    CHECK_FALSE(k3->gating);

    OracleResult global;
    global.ply = 2;
    BoundContext sums;
    sums.triple_sum = 3;
    CHECK_FALSE(check_bounds(4, global, BoundMode::kFull, sums).pass());
    BoundContext rows;
    rows.row_bound_violations = 1;
    CHECK_FALSE(check_bounds(2, global, BoundMode::kFull, rows).pass());
  }

  TEST_CASE("oracle clip must match the mode") {
    OracleResult global;
    for (BoundMode m : {BoundMode::kLineExact, BoundMode::kSlab}) {
      try {
        check_bounds(1, global, m);
        FAIL("expected ModeMismatch");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kModeMismatch);
      }
    }
    OracleResult below;
    below.clip = ClipRegion::below(0.0);
    CHECK_THROWS_AS(check_bounds(1, below, BoundMode::kFull), Error);
  }

  TEST_CASE("slab clique inputs") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const Instance inst = gen_slab_instance(GenParams{}, seed);
      const SlabContext ctx{0.0, 1.0};
      const CoverEntry e = solve_slab(ctx, inst.squares, inst.points);
      const SlabCliqueInputs in = slab_clique_inputs(e.squares, ctx, inst.points, inst.squares);
      CHECK(irredundant(in.pruned, inst.points, inst.squares));
      CHECK(in.max_clique <= e.ply);
      REQUIRE(in.exclusive_cover_minimum);
      CHECK(*in.exclusive_cover_minimum >= 1);
    }
  }
}
