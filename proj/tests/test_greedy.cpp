#include <doctest.h>

#include "minply/error.hpp"
#include "minply/greedy.hpp"
#include "minply/instances.hpp"
#include "support.hpp"

using namespace minply;

namespace {

CoverEntry entry(int ply, Rect rect, std::vector<SquareId> clique,
                 Anchor anchor = Anchor::kUnanchored) {
  CoverEntry e;
  e.feasible = true;
  e.ply = ply;
  e.squares = clique;
  e.region = PlyRegion{rect, ply, clique, anchor};
  return e;
}

}  // namespace

TEST_SUITE("greedy_line") {
  TEST_CASE("compare_covers rules") {
    const auto line = CriteriaMode::kLine;
    CHECK(compare_covers(entry(1, {0, 1, 0, 1}, {0}), entry(2, {0, 0.5, 0, 1}, {1, 2}), line) < 0);
    CHECK(compare_covers(entry(2, {0.5, 1.0, 0, 1}, {0, 1}), entry(2, {1.0, 1.5, 0, 1}, {1, 2}),
                         line) < 0);
    CHECK(compare_covers(entry(2, {0.8, 1.0, 0, 1}, {3, 4}), entry(2, {0.6, 1.0, 0, 1}, {0, 1}),
                         line) < 0);
    CHECK(compare_covers(entry(2, {0.8, 1.0, 0, 1}, {0, 1}), entry(2, {0.8, 1.0, 0, 1}, {0, 2}),
                         line) < 0);
    CHECK(compare_covers(entry(2, {0.8, 1.0, 0, 1}, {0, 1}), entry(2, {0.8, 1.0, 0, 1}, {0, 1}),
                         line) == 0);
  }

  TEST_CASE("slab criteria prefer floating regions after ply") {
    const CoverEntry floating = entry(2, {1.0, 1.5, 0, 1}, {0, 1}, Anchor::kFloating);
    const CoverEntry anchored = entry(2, {0.2, 0.4, 0, 1}, {2, 3}, Anchor::kTop);
    CHECK(compare_covers(floating, anchored, CriteriaMode::kSlab) < 0);
    CHECK(compare_covers(floating, anchored, CriteriaMode::kLine) > 0);
    CHECK(compare_covers(entry(1, {1.0, 1.5, 0, 1}, {0}, Anchor::kTop), floating,
                         CriteriaMode::kSlab) < 0);
  }

  TEST_CASE("compare_covers rejects infeasible entries") {
    CHECK_THROWS_AS(compare_covers(CoverEntry{}, entry(1, {0, 1, 0, 1}, {0}), CriteriaMode::kLine),
                    Error);
  }

  TEST_CASE("compute_entry on instance A") {
    const Instance a = support::instance_a();
    GreedyTable table(a.squares, a.points, ClipRegion::below(0.0), CriteriaMode::kLine);
    const CoverEntry first = table.compute_entry(0, 0);
    CHECK(first.feasible);
    CHECK(first.squares == std::vector<SquareId>{0});
    CHECK(first.ply == 1);
    CHECK_FALSE(table.compute_entry(0, 1).feasible);
    table.fill_next_row();
    const CoverEntry second = table.compute_entry(1, 1);
    CHECK(second.squares == std::vector<SquareId>{0, 1});
    CHECK(second.ply == 2);
    REQUIRE(second.parent);
    CHECK(*second.parent == Cell{0, 0});
    CHECK_THROWS_AS(table.compute_entry(2, 0), Error);
  }

  TEST_CASE("solve_mpcsihl1 examples") {
    const Instance a = support::instance_a();
    SUBCASE("instance A needs all three squares") {
      const CoverEntry e = solve_mpcsihl1(0.0, a.squares, a.points, Side::kBelow);
      CHECK(e.squares == std::vector<SquareId>{0, 1, 2});
      CHECK(e.ply == 2);
    }
    SUBCASE("without the middle point two disjoint squares suffice") {
      const std::vector<Point> pts = {a.points[0], a.points[2]};
      const CoverEntry e = solve_mpcsihl1(0.0, a.squares, pts, Side::kBelow);
      CHECK(e.squares == std::vector<SquareId>{0, 2});
      CHECK(e.ply == 1);
    }
    SUBCASE("single forced square") {
      const std::vector<UnitSquare> sq = {{0.0, 0.5, 0}};
      const std::vector<Point> pts = {{0.5, -0.2, 0}};
      const CoverEntry e = solve_mpcsihl1(0.0, sq, pts, Side::kBelow);
      CHECK(e.squares == std::vector<SquareId>{0});
      CHECK(e.ply == 1);
    }
    SUBCASE("no points") {
      const CoverEntry e = solve_mpcsihl1(0.0, a.squares, std::vector<Point>{}, Side::kBelow);
      CHECK(e.feasible);
      CHECK(e.ply == 0);
      CHECK(e.squares.empty());
    }
  }

  TEST_CASE("solve_mpcsihl1 validates its input") {
    const Instance a = support::instance_a();
    std::vector<Point> pts = a.points;
    pts.push_back({5.0, -0.5, 3});
    try {
      solve_mpcsihl1(0.0, a.squares, pts, Side::kBelow);
      FAIL("expected UncoveredPoint");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kUncoveredPoint);
      CHECK(e.subject() == 3);
    }
    std::vector<UnitSquare> sq = a.squares;
    sq.push_back({4.0, 2.0, 3});
    try {
      solve_mpcsihl1(0.0, sq, a.points, Side::kBelow);
      FAIL("expected SquareMissesLine");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kSquareMissesLine);
    }
    try {
      solve_mpcsihl1(0.0, a.squares, a.points, Side::kAbove);
      FAIL("expected PointOffSide");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kPointOffSide);
    }
  }

  TEST_CASE("points above the line are solved by reflection") {
    const Instance a = support::instance_a();
    std::vector<UnitSquare> sq;
    for (const auto& s : a.squares) sq.push_back({s.x_left, 1.0 - s.y_top, s.id});
    std::vector<Point> pts;
    for (const auto& p : a.points) pts.push_back({p.x, -p.y, p.id});
    const CoverEntry e = solve_mpcsihl1(0.0, sq, pts, Side::kAbove);
    CHECK(e.squares == std::vector<SquareId>{0, 1, 2});
    CHECK(e.ply == 2);
    REQUIRE(e.region);
    CHECK(e.region->rect.y_lo >= 0.0);
  }

  TEST_CASE("parent chains have one cell per row") {
    const Instance a = support::instance_a();
    GreedyTable table(a.squares, a.points, ClipRegion::below(0.0), CriteriaMode::kLine);
    table.fill();
    const auto best = table.best_in_row(2);
    REQUIRE(best);
    const auto chain = table.trace_parents(*best);
    REQUIRE(chain.size() == 3);
    for (std::size_t k = 0; k < chain.size(); ++k) CHECK(chain[k].row == 2 - static_cast<int>(k));
    CHECK(table.trace_parents(Cell{0, 0}) == std::vector<Cell>{Cell{0, 0}});
    CHECK_THROWS_AS(table.trace_parents(Cell{0, 1}), Error);
  }

  TEST_CASE("incremental table equals the literal id-set table") {
    for (double span : {1.0, 2.0, 3.0}) {
      for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        GenParams p;
        p.x_span = span;
        const Instance inst = gen_line_instance(p, seed);
        const CoverEntry fast =
            solve_greedy(inst.squares, inst.points, ClipRegion::below(0.0), CriteriaMode::kLine);
        const CoverEntry slow = support::naive_table(inst.squares, inst.points,
                                                     ClipRegion::below(0.0), CriteriaMode::kLine);
        CHECK(fast.squares == slow.squares);
        CHECK(fast.ply == slow.ply);
        CHECK(fast.region == slow.region);
      }
    }
  }

  TEST_CASE("solver ply equals the independent minimum") {
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
      GenParams p;
      p.n = 6;
      p.m = 7;
      p.x_span = 1.0 + (seed % 3);
      const Instance inst = gen_line_instance(p, seed);
      const CoverEntry e = solve_mpcsihl1(0.0, inst.squares, inst.points, Side::kBelow);
      CHECK(e.ply == support::min_ply(inst.points, inst.squares, ClipRegion::below(0.0)));
    }
  }

  TEST_CASE("row bounds, prefix monotonicity and determinism") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const Instance inst = gen_line_instance(GenParams{}, seed);
      GreedyTable table(inst.squares, inst.points, ClipRegion::below(0.0), CriteriaMode::kLine);
      table.fill();
      CHECK(table.stats().row_bound_violations == 0);
      CHECK(table.stats().row_bound_checks > 0);
      int last = 0;
      for (int row = 0; row < table.rows(); ++row) {
        const auto best = table.best_in_row(row);
        REQUIRE(best);
        const int ply = table.entry(*best).ply;
        CHECK(ply >= last);
        last = ply;
      }
      const CoverEntry again =
          solve_greedy(inst.squares, inst.points, ClipRegion::below(0.0), CriteriaMode::kLine);
      CHECK(table.entry(*table.best_in_row(table.rows() - 1)).squares == again.squares);
    }
  }
}
