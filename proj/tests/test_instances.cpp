#include <doctest.h>

#include <fstream>
#include <functional>

#include "minply/error.hpp"
#include "minply/instances.hpp"
#include "support.hpp"

using namespace minply;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_SUITE("instances") {
  TEST_CASE("line generator") {
    GenParams p;
    p.n = 0;
    p.m = 1;
    const Instance empty = gen_line_instance(p, 7);
    CHECK(empty.points.empty());
    CHECK(empty.squares.size() == 1);

    p.n = 5;
    p.m = 5;
    const Instance a = gen_line_instance(p, 42);
    CHECK_NOTHROW(validate_instance(a));
    CHECK(a.seed == 42u);
    for (const Point& q : a.points) CHECK(q.y < 0.0);
    CHECK(to_json(a) == to_json(gen_line_instance(p, 42)));
    CHECK(to_json(a) != to_json(gen_line_instance(p, 43)));
  }

  TEST_CASE("two-sided line instances use both sides") {
    GenParams p;
    p.two_sided = true;
    p.n = 30;
    const Instance inst = gen_line_instance(p, 9);
    const auto below = std::count_if(inst.points.begin(), inst.points.end(),
                                     [](const Point& q) { return q.y < 0; });
    CHECK(below > 0);
    CHECK(below < 30);
  }

  TEST_CASE("slab generator alternates the lines") {
    GenParams p;
    p.m = 2;
    const Instance inst = gen_slab_instance(p, 3);
    REQUIRE(inst.squares.size() == 2);
    CHECK(square_meets_line(inst.squares[0], 0.0));
    CHECK(square_meets_line(inst.squares[1], 1.0));
    for (const Point& q : inst.points) CHECK((q.y > 0.0 && q.y < 1.0));
    CHECK(inst == gen_slab_instance(p, 3));
  }

  TEST_CASE("general generator covers every point") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const Instance inst = gen_general_instance(GenParams{}, seed);
      for (const Point& q : inst.points) {
        CHECK(std::any_of(inst.squares.begin(), inst.squares.end(),
                          [&](const UnitSquare& s) { return contains(s, q); }));
        CHECK(q.y >= 0.0);
        CHECK(q.y <= 3.0);
      }
    }
  }

  TEST_CASE("generators reject bad parameters and give up after the retry limit") {
    GenParams p;
    p.n = -1;
    CHECK(code_of([&] { gen_line_instance(p, 1); }) == ErrorCode::kInvalidArgument);
    p = GenParams{};
    p.jitter = 1.0;
    CHECK(code_of([&] { gen_slab_instance(p, 1); }) == ErrorCode::kInvalidArgument);
    p = GenParams{};
    p.n = 60;
    p.jitter = 0.01;
    p.retry_limit = 1;
    CHECK(code_of([&] { gen_line_instance(p, 1); }) == ErrorCode::kGenerationFailed);
  }

  TEST_CASE("instance round trip") {
    const Instance a = support::instance_a();
    CHECK(instance_from_json(to_json(a)) == a);
    support::TempDir dir;
    write_instance(a, dir.file("a.json"));
    CHECK(read_instance(dir.file("a.json")) == a);

    Instance s = gen_slab_instance(GenParams{}, 11);
    CHECK(instance_from_json(to_json(s)) == s);
    Instance g = gen_general_instance(GenParams{}, 12);
    g.seed.reset();
    CHECK(instance_from_json(to_json(g)) == g);
  }

  TEST_CASE("numbers are written in shortest round-trip form") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-0.3) == "-0.3");
    CHECK(format_number(2.0) == "2");
    const double tricky = 0.1 + 0.2;
    CHECK(std::stod(format_number(tricky)) == tricky);
  }

  TEST_CASE("validation failures name the invariant") {
    Instance a = support::instance_a();
    a.squares[2].x_left = 0.8;
    a.points[2].x = 1.7;
    try {
      validate_instance(a);
      FAIL("expected ValidationError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kValidationError);
      CHECK(std::string(e.what()).find("distinct_x_left") != std::string::npos);
    }

    Instance b = support::instance_a();
    b.points.push_back({9.0, -0.5, 3});
    try {
      instance_from_json(to_json(b));
      FAIL("expected ValidationError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kValidationError);
      CHECK(std::string(e.what()).find("point_covered") != std::string::npos);
    }

    Instance c = support::instance_a();
    c.squares[0].y_top = 3.0;
    c.points.erase(c.points.begin());
    for (std::size_t i = 0; i < c.points.size(); ++i) c.points[i].id = static_cast<int>(i);
    CHECK(code_of([&] { validate_instance(c); }) == ErrorCode::kValidationError);
  }

  TEST_CASE("parse errors carry the line number") {
    const std::string text = "{\n  \"format\": \"minply-instance/1\",\n  \"name\": oops\n}\n";
    try {
      instance_from_json(text);
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kParseError);
      CHECK(e.subject() == 3);
    }
    CHECK(code_of([] { instance_from_json("{\"format\": \"minply-instance/1\"}"); }) ==
          ErrorCode::kParseError);
    CHECK(code_of([] { instance_from_json("{\"format\": \"other/9\"}"); }) ==
          ErrorCode::kParseError);
    CHECK(code_of([] { read_instance("/nonexistent/minply.json"); }) == ErrorCode::kParseError);
  }

  TEST_CASE("solution round trip") {
    const Instance a = support::instance_a();
    Solution s;
    s.instance = a.name;
    s.instance_hash = instance_hash(a);
    s.mode = "full";
    s.ply = 2;
    s.squares = {0, 1, 2};
    s.parts.push_back({"slab", 0, SlabContext{-1.0, 0.0}, {0, 1, 2}, 2});
    s.witness = PlyRegion{{1.6, 1.8, -0.5, 0.4}, 2, {1, 2}, Anchor::kUnanchored};
    CHECK(solution_from_json(to_json(s)) == s);
    CHECK(instance_hash(a) != instance_hash(gen_line_instance(GenParams{}, 1)));
  }
}
