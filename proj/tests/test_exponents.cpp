#include <catch2/catch_amalgamated.hpp>

#include "hspec/exponents.hpp"
#include "hspec/rng.hpp"

using namespace hspec;

TEST_CASE("special points at d = 3") {
  const auto s = special_points(3);
  REQUIRE(s.A == ExponentPoint{rat(5, 6), rat(1, 2)});
  REQUIRE(s.B == ExponentPoint{rat(11, 12), rat(1, 4)});
  REQUIRE(s.D == ExponentPoint{rat(5, 6), rat(1, 6)});
  REQUIRE(s.B_dual == ExponentPoint{rat(3, 4), rat(1, 12)});
  REQUIRE(s.A_dual == ExponentPoint{rat(1, 2), rat(1, 6)});
  REQUIRE_THROWS_AS(special_points(2), parameter_error);
}

TEST_CASE("exact identities across dimensions") {
  for (int d = 3; d <= 12; ++d) {
    const auto s = special_points(d);
    REQUIRE(s.B.x - s.B.y == Rat(2) / Rat(BigInt(d)));
    REQUIRE(s.B_dual.x - s.B_dual.y == Rat(2) / Rat(BigInt(d)));
    REQUIRE(s.B.x + s.B_dual.x == Rat(2) * s.D.x);
    REQUIRE(s.B.y + s.B_dual.y == Rat(2) * s.D.y);
    REQUIRE(s.A.x == s.D.x);
  }
}

TEST_CASE("duality map") {
  const ExponentPoint c{rat(1, 2), rat(1, 2)};
  REQUIRE(dual(c) == c);
  const ExponentPoint p{rat(7, 9), rat(2, 11)};
  REQUIRE(dual(dual(p)) == p);
  REQUIRE(dual(special_points(3).B) == special_points(3).B_dual);
}

TEST_CASE("region classification") {
  const auto s = special_points(3);
  REQUIRE(region_contains(s.center, 3) == RegionLocation::boundary);
  REQUIRE(region_contains(s.A, 3) == RegionLocation::boundary);
  REQUIRE(region_contains(s.B, 3) == RegionLocation::excluded_vertex);
  REQUIRE(region_contains(s.B_dual, 3) == RegionLocation::excluded_vertex);
  REQUIRE(region_contains(ExponentPoint{rat(3, 4), rat(1, 3)}, 3) == RegionLocation::inside);
  REQUIRE(region_contains(ExponentPoint{rat(99, 100), rat(1, 100)}, 3) == RegionLocation::outside);
  REQUIRE(region_contains(ExponentPoint{rat(1, 4), rat(1, 4)}, 3) == RegionLocation::outside);
  // interior of an edge
  const ExponentPoint mid_top{(s.center.x + s.A.x) / Rat(2), rat(1, 2)};
  REQUIRE(region_contains(mid_top, 3) == RegionLocation::boundary);
}

TEST_CASE("duality closure of the region") {
  Rng rng(6);
  for (int d : {3, 4, 7}) {
    for (int trial = 0; trial < 200; ++trial) {
      const ExponentPoint p{Rat(BigInt(rng.uniform_int(0, 48)), BigInt(48)),
                            Rat(BigInt(rng.uniform_int(0, 48)), BigInt(48))};
      REQUIRE(region_contains(p, d) == region_contains(dual(p), d));
    }
  }
}

TEST_CASE("critical open segment") {
  const auto s = special_points(3);
  REQUIRE(on_critical_open_segment(s.D, 3));
  REQUIRE_FALSE(on_critical_open_segment(s.B, 3));
  REQUIRE_FALSE(on_critical_open_segment(s.B_dual, 3));
  REQUIRE_FALSE(on_critical_open_segment(s.center, 3));
  // all region points off the segment satisfy x - y < 2/d
  for (int num_x = 0; num_x <= 24; ++num_x) {
    for (int num_y = 0; num_y <= 24; ++num_y) {
      const ExponentPoint p{Rat(BigInt(num_x), BigInt(24)), Rat(BigInt(num_y), BigInt(24))};
      const auto loc = region_contains(p, 3);
      if (loc == RegionLocation::inside || loc == RegionLocation::boundary)
        REQUIRE(p.x - p.y <= Rat(2) / Rat(3));
    }
  }
}

TEST_CASE("admissibility: the worked example") {
  CarlemanParams cp;
  cp.alpha = 0.7;
  cp.p = 4.0 / 3.0;
  cp.q = 3.0;
  cp.r = cp.s = 2.0;
  cp.a = cp.b = 2.0;
  cp.d = 3;
  const auto rep = carleman_admissible(cp, 3);
  REQUIRE(rep.ok);
  REQUIRE(rep.beta == Catch::Approx(-0.6).epsilon(1e-12));
  REQUIRE(rep.gamma == Catch::Approx(0.625).epsilon(1e-12));
  REQUIRE(rep.beta_gap == Catch::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("admissibility: critical branch at the segment midpoint") {
  CarlemanParams cp;
  cp.alpha = 0.8;
  cp.p = 6.0 / 5.0;
  cp.q = 6.0;
  cp.r = cp.s = 2.0;
  cp.a = cp.b = 2.0;
  cp.d = 3;
  REQUIRE(carleman_admissible(cp, 3).ok);
  cp.a = cp.b = 3.0;  // critical branch requires a = b = 2
  const auto bad = carleman_admissible(cp, 3);
  REQUIRE_FALSE(bad.ok);
}

TEST_CASE("admissibility: p = 2 rejected off the critical line") {
  CarlemanParams cp;
  cp.alpha = 0.7;
  cp.p = 2.0;
  cp.q = 4.0;
  cp.r = cp.s = 2.0;
  cp.a = cp.b = 2.0;
  cp.d = 3;
  const auto rep = carleman_admissible(cp, 3);
  REQUIRE_FALSE(rep.ok);
  bool mentioned = false;
  for (const auto& v : rep.violations) mentioned |= v.find("p != 2") != std::string::npos;
  REQUIRE(mentioned);
}

TEST_CASE("admissibility: removed time endpoints flagged distinctly") {
  CarlemanParams cp;
  cp.alpha = 0.7;
  cp.p = 4.0 / 3.0;
  cp.q = 3.0;
  cp.d = 3;
  cp.a = cp.b = 2.0;
  // gamma = 5/8; the removed endpoint (1/r, 1/s) = (1, gamma) -> r = 1, s = 8/5
  cp.r = 1.0;
  cp.s = 8.0 / 5.0;
  const auto rep = carleman_admissible(cp, 3);
  REQUIRE_FALSE(rep.ok);
  bool mentioned = false;
  for (const auto& v : rep.violations) mentioned |= v.find("endpoint") != std::string::npos;
  REQUIRE(mentioned);
}

TEST_CASE("admissibility: integer beta rejected") {
  CarlemanParams cp;
  cp.alpha = 1.0;  // beta = 2 - 1 - 1 = 0
  cp.p = 4.0 / 3.0;
  cp.q = 3.0;
  cp.r = cp.s = 2.0;
  cp.a = cp.b = 2.0;
  cp.d = 3;
  REQUIRE_FALSE(carleman_admissible(cp, 3).ok);
}

TEST_CASE("potential class inequality") {
  REQUIRE(potential_class_ok(1.5, INFINITY, 3));       // (d/2, inf): equality
  REQUIRE_FALSE(potential_class_ok(1.5, 2.0, 3));      // 1 + 1/2 > 1
  REQUIRE(potential_class_ok(INFINITY, 1.0, 3));       // 0 + 1 <= 1
  REQUIRE(potential_class_ok(3.0, 2.0, 3));            // 1/2 + 1/2 = 1
  REQUIRE_FALSE(potential_class_ok(2.9, 2.0, 3));
  REQUIRE_THROWS_AS(potential_class_ok(0.5, 2.0, 3), parameter_error);
}

TEST_CASE("rationalization flags inexact floats") {
  bool exact = true;
  exponent_point(5.0 / 6.0, 1.0 / 6.0, &exact);
  REQUIRE(exact);
  exponent_point(0.8333333, 1.0 / 6.0, &exact);  // not 5/6 to double precision
  REQUIRE_FALSE(exact);
}
