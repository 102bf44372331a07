#include <catch2/catch_amalgamated.hpp>

#include "hspec/hermite.hpp"

namespace {
constexpr double kPi = 3.14159265358979323846;
}
#include "hspec/rng.hpp"

using namespace hspec;

TEST_CASE("hermite function point values and parity") {
  REQUIRE(hermite_h(0, 0.0) == Catch::Approx(std::pow(kPi, -0.25)).epsilon(1e-14));
  REQUIRE(hermite_h(1, 0.0) == 0.0);
  for (int n : {2, 5, 10, 41}) {
    for (double x : {0.3, 1.7, 4.2}) {
      const double plus = hermite_h(n, x), minus = hermite_h(n, -x);
      if (n % 2 == 0) REQUIRE(plus == Catch::Approx(minus).margin(1e-15));
      else REQUIRE(plus == Catch::Approx(-minus).margin(1e-15));
    }
  }
}

TEST_CASE("recurrence stays bounded and alive far out") {
  double sup = 0.0;
  for (double x = -60.0; x <= 60.0; x += 1.37) {
    const auto seq = hermite_sequence(2000, x);
    for (double v : seq) sup = std::max(sup, std::fabs(v));
  }
  REQUIRE(sup <= 1.1);
  // deep in the oscillatory region the value must not flush to zero
  REQUIRE(std::isfinite(hermite_h(10000, 50.0)));
  REQUIRE(std::fabs(hermite_h(10000, 50.0)) > 1e-3);
}

TEST_CASE("phi: products, parity zeros, dimension mismatch") {
  const std::vector<double> origin = {0.0, 0.0, 0.0};
  REQUIRE(phi(MultiIndex({0, 0, 0}), origin) == Catch::Approx(std::pow(kPi, -0.75)).epsilon(1e-13));
  REQUIRE(phi(MultiIndex({2, 1, 0}), origin) == 0.0);
  REQUIRE_THROWS_AS(phi(MultiIndex({1, 2}), origin), shape_error);
}

TEST_CASE("phi orthonormality through the quadrature") {
  const auto g = Grid::gauss_hermite(2, 12);
  const std::vector<MultiIndex> idx = {MultiIndex({0, 0}), MultiIndex({2, 1}), MultiIndex({1, 3}),
                                       MultiIndex({4, 0})};
  for (const auto& a : idx) {
    for (const auto& b : idx) {
      auto fa = sample(g, [&a](const double* x) { return phi(a, x, 2); });
      auto fb = sample(g, [&b](const double* x) { return phi(b, x, 2); });
      const double expect = (a == b) ? 1.0 : 0.0;
      REQUIRE(std::abs(quad_inner(fa, fb) - cplx(expect, 0.0)) < 1e-10);
    }
  }
}

TEST_CASE("level index enumeration") {
  const auto l23 = level_indices(2, 3);
  REQUIRE(l23.size() == 6);
  const std::vector<std::vector<int>> expect = {{2, 0, 0}, {1, 1, 0}, {1, 0, 1},
                                                {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
  for (std::size_t i = 0; i < expect.size(); ++i) REQUIRE(l23[i].components() == expect[i]);

  const auto l0 = level_indices(0, 4);
  REQUIRE(l0.size() == 1);
  REQUIRE(l0[0].components() == std::vector<int>{0, 0, 0, 0});

  const auto l51 = level_indices(5, 1);
  REQUIRE(l51.size() == 1);
  REQUIRE(l51[0].components() == std::vector<int>{5});

  for (int k : {0, 1, 3, 7})
    for (int d : {1, 2, 3, 4})
      REQUIRE(level_indices(k, d).size() == binom(k + d - 1, d - 1));
}

TEST_CASE("multiplicity identity") {
  for (int d : {1, 2, 3}) {
    for (int K : {0, 3, 8}) {
      std::uint64_t total = 0;
      for (int k = 0; k <= K; ++k) total += level_indices(k, d).size();
      REQUIRE(total == binom(K + d, d));
    }
  }
}

TEST_CASE("analyze picks out eigenfunction coefficients") {
  const auto g = Grid::gauss_hermite(2, 14);
  const MultiIndex beta({3, 2});
  auto f = sample(g, [&beta](const double* x) { return phi(beta, x, 2); });
  const auto sc = analyze(f, 8);
  for (const auto& [a, v] : sc.c) {
    const double expect = (a == beta) ? 1.0 : 0.0;
    REQUIRE(std::abs(v - cplx(expect, 0.0)) < 1e-10);
  }
}

TEST_CASE("analyze of zero, resolution guard, bessel inequality") {
  const auto g = Grid::gauss_hermite(1, 12);
  GridFunction zero(g);
  const auto z = analyze(zero, 6);
  for (const auto& [a, v] : z.c) REQUIRE(v == cplx(0.0, 0.0));

  GridFunction anything = sample(g, [](const double* x) { return std::exp(-x[0] * x[0]); });
  REQUIRE_THROWS_AS(analyze(anything, 11), resolution_error);
  REQUIRE_THROWS_AS(analyze(anything, 12), resolution_error);

  // Bessel: the captured coefficient mass never exceeds the grid L2 mass, and
  // matches it for band-limited data.
  Rng rng(3);
  SpectralCoefficients sc;
  sc.dim = 1;
  sc.k_max = 6;
  for (int k = 0; k <= 6; ++k) sc.c.emplace(MultiIndex({k}), cplx(rng.normal(), rng.normal()));
  const auto fg = synthesize(sc, g);
  const auto back = analyze(fg, 6);
  const double f2 = l2_norm(fg);
  REQUIRE(back.l2() <= f2 + 1e-12);
  REQUIRE(back.l2() == Catch::Approx(f2).margin(1e-8));
}

TEST_CASE("synthesize: round trip, single mode, linearity") {
  const auto g = Grid::gauss_hermite(2, 12);
  Rng rng(11);
  SpectralCoefficients sc;
  sc.dim = 2;
  sc.k_max = 7;
  for (int k = 0; k <= 7; ++k)
    for (const auto& a : level_indices(k, 2)) sc.c.emplace(a, cplx(rng.normal(), rng.normal()));
  const auto f = synthesize(sc, g);
  const auto back = analyze(f, 7);
  double err2 = 0;
  for (const auto& [a, v] : back.c) err2 += std::norm(v - sc.coeff(a));
  REQUIRE(std::sqrt(err2) < 1e-8);

  const MultiIndex alpha({2, 4});
  const auto single = synthesize(eigenfunction(alpha), g);
  const auto direct = sample(g, [&alpha](const double* x) { return phi(alpha, x, 2); });
  for (std::size_t i = 0; i < single.size(); ++i)
    REQUIRE(std::abs(single[i] - direct[i]) < 1e-12);

  SpectralCoefficients sc2 = sc;
  sc2 *= cplx(0.0, 2.0);
  const auto sum = synthesize(sc + sc2, g);
  const auto f2 = synthesize(sc2, g);
  for (std::size_t i = 0; i < sum.size(); ++i)
    REQUIRE(std::abs(sum[i] - (f[i] + f2[i])) < 1e-12 * (1.0 + std::abs(sum[i])));

  SpectralCoefficients wrongdim = sc;
  wrongdim.dim = 1;
  REQUIRE_THROWS_AS(synthesize(wrongdim, g), shape_error);
}

TEST_CASE("eigenrelation through the quadratic form") {
  const auto g = Grid::gauss_hermite(1, 20);
  Rng rng(7);
  SpectralCoefficients sc;
  sc.dim = 1;
  sc.k_max = 9;
  for (int k = 0; k <= 9; ++k) sc.c.emplace(MultiIndex({k}), cplx(rng.normal(), rng.normal()));
  double quad_form = 0;
  for (const auto& [a, v] : sc.c) quad_form += (2.0 * a.degree() + 1.0) * std::norm(v);

  SpectralCoefficients hf = sc;
  for (auto& [a, v] : hf.c) v *= (2.0 * a.degree() + 1.0);
  const cplx inner = quad_inner(synthesize(hf, g), synthesize(sc, g));
  REQUIRE(std::abs(inner - cplx(quad_form, 0.0)) < 1e-8);
}
