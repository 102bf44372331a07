#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "hspec/errors.hpp"

namespace hspec {

namespace detail {

// State for the normalized three-term recurrence
//   h_{n+1}(x) = x sqrt(2/(n+1)) h_n(x) - sqrt(n/(n+1)) h_{n-1}(x),
// seeded h_0(x) = pi^{-1/4} e^{-x^2/2}.
//
// The normalized functions are O(1) in the classically allowed region, but
// the seed underflows for |x| beyond ~38 and the recurrence then climbs back
// through hundreds of binades before reaching the turning point. We therefore
// carry an explicit power-of-two exponent alongside the two running values.
struct ScaledHermiteIter {
  double prev = 0.0;   // h_{n-1} mantissa
  double cur = 0.0;    // h_n mantissa
  long exp2 = 0;       // shared scale: true value = mantissa * 2^exp2
  int n = 0;
  double x = 0.0;

  explicit ScaledHermiteIter(double x_) : x(x_) {
    // log2 h_0(x) = -log2(pi)/4 - x^2 / (2 ln 2)
    const double l2 = -0.25 * std::log2(3.14159265358979323846)
                      - x * x * (0.5 * 1.44269504088896340736);
    const double fl = std::floor(l2);
    exp2 = static_cast<long>(fl);
    cur = std::exp2(l2 - fl);
  }

  void advance() {  // n -> n+1
    const double next = x * std::sqrt(2.0 / (n + 1)) * cur
                        - std::sqrt(static_cast<double>(n) / (n + 1)) * prev;
    prev = cur;
    cur = next;
    ++n;
    const double m = std::max(std::fabs(prev), std::fabs(cur));
    if (m > 0x1.0p+500 || (m > 0.0 && m < 0x1.0p-500)) {
      int e = 0;
      std::frexp(m, &e);
      prev = std::ldexp(prev, -e);
      cur = std::ldexp(cur, -e);
      exp2 += e;
    }
  }

  double value() const {
    if (cur == 0.0) return 0.0;
    if (exp2 < -1400) return 0.0;  // underflows even after the ldexp
    return std::ldexp(cur, static_cast<int>(exp2));
  }
};

}  // namespace detail

// L^2(R)-normalized Hermite function h_n(x). Total on n >= 0; values stay
// bounded (|h_n| <= ~1.09) so there is no overflow for any n, x in range.
inline double hermite_h(int n, double x) {
  if (n < 0) throw parameter_error("hermite_h: n must be nonnegative");
  detail::ScaledHermiteIter it(x);
  for (int k = 0; k < n; ++k) it.advance();
  return it.value();
}

// h_0(x), ..., h_{n_max}(x) in one recurrence pass.
inline void hermite_sequence(int n_max, double x, double* out) {
  detail::ScaledHermiteIter it(x);
  out[0] = it.value();
  for (int k = 1; k <= n_max; ++k) {
    it.advance();
    out[k] = it.value();
  }
}

inline std::vector<double> hermite_sequence(int n_max, double x) {
  std::vector<double> v(static_cast<std::size_t>(n_max) + 1);
  hermite_sequence(n_max, x, v.data());
  return v;
}

// h_n'(x) = sqrt(2n) h_{n-1}(x) - x h_n(x)
inline double hermite_h_deriv(int n, double x) {
  if (n == 0) return -x * hermite_h(0, x);
  detail::ScaledHermiteIter it(x);
  for (int k = 0; k < n - 1; ++k) it.advance();
  const double hm1 = it.value();
  it.advance();
  const double hn = it.value();
  return std::sqrt(2.0 * n) * hm1 - x * hn;
}

// Gauss-Hermite rule with the e^{+x^2} factor folded into the weights:
// sum_i w_i f(x_i) ~ integral of f over R for f with Gaussian decay, exact
// for f = (polynomial of degree <= 2n-1) * e^{-x^2}.
struct GaussHermiteRule {
  std::vector<double> nodes;    // ascending, symmetric about 0
  std::vector<double> weights;  // adjusted: w_i = wGH_i * e^{+x_i^2}
};

namespace detail {

inline GaussHermiteRule make_gauss_hermite(int n) {
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = 0.0;
    const double h0 = hermite_h(0, 0.0);
    rule.weights[0] = 1.0 / (h0 * h0);
    return rule;
  }

  // Golub-Welsch: nodes are eigenvalues of the Jacobi matrix with zero
  // diagonal and off-diagonal sqrt(k/2).
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

  for (int i = 0; i < n; ++i) {
    double x = es.eigenvalues()[i];
    // Newton polish on h_n; at a root, h_n'(x) = sqrt(2n) h_{n-1}(x).
    for (int it = 0; it < 3; ++it) {
      ScaledHermiteIter s(x);
      for (int k = 0; k < n - 1; ++k) s.advance();
      const double hm1 = s.value();
      s.advance();
      const double hn = s.value();
      const double dh = std::sqrt(2.0 * n) * hm1 - x * hn;
      if (dh == 0.0) break;
      x -= hn / dh;
    }
    rule.nodes[i] = x;
  }

  // Enforce exact symmetry of the computed rule.
  for (int i = 0; i < n / 2; ++i) {
    const double s = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    rule.nodes[i] = -s;
    rule.nodes[n - 1 - i] = s;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;

  // Adjusted weight at a node: 1 / sum_{k<n} h_k(x)^2. (The classical GH
  // weight is e^{-x^2} / sum_{k<n} p_k(x)^2 with orthonormal polynomials
  // p_k = h_k e^{+x^2/2}; folding e^{+x^2} cancels the Gaussian exactly.)
  std::vector<double> hs(n);
  for (int i = 0; i < n; ++i) {
    hermite_sequence(n - 1, rule.nodes[i], hs.data());
    double s2 = 0.0;
    for (int k = 0; k < n; ++k) s2 += hs[k] * hs[k];
    rule.weights[i] = 1.0 / s2;
  }
  for (int i = 0; i < n / 2; ++i) {
    const double w = 0.5 * (rule.weights[i] + rule.weights[n - 1 - i]);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace detail

inline const GaussHermiteRule& gauss_hermite_rule(int n) {
  if (n < 1) throw parameter_error("gauss_hermite_rule: need n >= 1 nodes");
  static std::mutex mu;
  static std::unordered_map<int, std::unique_ptr<GaussHermiteRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::make_unique<GaussHermiteRule>(detail::make_gauss_hermite(n))).first;
  }
  return *it->second;
}

}  // namespace hspec
