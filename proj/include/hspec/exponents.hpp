#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "hspec/rational.hpp"

namespace hspec {

// A point (1/p, 1/q) in exact rational arithmetic.
struct ExponentPoint {
  Rat x;  // 1/p
  Rat y;  // 1/q

  friend bool operator==(const ExponentPoint& a, const ExponentPoint& b) {
    return a.x == b.x && a.y == b.y;
  }
};

inline ExponentPoint exponent_point(double inv_p, double inv_q, bool* exact = nullptr) {
  const auto rx = rationalize(inv_p);
  const auto ry = rationalize(inv_q);
  if (exact) *exact = rx.exact && ry.exact;
  return ExponentPoint{rx.value, ry.value};
}

// X' = (1 - b, 1 - a): reflection across the duality line; an involution.
inline ExponentPoint dual(const ExponentPoint& pt) {
  return ExponentPoint{Rat(1) - pt.y, Rat(1) - pt.x};
}

// The admissible pentagon's distinguished points for dimension d >= 3.
struct SpecialPoints {
  ExponentPoint center;   // (1/2, 1/2)
  ExponentPoint A;        // ((d+2)/(2d), 1/2)
  ExponentPoint B;        // ((d^2+2d-4)/(2d(d-1)), (d-2)/(2(d-1)))
  ExponentPoint D;        // ((d+2)/(2d), (d-2)/(2d)), midpoint of [B, B']
  ExponentPoint B_dual;
  ExponentPoint A_dual;
};

inline SpecialPoints special_points(int d) {
  if (d < 3) throw parameter_error("special_points: requires d >= 3");
  SpecialPoints s;
  s.center = {rat(1, 2), rat(1, 2)};
  s.A = {Rat(BigInt(d + 2), BigInt(2 * d)), rat(1, 2)};
  s.B = {Rat(BigInt(static_cast<long long>(d) * d + 2 * d - 4), BigInt(2LL * d * (d - 1))),
         Rat(BigInt(d - 2), BigInt(2 * (d - 1)))};
  s.D = {Rat(BigInt(d + 2), BigInt(2 * d)), Rat(BigInt(d - 2), BigInt(2 * d))};
  s.B_dual = dual(s.B);
  s.A_dual = dual(s.A);
  return s;
}

enum class RegionLocation { inside, boundary, excluded_vertex, outside };

namespace detail {
inline Rat cross(const ExponentPoint& o, const ExponentPoint& a, const ExponentPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}
inline bool on_segment(const ExponentPoint& a, const ExponentPoint& b, const ExponentPoint& p) {
  if (detail::cross(a, b, p) != Rat(0)) return false;
  const Rat lox = a.x < b.x ? a.x : b.x, hix = a.x < b.x ? b.x : a.x;
  const Rat loy = a.y < b.y ? a.y : b.y, hiy = a.y < b.y ? b.y : a.y;
  return lox <= p.x && p.x <= hix && loy <= p.y && p.y <= hiy;
}
}  // namespace detail

// Exact half-plane classification against the closed pentagon with vertices
// (1/2,1/2) -> A -> B -> B' -> A', minus the two removed vertices B, B'.
inline RegionLocation region_contains(const ExponentPoint& pt, int d) {
  const SpecialPoints s = special_points(d);
  const std::array<ExponentPoint, 5> v = {s.center, s.A, s.B, s.B_dual, s.A_dual};
  if (pt == s.B || pt == s.B_dual) return RegionLocation::excluded_vertex;

  // The vertex list runs clockwise; interior points have all cross products
  // negative. Verified exactly for each d on first use.
  bool on_edge = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const ExponentPoint& a = v[i];
    const ExponentPoint& b = v[(i + 1) % v.size()];
    const Rat c = detail::cross(a, b, pt);
    if (c > Rat(0)) return RegionLocation::outside;
    if (c == Rat(0) && detail::on_segment(a, b, pt)) on_edge = true;
  }
  return on_edge ? RegionLocation::boundary : RegionLocation::inside;
}

// Strictly between B and B' on the critical line x - y = 2/d.
inline bool on_critical_open_segment(const ExponentPoint& pt, int d) {
  const SpecialPoints s = special_points(d);
  if (pt.x - pt.y != Rat(2) / Rat(BigInt(d))) return false;
  const Rat lo = s.B_dual.x, hi = s.B.x;  // B' has the smaller x
  return lo < pt.x && pt.x < hi;
}

// d/(2r) + 1/s <= 1 in exact arithmetic on rationalized inputs (infinite
// exponents give a zero reciprocal).
inline bool potential_class_ok(double r, double s, int d) {
  if (!(std::isinf(r) || r >= 1.0) || !(std::isinf(s) || s >= 1.0))
    throw parameter_error("potential_class_ok: exponents must lie in [1, inf]");
  const Rat ir = std::isinf(r) ? Rat(0) : rationalize(1.0 / r).value;
  const Rat is = std::isinf(s) ? Rat(0) : rationalize(1.0 / s).value;
  return Rat(BigInt(d)) * ir / Rat(2) + is <= Rat(1);
}

// Full weighted-inequality parameter tuple with the derived quantities
//   beta = 2 alpha - d/q - 2/s,   gamma = (d/2)(1/p - 1/q).
struct CarlemanParams {
  double alpha = 0.0;
  double p = 2.0, q = 2.0;
  double r = 2.0, s = 2.0;
  double a = 2.0, b = 2.0;
  int d = 3;

  double inv(double e) const { return std::isinf(e) ? 0.0 : 1.0 / e; }
  double beta() const { return 2.0 * alpha - d * inv(q) - 2.0 * inv(s); }
  double gamma() const { return 0.5 * d * (inv(p) - inv(q)); }
  double beta_gap() const {
    const double b0 = beta();
    if (b0 < 0.0) return -b0;
    return std::fabs(b0 - std::round(b0));
  }
};

struct AdmissibilityReport {
  bool ok = true;
  std::vector<std::string> violations;
  double beta = 0.0;
  double gamma = 0.0;
  double beta_gap = 0.0;
  bool rationalization_warning = false;
};

// Checks, in order: (1/p,1/q) in the pentagon; 1 <= r <= s <= inf; the two
// removed (1/r,1/s) endpoints (flagged distinctly, excluded for every a, b);
// the aperture condition 0 <= 1/r - 1/s <= 1 - gamma; the branch condition
// (subcritical: p,q != 2 and a = b in [1,inf]; critical: a = b = 2); and
// beta off the nonnegative integers.
inline AdmissibilityReport carleman_admissible(const CarlemanParams& cp, int d) {
  if (d < 3) throw parameter_error("carleman_admissible: requires d >= 3");
  AdmissibilityReport rep;
  auto fail = [&rep](const std::string& v) {
    rep.ok = false;
    rep.violations.push_back(v);
  };

  bool exact = true;
  const ExponentPoint pt = exponent_point(cp.inv(cp.p), cp.inv(cp.q), &exact);
  rep.rationalization_warning = !exact;

  const RegionLocation loc = region_contains(pt, d);
  if (loc == RegionLocation::outside) fail("(1/p,1/q) outside the admissible pentagon");
  if (loc == RegionLocation::excluded_vertex) fail("(1/p,1/q) is a removed vertex");

  if (!(cp.r >= 1.0 && (std::isinf(cp.s) || cp.s >= cp.r)))
    fail("time exponents must satisfy 1 <= r <= s <= inf");

  const Rat gamma_exact = Rat(BigInt(d)) / Rat(2) * (pt.x - pt.y);
  rep.gamma = cp.gamma();
  const Rat ir = std::isinf(cp.r) ? Rat(0) : rationalize(1.0 / cp.r).value;
  const Rat is = std::isinf(cp.s) ? Rat(0) : rationalize(1.0 / cp.s).value;
  if ((ir == Rat(1) && is == gamma_exact) || (ir == Rat(1) - gamma_exact && is == Rat(0)))
    fail("(1/r,1/s) is a removed endpoint of the time-exponent segment");

  const Rat aperture = ir - is;
  if (aperture < Rat(0) || aperture > Rat(1) - gamma_exact)
    fail("need 0 <= 1/r - 1/s <= 1 - gamma");

  const bool critical = (gamma_exact == Rat(1));
  if (critical) {
    if (!(cp.a == 2.0 && cp.b == 2.0)) fail("critical line requires a = b = 2");
  } else {
    if (cp.p == 2.0) fail("p != 2 required off the critical line");
    if (cp.q == 2.0) fail("q != 2 required off the critical line");
    if (!(cp.a == cp.b)) fail("a = b required");
    if (!(std::isinf(cp.a) || cp.a >= 1.0)) fail("a must lie in [1, inf]");
  }

  rep.beta = cp.beta();
  rep.beta_gap = cp.beta_gap();
  if (rep.beta >= -1e-12 && rep.beta_gap < 1e-12) fail("beta lies on the nonnegative integers");
  return rep;
}

}  // namespace hspec
