#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <cmath>
#include <cstdint>
#include <string>

#include "hspec/errors.hpp"

namespace hspec {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::rational<BigInt>;

inline Rat rat(long long n, long long d = 1) { return Rat(BigInt(n), BigInt(d)); }

inline double to_double(const Rat& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

struct Rationalized {
  Rat value;
  bool exact = true;  // false when the float was only approximated
};

// Best rational approximation with denominator <= max_den (Stern-Brocot /
// continued fractions). Boundary and vertex tests are meaningless in floating
// point, so all region logic runs on these.
inline Rationalized rationalize(double x, long long max_den = 1000000) {
  if (!std::isfinite(x)) throw parameter_error("rationalize: non-finite input");
  const bool neg = x < 0.0;
  double v = std::fabs(x);
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;  // convergents
  double frac = v;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(frac);
    if (fl > 9.0e18) break;
    const long long a = static_cast<long long>(fl);
    if (q0 + (q1 > 0 ? a * q1 : 0) > max_den && it > 0) break;
    const long long p2 = a * p1 + p0;
    const long long q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double rem = frac - fl;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) {  // did not even capture the integer part
    p1 = static_cast<long long>(std::llround(v));
    q1 = 1;
  }
  Rationalized out;
  out.value = Rat(BigInt(neg ? -p1 : p1), BigInt(q1));
  out.exact = std::fabs(to_double(out.value) - x) <= 1e-12 * std::max(1.0, std::fabs(x));
  return out;
}

}  // namespace hspec
