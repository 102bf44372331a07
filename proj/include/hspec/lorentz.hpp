#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "hspec/grid.hpp"

namespace hspec {

// Decreasing rearrangement of |f| over weighted cells: each quadrature cell
// is an atom of its weight. Values strictly decreasing after merging ties;
// zero values dropped.
struct Rearrangement {
  std::vector<double> values;    // strictly decreasing
  std::vector<double> measures;  // per merged value

  double total_measure() const {
    double s = 0.0;
    for (double m : measures) s += m;
    return s;
  }
};

inline Rearrangement rearrange(const GridFunction& f) {
  const Grid& g = *f.grid();
  const int d = g.dim();
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  std::vector<std::pair<double, double>> vm;
  vm.reserve(f.size());
  const std::size_t n = g.size();
  for (std::size_t flat = 0; flat < n; ++flat) {
    const double av = std::abs(f[flat]);
    if (av > 0.0) vm.emplace_back(av, g.weight(idx.data()));
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] < static_cast<int>(g.axis_size(a))) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
  std::sort(vm.begin(), vm.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  Rearrangement r;
  for (const auto& [v, m] : vm) {
    if (!r.values.empty() && r.values.back() == v) {
      r.measures.back() += m;
    } else {
      r.values.push_back(v);
      r.measures.push_back(m);
    }
  }
  return r;
}

// Spatial Lorentz exponent pair (p, a); a may be infinity (weak norm).
struct LorentzExponent {
  double p = 2.0;
  double a = 2.0;

  LorentzExponent() = default;
  LorentzExponent(double p_, double a_) : p(p_), a(a_) {
    if (!(p > 1.0)) throw parameter_error("LorentzExponent: need p > 1");
    if (!(a >= 1.0)) throw parameter_error("LorentzExponent: need a >= 1 or a = inf");
  }
};

// Lorentz quasi-norm from the step rearrangement, with exact per-cell
// integrals of (t^{1/p} f*(t))^a dt/t:
//   finite a : ( sum_j v_j^a (p/a) (T_j^{a/p} - T_{j-1}^{a/p}) )^{1/a}
//   a = inf  : sup_j v_j T_j^{1/p} (right endpoints; f* is right-continuous)
inline double lorentz_norm(const Rearrangement& r, const LorentzExponent& e) {
  if (r.values.empty()) return 0.0;
  if (std::isinf(e.a)) {
    double sup = 0.0, T = 0.0;
    for (std::size_t j = 0; j < r.values.size(); ++j) {
      T += r.measures[j];
      sup = std::max(sup, r.values[j] * std::pow(T, 1.0 / e.p));
    }
    return sup;
  }
  const double ap = e.a / e.p;
  double acc = 0.0, T = 0.0, Tprev_pow = 0.0;
  for (std::size_t j = 0; j < r.values.size(); ++j) {
    T += r.measures[j];
    const double Tpow = std::pow(T, ap);
    acc += std::pow(r.values[j], e.a) * (Tpow - Tprev_pow);
    Tprev_pow = Tpow;
  }
  return std::pow(acc * (e.p / e.a), 1.0 / e.a);
}

inline double lorentz_norm(const GridFunction& f, const LorentzExponent& e) {
  return lorentz_norm(rearrange(f), e);
}

// Mixed time-space norm: plain Lebesgue L^r in time (trapezoid weights) of
// the spatial Lorentz norm; r = inf gives the sup over samples.
inline double mixed_norm(const std::vector<GridFunction>& frames, const TimeGrid& tg,
                         double r, const LorentzExponent& space) {
  if (static_cast<int>(frames.size()) != tg.count)
    throw shape_error("mixed_norm: frame count does not match time grid");
  for (std::size_t i = 1; i < frames.size(); ++i) detail::require_same_grid(frames[0], frames[i]);
  if (!(r >= 1.0)) throw parameter_error("mixed_norm: need r >= 1");
  if (std::isinf(r)) {
    double sup = 0.0;
    for (const auto& fr : frames) sup = std::max(sup, lorentz_norm(fr, space));
    return sup;
  }
  double acc = 0.0;
  for (int i = 0; i < tg.count; ++i) {
    const double nv = lorentz_norm(frames[static_cast<std::size_t>(i)], space);
    if (nv > 0.0) acc += tg.weight(i) * std::pow(nv, r);
  }
  return std::pow(acc, 1.0 / r);
}

// Same but with precomputed per-sample spatial norms (harness fast path).
inline double mixed_norm_from_samples(const std::vector<double>& spatial, const TimeGrid& tg,
                                      double r) {
  if (static_cast<int>(spatial.size()) != tg.count)
    throw shape_error("mixed_norm: sample count does not match time grid");
  if (std::isinf(r)) {
    double sup = 0.0;
    for (double v : spatial) sup = std::max(sup, v);
    return sup;
  }
  double acc = 0.0;
  for (int i = 0; i < tg.count; ++i)
    if (spatial[static_cast<std::size_t>(i)] > 0.0)
      acc += tg.weight(i) * std::pow(spatial[static_cast<std::size_t>(i)], r);
  return std::pow(acc, 1.0 / r);
}

// Carleman weights of the two sides of the weighted heat inequality.
// lhs: t^{-alpha} e^{-|x|^2/(4t)}
// rhs: t^{-alpha + 1 - (d/2)(1/p - 1/q) - (1/r - 1/s)} e^{-|x|^2/(4t)}
enum class WeightSide { lhs, rhs };

struct CarlemanWeight {
  double t_exponent = 0.0;

  double operator()(const double* x, int d, double t) const {
    if (!(t > 0.0)) throw parameter_error("CarlemanWeight: requires t > 0");
    double x2 = 0.0;
    for (int i = 0; i < d; ++i) x2 += x[i] * x[i];
    return std::pow(t, t_exponent) * std::exp(-x2 / (4.0 * t));
  }
};

inline CarlemanWeight carleman_weight(WeightSide side, double alpha, double d, double p,
                                      double q, double r, double s) {
  CarlemanWeight w;
  const auto inv = [](double e) { return std::isinf(e) ? 0.0 : 1.0 / e; };
  if (side == WeightSide::lhs) {
    w.t_exponent = -alpha;
  } else {
    w.t_exponent = -alpha + 1.0 - 0.5 * d * (inv(p) - inv(q)) - (inv(r) - inv(s));
  }
  return w;
}

}  // namespace hspec
