#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "hspec/grid.hpp"

namespace hspec {

// Multi-index alpha in N_0^d. Ordered lexicographically (descending first
// component first), which fixes the enumeration order of eigenspaces and the
// iteration order of coefficient maps.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> c) : c_(std::move(c)) {}

  int dim() const { return static_cast<int>(c_.size()); }
  int operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& components() const { return c_; }

  int degree() const {
    int s = 0;
    for (int v : c_) s += v;
    return s;
  }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.c_ == b.c_; }
  // Descending lexicographic within the containers' natural ascending order:
  // (2,0,0) < (1,1,0) is false, so invert the component comparison.
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) { return b.c_ < a.c_; }

 private:
  std::vector<int> c_;
};

// All alpha with |alpha| = k in d variables, first component descending;
// count is binom(k+d-1, d-1).
inline void level_indices_rec(int k, int d, std::vector<int>& prefix,
                              std::vector<MultiIndex>& out) {
  if (d == 1) {
    prefix.push_back(k);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = k; first >= 0; --first) {
    prefix.push_back(first);
    level_indices_rec(k - first, d - 1, prefix, out);
    prefix.pop_back();
  }
}

inline std::vector<MultiIndex> level_indices(int k, int d) {
  if (k < 0) throw parameter_error("level_indices: k must be >= 0");
  if (d < 1) throw parameter_error("level_indices: d must be >= 1");
  std::vector<MultiIndex> out;
  std::vector<int> prefix;
  level_indices_rec(k, d, prefix, out);
  return out;
}

inline std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

// Phi_alpha(x) = prod_i h_{alpha_i}(x_i)
inline double phi(const MultiIndex& alpha, const double* x, int d) {
  if (alpha.dim() != d) throw shape_error("phi: index and point dimensions differ");
  double v = 1.0;
  for (int i = 0; i < d; ++i) v *= hermite_h(alpha[i], x[i]);
  return v;
}

inline double phi(const MultiIndex& alpha, const std::vector<double>& x) {
  return phi(alpha, x.data(), static_cast<int>(x.size()));
}

// Hermite expansion of a function, truncated at total degree k_max.
// Coefficient map iterates in the fixed MultiIndex order.
struct SpectralCoefficients {
  int dim = 0;
  int k_max = 0;
  std::map<MultiIndex, cplx> c;

  cplx coeff(const MultiIndex& a) const {
    auto it = c.find(a);
    return it == c.end() ? cplx(0.0, 0.0) : it->second;
  }

  double l2() const {
    double s = 0.0;
    for (const auto& [a, v] : c) s += std::norm(v);
    return std::sqrt(s);
  }

  SpectralCoefficients& operator+=(const SpectralCoefficients& o) {
    if (dim != o.dim) throw shape_error("SpectralCoefficients: dimension mismatch");
    k_max = std::max(k_max, o.k_max);
    for (const auto& [a, v] : o.c) c[a] += v;
    return *this;
  }

  SpectralCoefficients& operator*=(cplx s) {
    for (auto& [a, v] : c) v *= s;
    return *this;
  }

  friend SpectralCoefficients operator+(SpectralCoefficients a, const SpectralCoefficients& b) {
    a += b;
    return a;
  }
  friend SpectralCoefficients operator*(cplx s, SpectralCoefficients a) {
    a *= s;
    return a;
  }
};

namespace detail {

// Dense tensor of shape (k_max+1)^d holding coefficients, last axis fastest.
inline std::vector<cplx> to_dense(const SpectralCoefficients& sc) {
  const std::size_t m = static_cast<std::size_t>(sc.k_max) + 1;
  std::size_t total = 1;
  for (int a = 0; a < sc.dim; ++a) total *= m;
  std::vector<cplx> t(total, cplx(0.0, 0.0));
  for (const auto& [alpha, v] : sc.c) {
    std::size_t flat = 0;
    for (int a = 0; a < sc.dim; ++a) flat = flat * m + static_cast<std::size_t>(alpha[a]);
    t[flat] = v;
  }
  return t;
}

// Apply matrix M (rows x cols) along one axis of a dense tensor laid out with
// extents ext[], last axis fastest. Returns the new tensor with that axis
// resized to `rows`.
inline std::vector<cplx> apply_axis(const std::vector<cplx>& in, std::vector<std::size_t>& ext,
                                    int axis, const std::vector<double>& M, std::size_t rows,
                                    std::size_t cols) {
  std::size_t outer = 1, inner = 1;
  for (int a = 0; a < axis; ++a) outer *= ext[static_cast<std::size_t>(a)];
  for (std::size_t a = static_cast<std::size_t>(axis) + 1; a < ext.size(); ++a) inner *= ext[a];
  std::vector<cplx> out(outer * rows * inner, cplx(0.0, 0.0));
  for (std::size_t o = 0; o < outer; ++o) {
    const cplx* inb = in.data() + o * cols * inner;
    cplx* outb = out.data() + o * rows * inner;
    for (std::size_t r = 0; r < rows; ++r) {
      const double* Mr = M.data() + r * cols;
      cplx* orow = outb + r * inner;
      for (std::size_t ccol = 0; ccol < cols; ++ccol) {
        const double m = Mr[ccol];
        if (m == 0.0) continue;
        const cplx* irow = inb + ccol * inner;
        for (std::size_t i = 0; i < inner; ++i) orow[i] += m * irow[i];
      }
    }
  }
  ext[static_cast<std::size_t>(axis)] = rows;
  return out;
}

}  // namespace detail

// Forward transform: c_alpha = quad_inner(f, Phi_alpha) for all |alpha| <= k_max.
// Requires a gauss-hermite grid with at least k_max + 2 nodes per axis so the
// quadrature is exact on products of resolved Hermite functions.
inline SpectralCoefficients analyze(const GridFunction& f, int k_max) {
  const GridPtr& g = f.grid();
  if (g->kind() != GridKind::gauss_hermite)
    throw parameter_error("analyze: spectral transform requires a gauss-hermite grid");
  for (int a = 0; a < g->dim(); ++a) {
    if (static_cast<int>(g->axis_size(a)) <= k_max + 1)
      throw resolution_error("analyze: grid under-resolved, need N >= k_max + 2 nodes per axis");
  }
  const int d = g->dim();
  const std::size_t m = static_cast<std::size_t>(k_max) + 1;

  std::vector<std::size_t> ext(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) ext[static_cast<std::size_t>(a)] = g->axis_size(a);
  std::vector<cplx> tensor = f.values();

  std::vector<double> hs(m);
  for (int a = 0; a < d; ++a) {
    const auto& ax = g->axis(a);
    const std::size_t n = ax.nodes.size();
    std::vector<double> M(m * n);
    for (std::size_t i = 0; i < n; ++i) {
      hermite_sequence(k_max, ax.nodes[i], hs.data());
      for (std::size_t r = 0; r < m; ++r) M[r * n + i] = hs[r] * ax.weights[i];
    }
    tensor = detail::apply_axis(tensor, ext, a, M, m, n);
  }

  SpectralCoefficients sc;
  sc.dim = d;
  sc.k_max = k_max;
  for (int k = 0; k <= k_max; ++k) {
    for (const MultiIndex& alpha : level_indices(k, d)) {
      std::size_t flat = 0;
      for (int a = 0; a < d; ++a) flat = flat * m + static_cast<std::size_t>(alpha[a]);
      sc.c.emplace(alpha, tensor[flat]);
    }
  }
  return sc;
}

// Pointwise sum over stored coefficients of c_alpha Phi_alpha at grid nodes.
inline GridFunction synthesize(const SpectralCoefficients& sc, const GridPtr& grid) {
  if (sc.dim != grid->dim()) throw shape_error("synthesize: dimension mismatch");
  const int d = sc.dim;
  const std::size_t m = static_cast<std::size_t>(sc.k_max) + 1;

  std::vector<std::size_t> ext(static_cast<std::size_t>(d), m);
  std::vector<cplx> tensor = detail::to_dense(sc);

  std::vector<double> hs(m);
  for (int a = 0; a < d; ++a) {
    const auto& ax = grid->axis(a);
    const std::size_t n = ax.nodes.size();
    std::vector<double> M(n * m);
    for (std::size_t i = 0; i < n; ++i) {
      hermite_sequence(sc.k_max, ax.nodes[i], hs.data());
      for (std::size_t cc = 0; cc < m; ++cc) M[i * m + cc] = hs[cc];
    }
    tensor = detail::apply_axis(tensor, ext, a, M, n, m);
  }
  return GridFunction(grid, std::move(tensor));
}

// Single eigenfunction as coefficients.
inline SpectralCoefficients eigenfunction(const MultiIndex& alpha) {
  SpectralCoefficients sc;
  sc.dim = alpha.dim();
  sc.k_max = alpha.degree();
  sc.c.emplace(alpha, cplx(1.0, 0.0));
  return sc;
}

}  // namespace hspec
