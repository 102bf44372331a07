#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include "hspec/errors.hpp"
#include "hspec/hermite1d.hpp"

namespace hspec {

using cplx = std::complex<double>;

enum class GridKind { gauss_hermite, uniform_box };

// Tensor-product quadrature grid on R^d. Per-axis nodes and weights only;
// d-dimensional cells are addressed by per-axis index tuples and never
// materialized. Immutable after construction, shared via GridPtr.
//
// Flattening convention (used by every module): last axis fastest, i.e.
// flat = ((i_0 * n_1 + i_1) * n_2 + i_2) ... for axes 0..d-1.
class Grid {
 public:
  struct Axis {
    std::vector<double> nodes;
    std::vector<double> weights;
  };

  static std::shared_ptr<const Grid> gauss_hermite(int dim, int n_nodes) {
    if (dim < 1) throw parameter_error("Grid: dimension must be >= 1");
    if (n_nodes < 1) throw parameter_error("Grid: gauss-hermite needs N >= 1 nodes");
    Grid g;
    g.dim_ = dim;
    g.kind_ = GridKind::gauss_hermite;
    const GaussHermiteRule& rule = gauss_hermite_rule(n_nodes);
    Axis ax;
    ax.nodes = rule.nodes;
    ax.weights = rule.weights;
    g.axes_.assign(dim, ax);
    return std::make_shared<const Grid>(std::move(g));
  }

  // Uniform grid on [-R, R]^d with trapezoid cell weights (endpoints carry
  // half a cell), so the per-axis weights sum to 2R.
  static std::shared_ptr<const Grid> uniform_box(int dim, double half_extent, int n_per_axis) {
    if (dim < 1) throw parameter_error("Grid: dimension must be >= 1");
    if (!(half_extent > 0.0)) throw parameter_error("Grid: uniform-box needs R > 0");
    if (n_per_axis < 2) throw parameter_error("Grid: uniform-box needs n >= 2 points");
    Grid g;
    g.dim_ = dim;
    g.kind_ = GridKind::uniform_box;
    g.half_extent_ = half_extent;
    Axis ax;
    ax.nodes.resize(n_per_axis);
    ax.weights.resize(n_per_axis);
    const double h = 2.0 * half_extent / (n_per_axis - 1);
    for (int i = 0; i < n_per_axis; ++i) {
      ax.nodes[i] = -half_extent + h * i;
      ax.weights[i] = h;
    }
    ax.weights.front() = 0.5 * h;
    ax.weights.back() = 0.5 * h;
    g.axes_.assign(dim, ax);
    return std::make_shared<const Grid>(std::move(g));
  }

  int dim() const { return dim_; }
  GridKind kind() const { return kind_; }
  double half_extent() const { return half_extent_; }

  const Axis& axis(int a) const { return axes_[static_cast<std::size_t>(a)]; }
  std::size_t axis_size(int a) const { return axes_[static_cast<std::size_t>(a)].nodes.size(); }

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& ax : axes_) n *= ax.nodes.size();
    return n;
  }

  void unflatten(std::size_t flat, int* idx) const {
    for (int a = dim_ - 1; a >= 0; --a) {
      const std::size_t n = axes_[static_cast<std::size_t>(a)].nodes.size();
      idx[a] = static_cast<int>(flat % n);
      flat /= n;
    }
  }

  double weight(const int* idx) const {
    double w = 1.0;
    for (int a = 0; a < dim_; ++a) w *= axes_[static_cast<std::size_t>(a)].weights[static_cast<std::size_t>(idx[a])];
    return w;
  }

  void node(const int* idx, double* x) const {
    for (int a = 0; a < dim_; ++a) x[a] = axes_[static_cast<std::size_t>(a)].nodes[static_cast<std::size_t>(idx[a])];
  }

  bool same_as(const Grid& other) const {
    if (this == &other) return true;
    if (dim_ != other.dim_ || kind_ != other.kind_) return false;
    for (int a = 0; a < dim_; ++a) {
      if (axes_[static_cast<std::size_t>(a)].nodes != other.axes_[static_cast<std::size_t>(a)].nodes) return false;
    }
    return true;
  }

  Grid(const Grid&) = default;
  Grid(Grid&&) = default;

 private:
  Grid() = default;

  int dim_ = 0;
  GridKind kind_ = GridKind::uniform_box;
  double half_extent_ = 0.0;
  std::vector<Axis> axes_;
};

using GridPtr = std::shared_ptr<const Grid>;

// Complex-valued function sampled on all tensor nodes of a Grid, flattened
// in the grid's axis-major order.
class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(GridPtr grid)
      : grid_(std::move(grid)), values_(grid_->size(), cplx(0.0, 0.0)) {}
  GridFunction(GridPtr grid, std::vector<cplx> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_->size())
      throw shape_error("GridFunction: value count does not match grid size");
  }

  const GridPtr& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  cplx& operator[](std::size_t i) { return values_[i]; }
  const cplx& operator[](std::size_t i) const { return values_[i]; }
  std::vector<cplx>& values() { return values_; }
  const std::vector<cplx>& values() const { return values_; }

 private:
  GridPtr grid_;
  std::vector<cplx> values_;
};

// Sample a callable f(const double* x) -> cplx (or double) on every node.
template <typename F>
GridFunction sample(const GridPtr& grid, F&& f) {
  GridFunction out(grid);
  const int d = grid->dim();
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  std::vector<double> x(static_cast<std::size_t>(d));
  const std::size_t n = grid->size();
  for (std::size_t flat = 0; flat < n; ++flat) {
    grid->node(idx.data(), x.data());
    out[flat] = cplx(f(x.data()));
    // odometer increment, last axis fastest
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] < static_cast<int>(grid->axis_size(a))) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
  return out;
}

namespace detail {
inline void require_same_grid(const GridFunction& f, const GridFunction& g) {
  if (!f.grid() || !g.grid() || !f.grid()->same_as(*g.grid()))
    throw shape_error("operands live on different grids");
}
}  // namespace detail

// sum_nodes w * f * conj(g)
inline cplx quad_inner(const GridFunction& f, const GridFunction& g) {
  detail::require_same_grid(f, g);
  const Grid& gr = *f.grid();
  const int d = gr.dim();
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  cplx acc(0.0, 0.0);
  const std::size_t n = gr.size();
  for (std::size_t flat = 0; flat < n; ++flat) {
    acc += gr.weight(idx.data()) * f[flat] * std::conj(g[flat]);
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] < static_cast<int>(gr.axis_size(a))) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
  return acc;
}

// (sum w |f|^p)^{1/p}; p = infinity gives the max of |f| over nodes.
inline double lebesgue_norm(const GridFunction& f, double p) {
  if (!(p >= 1.0)) throw parameter_error("lebesgue_norm: need p >= 1");
  const Grid& gr = *f.grid();
  if (std::isinf(p)) {
    double m = 0.0;
    for (const cplx& v : f.values()) m = std::max(m, std::abs(v));
    return m;
  }
  const int d = gr.dim();
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  double acc = 0.0;
  const std::size_t n = gr.size();
  for (std::size_t flat = 0; flat < n; ++flat) {
    const double av = std::abs(f[flat]);
    if (av > 0.0) acc += gr.weight(idx.data()) * std::pow(av, p);
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] < static_cast<int>(gr.axis_size(a))) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
  return std::pow(acc, 1.0 / p);
}

inline double l2_norm(const GridFunction& f) { return lebesgue_norm(f, 2.0); }

// Uniform time samples on [t0, t1]; trapezoid weights for time integrals.
struct TimeGrid {
  double t0 = 0.0;
  double t1 = 1.0;
  int count = 2;
  double step = 1.0;

  TimeGrid() = default;
  TimeGrid(double t0_, double t1_, int count_) : t0(t0_), t1(t1_), count(count_) {
    if (!(t0 < t1)) throw parameter_error("TimeGrid: need t0 < t1");
    if (count < 2) throw parameter_error("TimeGrid: need at least 2 samples");
    step = (t1 - t0) / (count - 1);
  }

  double node(int i) const { return t0 + step * i; }
  double weight(int i) const { return (i == 0 || i == count - 1) ? 0.5 * step : step; }
};

}  // namespace hspec
