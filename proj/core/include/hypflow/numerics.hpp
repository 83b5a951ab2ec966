#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace hypflow::numerics {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int order);
const GaussRule& gauss_legendre_16();

// Composite Gauss-Legendre over `panels` equal panels of [a, b].
template <typename F>
auto integrate_panels(F&& f, double a, double b, int panels, const GaussRule& rule = gauss_legendre_16())
    -> decltype(f(a)) {
  using R = decltype(f(a));
  R total{};
  const double width = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * width;
    const double mid = lo + 0.5 * width;
    R panel{};
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      panel += rule.weights[j] * f(mid + 0.5 * width * rule.nodes[j]);
    }
    total += 0.5 * width * panel;
  }
  return total;
}

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

// Adaptive Gauss-Kronrod (7/15) with global bisection of the worst interval.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol = 1e-13, double rel_tol = 1e-13, int max_intervals = 4000);

// Composite Simpson on sampled data; 3/8 tail for an odd interval count.
// Non-uniform grids use the quadratic-interpolant generalization.
double simpson(std::span<const double> x, std::span<const double> f);

// Periodic trapezoid rule: f sampled at x_i with spacing h, period n*h.
double periodic_trapezoid(double h, std::span<const double> f);

// Fornberg weights: c[k][j] is the weight of f(x[j]) in the k-th derivative at z.
std::vector<std::vector<double>> fd_weights(double z, std::span<const double> x, int max_derivative);

enum class FdOrder { second = 2, fourth = 4 };

// Per-node finite-difference stencils for derivatives 1..4 on a fixed grid.
// Interior nodes use centered stencils; nodes near an open end use skewed
// stencils with derivative + order points, two more for derivatives 1 and 2 when the
// grid allows. Closed grids wrap periodically.
class Stencils {
 public:
  Stencils() = default;
  Stencils(std::span<const double> params, bool closed, FdOrder order);

  std::size_t size() const { return n_; }
  FdOrder order() const { return order_; }
  bool closed() const { return closed_; }

  template <typename T>
  T apply(std::span<const T> values, int derivative, std::size_t i) const {
    const Entry& e = entry(derivative, i);
    T acc{};
    for (std::size_t j = 0; j < e.index.size(); ++j) acc += e.weight[j] * values[e.index[j]];
    return acc;
  }

  template <typename T>
  std::vector<T> apply_all(std::span<const T> values, int derivative) const {
    std::vector<T> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = apply(values, derivative, i);
    return out;
  }

  struct Entry {
    std::vector<std::size_t> index;
    std::vector<double> weight;
  };
  const Entry& entry(int derivative, std::size_t i) const {
    if (entries_[derivative - 1].empty()) throw_too_few();
    return entries_[derivative - 1][i];
  }
  bool supports(int derivative) const { return !entries_[derivative - 1].empty(); }

 private:
  std::size_t n_ = 0;
  bool closed_ = false;
  FdOrder order_ = FdOrder::fourth;
  std::array<std::vector<Entry>, 4> entries_;
  [[noreturn]] static void throw_too_few();
};

// General banded matrix with partial-pivoting LU.
class BandedMatrix {
 public:
  BandedMatrix(std::size_t n, std::size_t lower, std::size_t upper);
  std::size_t size() const { return n_; }
  double& at(std::size_t row, std::size_t col);
  double at(std::size_t row, std::size_t col) const;
  void add(std::size_t row, std::size_t col, double value) { at(row, col) += value; }
  // Factorizes in place and solves; returns false on a zero pivot.
  bool solve(std::vector<double>& rhs);

 private:
  std::size_t n_, kl_, ku_, width_;
  std::vector<double> band_;
  std::vector<std::size_t> pivots_;
  bool factored_ = false;
  bool factor();
};

// Cubic spline through (x_i, y_i) with prescribed end slopes.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y, double slope_a, double slope_b);
  double value(double t) const;
  double derivative(double t) const;
  std::size_t interval(double t) const;
  const std::vector<double>& knots() const { return x_; }

 private:
  std::vector<double> x_, y_, m_;  // m_ = second derivatives at knots
};

// Bracketed root: bisection safeguarded secant steps. Requires a sign change.
double find_root(const std::function<double(double)>& f, double a, double b, double x_tol = 1e-15,
                 int max_iter = 400);

inline bool near_uniform(std::span<const double> x, double rel = 1e-10) {
  if (x.size() < 3) return true;
  const double h = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (std::abs((x[i] - x[i - 1]) - h) > rel * std::abs(h)) return false;
  }
  return true;
}

}  // namespace hypflow::numerics
