#include "hypflow/numerics.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <queue>

#include "hypflow/error.hpp"

namespace hypflow::numerics {

GaussRule gauss_legendre(int order) {
  require(order >= 1, ErrorKind::parameter, "gauss_legendre: order must be positive");
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

const GaussRule& gauss_legendre_16() {
  static const GaussRule rule = gauss_legendre(16);
  return rule;
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment kronrod(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double gauss = fc * kWg[3];
  double kron = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    kron += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                              double rel_tol, int max_intervals) {
  QuadResult out;
  if (a == b) return out;
  std::priority_queue<Segment> heap;
  Segment first = kronrod(f, a, b);
  double value = first.value;
  double error = first.error;
  heap.push(first);
  int count = 1;
  while (error > std::max(abs_tol, rel_tol * std::abs(value)) && count < max_intervals) {
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= std::min(worst.a, worst.b) || mid >= std::max(worst.a, worst.b)) {
      heap.push(worst);
      break;
    }
    Segment left = kronrod(f, worst.a, mid);
    Segment right = kronrod(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  // Re-sum to shed accumulated cancellation.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = value;
  out.error = error;
  out.evaluations = 15 * (2 * count - 1);
  return out;
}

double simpson(std::span<const double> x, std::span<const double> f) {
  const std::size_t n = x.size();
  require(n == f.size(), ErrorKind::parameter, "simpson: size mismatch");
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * (x[1] - x[0]) * (f[0] + f[1]);
  const std::size_t intervals = n - 1;
  double total = 0.0;
  if (near_uniform(x)) {
    const double h = (x[n - 1] - x[0]) / static_cast<double>(intervals);
    std::size_t simpson_end = intervals;
    if (intervals % 2 == 1) {
      if (intervals == 1) return 0.5 * h * (f[0] + f[1]);
      simpson_end = intervals - 3;
      total += 3.0 * h / 8.0 * (f[n - 4] + 3.0 * f[n - 3] + 3.0 * f[n - 2] + f[n - 1]);
    }
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
      total += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    }
    return total;
  }
  std::size_t i = 0;
  for (; i + 2 < n; i += 2) {
    const double h0 = x[i + 1] - x[i];
    const double h1 = x[i + 2] - x[i + 1];
    const double hs = h0 + h1;
    total += hs / 6.0 * ((2.0 - h1 / h0) * f[i] + hs * hs / (h0 * h1) * f[i + 1] + (2.0 - h0 / h1) * f[i + 2]);
  }
  if (i + 1 < n) {
    const double h0 = x[n - 2] - x[n - 3];
    const double h1 = x[n - 1] - x[n - 2];
    total += h1 * (f[n - 1] * (2.0 * h1 + 3.0 * h0) / (6.0 * (h0 + h1)) + f[n - 2] * (h1 + 3.0 * h0) / (6.0 * h0) -
                   f[n - 3] * h1 * h1 / (6.0 * h0 * (h0 + h1)));
  }
  return total;
}

double periodic_trapezoid(double h, std::span<const double> f) {
  double s = 0.0;
  for (double v : f) s += v;
  return h * s;
}

std::vector<std::vector<double>> fd_weights(double z, std::span<const double> x, int m) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = std::min<int>(static_cast<int>(i), m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

Stencils::Stencils(std::span<const double> params, bool closed, FdOrder order)
    : n_(params.size()), closed_(closed), order_(order) {
  const int p = static_cast<int>(order);
  for (int k = 1; k <= 4; ++k) {
    int centered = k + p - 1;
    if (centered % 2 == 0) ++centered;
    const int narrow = k + p;
    if (n_ < static_cast<std::size_t>(closed ? centered : narrow)) continue;
    const int skewed = k <= 2 && n_ >= static_cast<std::size_t>(narrow + 2) ? narrow + 2 : narrow;
    auto& list = entries_[k - 1];
    list.resize(n_);
    const double period = closed ? (params[n_ - 1] - params[0]) + (params[1] - params[0]) : 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      Entry e;
      std::vector<double> offsets;
      if (closed) {
        const int half = centered / 2;
        for (int j = -half; j <= half; ++j) {
          const long raw = static_cast<long>(i) + j;
          const long wrapped = ((raw % static_cast<long>(n_)) + static_cast<long>(n_)) % static_cast<long>(n_);
          const double shift = raw < 0 ? -period : (raw >= static_cast<long>(n_) ? period : 0.0);
          e.index.push_back(static_cast<std::size_t>(wrapped));
          offsets.push_back(params[wrapped] + shift - params[i]);
        }
      } else {
        const int half = centered / 2;
        long start;
        int width;
        if (static_cast<long>(i) - half >= 0 && static_cast<long>(i) + half < static_cast<long>(n_)) {
          start = static_cast<long>(i) - half;
          width = centered;
        } else {
          width = skewed;
          start = std::clamp<long>(static_cast<long>(i) - width / 2, 0, static_cast<long>(n_) - width);
        }
        for (int j = 0; j < width; ++j) {
          e.index.push_back(static_cast<std::size_t>(start + j));
          offsets.push_back(params[start + j] - params[i]);
        }
      }
      const auto w = fd_weights(0.0, offsets, k);
      e.weight = w[k];
      list[i] = std::move(e);
    }
  }
}

void Stencils::throw_too_few() { fail(ErrorKind::stencil, "too few nodes for the requested finite-difference stencil"); }

BandedMatrix::BandedMatrix(std::size_t n, std::size_t lower, std::size_t upper)
    : n_(n), kl_(lower), ku_(upper), width_(2 * lower + upper + 1), band_(n * (2 * lower + upper + 1), 0.0),
      pivots_(n, 0) {}

double& BandedMatrix::at(std::size_t row, std::size_t col) {
  const long off = static_cast<long>(col) - static_cast<long>(row) + static_cast<long>(kl_);
  require(off >= 0 && off < static_cast<long>(width_), ErrorKind::solver, "banded matrix: entry outside band");
  return band_[row * width_ + static_cast<std::size_t>(off)];
}

double BandedMatrix::at(std::size_t row, std::size_t col) const {
  const long off = static_cast<long>(col) - static_cast<long>(row) + static_cast<long>(kl_);
  if (off < 0 || off >= static_cast<long>(width_)) return 0.0;
  return band_[row * width_ + static_cast<std::size_t>(off)];
}

bool BandedMatrix::factor() {
  for (std::size_t k = 0; k < n_; ++k) {
    const std::size_t last_row = std::min(n_ - 1, k + kl_);
    const std::size_t last_col = std::min(n_ - 1, k + kl_ + ku_);
    std::size_t p = k;
    double best = std::abs(at(k, k));
    for (std::size_t r = k + 1; r <= last_row; ++r) {
      const double v = std::abs(at(r, k));
      if (v > best) best = v, p = r;
    }
    if (best == 0.0 || !std::isfinite(best)) return false;
    pivots_[k] = p;
    if (p != k) {
      for (std::size_t c = k; c <= last_col; ++c) std::swap(at(k, c), at(p, c));
    }
    const double pivot = at(k, k);
    for (std::size_t r = k + 1; r <= last_row; ++r) {
      double& lrk = at(r, k);
      if (lrk == 0.0) continue;
      lrk /= pivot;
      const double factor = lrk;
      for (std::size_t c = k + 1; c <= last_col; ++c) at(r, c) -= factor * at(k, c);
    }
  }
  factored_ = true;
  return true;
}

bool BandedMatrix::solve(std::vector<double>& rhs) {
  require(rhs.size() == n_, ErrorKind::solver, "banded solve: size mismatch");
  if (!factored_ && !factor()) return false;
  for (std::size_t k = 0; k < n_; ++k) {
    if (pivots_[k] != k) std::swap(rhs[k], rhs[pivots_[k]]);
    const std::size_t last_row = std::min(n_ - 1, k + kl_);
    for (std::size_t r = k + 1; r <= last_row; ++r) rhs[r] -= at(r, k) * rhs[k];
  }
  for (std::size_t kk = n_; kk-- > 0;) {
    const std::size_t last_col = std::min(n_ - 1, kk + kl_ + ku_);
    double s = rhs[kk];
    for (std::size_t c = kk + 1; c <= last_col; ++c) s -= at(kk, c) * rhs[c];
    rhs[kk] = s / at(kk, kk);
  }
  for (double v : rhs) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y, double slope_a, double slope_b)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  require(n >= 2 && y_.size() == n, ErrorKind::parameter, "spline: need at least two knots");
  std::vector<double> sub(n, 0.0), diag(n, 0.0), sup(n, 0.0), rhs(n, 0.0);
  const double h0 = x_[1] - x_[0];
  diag[0] = h0 / 3.0;
  sup[0] = h0 / 6.0;
  rhs[0] = (y_[1] - y_[0]) / h0 - slope_a;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = x_[i] - x_[i - 1];
    const double hr = x_[i + 1] - x_[i];
    sub[i] = hl / 6.0;
    diag[i] = (hl + hr) / 3.0;
    sup[i] = hr / 6.0;
    rhs[i] = (y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl;
  }
  const double hn = x_[n - 1] - x_[n - 2];
  sub[n - 1] = hn / 6.0;
  diag[n - 1] = hn / 3.0;
  rhs[n - 1] = slope_b - (y_[n - 1] - y_[n - 2]) / hn;
  // Thomas algorithm.
  for (std::size_t i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  m_.assign(n, 0.0);
  m_[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) m_[i] = (rhs[i] - sup[i] * m_[i + 1]) / diag[i];
}

std::size_t CubicSpline::interval(double t) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

double CubicSpline::value(double t) const {
  const std::size_t i = interval(t);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - t) / h;
  const double b = (t - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double t) const {
  const std::size_t i = interval(t);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - t) / h;
  const double b = (t - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h + (-(3.0 * a * a - 1.0) * m_[i] + (3.0 * b * b - 1.0) * m_[i + 1]) * h / 6.0;
}

double find_root(const std::function<double(double)>& f, double a, double b, double x_tol, int max_iter) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  require(std::signbit(fa) != std::signbit(fb), ErrorKind::solver, "find_root: no sign change in bracket");
  int side = 0;
  for (int iter = 0; iter < max_iter; ++iter) {
    const double width = b - a;
    if (std::abs(width) <= x_tol * std::max(1.0, std::abs(a) + std::abs(b))) break;
    double x = (a * fb - b * fa) / (fb - fa);
    // Fall back to bisection when the secant estimate hugs an endpoint.
    if (!(x > std::min(a, b) && x < std::max(a, b)) || iter % 4 == 3) x = 0.5 * (a + b);
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (std::signbit(fx) == std::signbit(fb)) {
      b = x;
      fb = fx;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = x;
      fa = fx;
      if (side == 1) fb *= 0.5;
      side = 1;
    }
  }
  return std::abs(fa) < std::abs(fb) ? a : b;
}

}  // namespace hypflow::numerics
