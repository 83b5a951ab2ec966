#include "hypflow/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hypflow/error.hpp"

namespace hypflow::scenarios {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

// Bottom angle of point z on circle c, in (-pi, pi].
double angle_of(const HypCircle& c, cplx z) { return std::atan2(z.real() - c.cx, -(z.imag() - c.cy)); }

// g-unit tangent of a circle traversed counterclockwise (or clockwise) at z.
HVector circle_tangent(const HypCircle& c, cplx z, bool ccw) {
  const cplx t = (ccw ? 1.0 : -1.0) * cplx(0.0, 1.0) * (z - cplx(c.cx, c.cy)) / c.rho * z.imag();
  return {HPoint::from(z), t.real(), t.imag()};
}

// Splits `total` intervals proportionally to `len`, each piece getting at least `floor_count`.
std::vector<std::size_t> split_intervals(const std::vector<double>& len, std::size_t total, std::size_t floor_count) {
  const std::size_t k = len.size();
  require(total >= k * floor_count, ErrorKind::parameter, "resolution too small for the singular datum");
  double sum = 0.0;
  for (double l : len) sum += l;
  std::vector<std::size_t> out(k);
  std::vector<std::pair<double, std::size_t>> rem;
  std::size_t used = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double want = len[i] / sum * static_cast<double>(total);
    out[i] = std::max(floor_count, static_cast<std::size_t>(std::floor(want)));
    rem.emplace_back(want - std::floor(want), i);
    used += out[i];
  }
  std::sort(rem.begin(), rem.end(), [](auto a, auto b) { return a.first > b.first; });
  for (std::size_t j = 0; used < total; j = (j + 1) % k, ++used) ++out[rem[j].second];
  while (used > total) {
    const auto it = std::max_element(out.begin(), out.end());
    --*it;
    --used;
  }
  return out;
}

}  // namespace

DiscreteCurve graph_curve(const std::function<double(double)>& g, double a, double b, std::size_t n) {
  require(b > a, ErrorKind::parameter, "graph interval must be non-empty");
  auto t = hyp2::uniform_params(a, b, n);
  std::vector<cplx> pts;
  pts.reserve(n);
  for (double x : t) {
    const double y = g(x);
    require(y > 0.0 && std::isfinite(y), ErrorKind::domain, "graph must be positive");
    pts.emplace_back(x, y);
  }
  return hyp2::make_curve(std::move(t), pts);
}

DiscreteCurve catenary(double eps, double a, std::size_t n) {
  require(eps > 0.0 && a > 0.0, ErrorKind::parameter, "catenary needs eps > 0 and a > 0");
  DiscreteCurve c = graph_curve([eps](double x) { return eps * std::cosh(x / eps); }, -a, a, n);
  // Exact clamped data: direction (1, sinh(x/eps)), g-unit length.
  for (int end = 0; end < 2; ++end) {
    const HPoint p = c.nodes[end == 0 ? 0 : c.size() - 1];
    const double sh = std::sinh(p.x / eps);
    const double scale = p.y / std::hypot(1.0, sh);
    c.boundary_tangents[end] = HVector{p, scale, sh * scale};
  }
  return c;
}

double catenary_energy(double eps, double a) {
  const double e = std::exp(2.0 * a / eps);
  return 4.0 * (e - 1.0) / (e + 1.0) + 4.0 * std::tanh(a / eps);
}

HypCircle matching_circle(double x) { return {x, kSqrt2, 1.0}; }

DiscreteCurve clifford_circle(double x_center, std::size_t n) {
  require(n >= 16, ErrorKind::stencil, "circle needs at least 16 nodes");
  const HypCircle c = matching_circle(x_center);
  const double L = c.circumference();
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = L * static_cast<double>(i) / static_cast<double>(n);
  const auto pts = hyp2::circle_points(c, 0.0, true, s);
  return hyp2::make_curve(std::move(s), pts, true);
}

DiscreteCurve clifford_arc(double x_center, double s_lo, double s_hi, std::size_t n) {
  require(s_hi > s_lo, ErrorKind::parameter, "empty arc");
  const HypCircle c = matching_circle(x_center);
  auto s = hyp2::uniform_params(s_lo, s_hi, n);
  const auto pts = hyp2::circle_points(c, 0.0, true, s);
  DiscreteCurve curve = hyp2::make_curve(std::move(s), pts);
  curve.boundary_tangents = {circle_tangent(c, pts.front(), true), circle_tangent(c, pts.back(), true)};
  return curve;
}

double cap_bound() { return kSqrt2 * (1.0 + kSqrt2) / (kSqrt2 - 1.0); }

HypCircle cap_circle(double h) {
  require(h > cap_bound(), ErrorKind::parameter, "cap parameter h must exceed sqrt2 (1 + sqrt2)/(sqrt2 - 1)");
  return {-h / kSqrt2, h, h / kSqrt2};
}

Tangency tangency(double x, double h) {
  require(x > 0.0 && x < 1.0, ErrorKind::parameter, "matching point x must lie in (0, 1)");
  const HypCircle cap = cap_circle(h);
  // |c_x - q c0|^2 = (1 + q/sqrt2)^2 with q = eta h.
  const double b = kSqrt2 * (3.0 - x);
  const double disc = b * b - 4.0 * (x * x + 1.0);
  require(disc > 0.0, ErrorKind::geometry, "no external tangency for this x");
  const double q = 0.5 * (b + std::sqrt(disc));
  const double eta = q / h;
  require(eta > 0.0 && eta < 1.0, ErrorKind::geometry, "tangency scale outside (0, 1)");
  const cplx c1(x, kSqrt2), c2(eta * cap.cx, eta * cap.cy);
  const double r2 = eta * cap.rho;
  const cplx zs = c1 + (c2 - c1) / (1.0 + r2);
  require(zs.real() < 0.0, ErrorKind::geometry, "touching point has non-negative first coordinate");
  return {eta, HPoint::from(zs), q};
}

DiscreteCurve vertical_geodesic(double y0, double y1, std::size_t n) {
  require(y0 > 0.0 && y1 > y0, ErrorKind::parameter, "vertical geodesic needs 0 < y0 < y1");
  auto s = hyp2::uniform_params(0.0, std::log(y1 / y0), n);
  std::vector<cplx> pts;
  for (double v : s) pts.emplace_back(0.0, y0 * std::exp(v));
  pts.back() = {0.0, y1};
  DiscreteCurve c = hyp2::make_curve(std::move(s), pts);
  c.boundary_tangents = {HVector{c.nodes.front(), 0.0, y0}, HVector{c.nodes.back(), 0.0, y1}};
  return c;
}

DiscreteCurve perturbed_geodesic(double amp, double ell, std::size_t n) {
  require(ell > 0.0, ErrorKind::parameter, "geodesic length must be positive");
  auto t = hyp2::uniform_params(0.0, 1.0, n);
  std::vector<cplx> pts;
  for (double v : t) {
    const double s = std::sin(kPi * v);
    pts.emplace_back(amp * std::pow(s, 6), std::exp(ell * v));
  }
  pts.front() = {0.0, 1.0};
  pts.back() = {0.0, std::exp(ell)};
  DiscreteCurve c = hyp2::make_curve(std::move(t), pts);
  c.boundary_tangents = {HVector{c.nodes.front(), 0.0, 1.0}, HVector{c.nodes.back(), 0.0, std::exp(ell)}};
  return c;
}

void validate(const SingularDatumSpec& spec) {
  require(spec.lambda > 0.0 && spec.lambda < 64.0 / (kPi * kPi) - 2.0, ErrorKind::parameter,
          "singular datum needs 0 < lambda < 64/pi^2 - 2");
  require(spec.h <= 0.0 || spec.h > cap_bound(), ErrorKind::parameter, "cap parameter h below the bound");
  require(spec.resolution >= 41 && spec.resolution % 2 == 1, ErrorKind::parameter,
          "singular datum resolution must be odd and at least 41");
}

SingularDatum build_singular_datum(const SingularDatumSpec& spec) {
  validate(spec);
  SingularDatum out;
  out.h = spec.h > 0.0 ? spec.h : 2.0 * cap_bound();
  out.fig8 = elastica::figure_eight_solve(spec.lambda);
  const auto& e = out.fig8;
  const auto end = elastica::figure_eight_tangent(e);

  // The reversed segment leaves gamma(K/r) along -tau; the counterclockwise tangent of C_x
  // at z_x is (sqrt(1 - x^2), -x), so x is the vertical component of tau.
  out.x = end.tangent.vy;
  require(out.x > 0.0 && out.x < 1.0 && end.tangent.vx < 0.0, ErrorKind::geometry,
          "figure-eight end tangent does not match any C_x");
  const double x = out.x;
  out.z_x = {0.0, kSqrt2 - std::sqrt((1.0 - x) * (1.0 + x))};
  const auto tg = tangency(x, out.h);
  out.eta = tg.eta;
  out.z_star = tg.z_star;
  const double q = tg.q;
  out.w_x = {0.0, q};

  const HypCircle cap{-q / kSqrt2, q, q / kSqrt2};
  const HypCircle cx = matching_circle(x);
  const double L3 = elastica::quarter_period(e);
  const double phi_w = 0.5 * kPi;
  const double phi_cap = angle_of(cap, out.z_star.z());
  double phi_in = angle_of(cx, out.z_star.z());
  double phi_zx = angle_of(cx, out.z_x.z());
  if (phi_in < 0.0) phi_in += 2.0 * kPi;
  if (phi_zx < 0.0) phi_zx += 2.0 * kPi;
  require(phi_cap < phi_w && phi_in < phi_zx, ErrorKind::geometry, "cap arcs out of order");
  const double L1 = cap.arclength(phi_w) - cap.arclength(phi_cap);
  const double L2 = cx.arclength(phi_zx) - cx.arclength(phi_in);
  out.cap_length = L1 + L2;
  out.cap_energy = 2.0 * out.cap_length;
  out.fig8_energy = elastica::figure_eight_segment_energy(e);
  const double half = L1 + L2 + L3;
  out.total_length = 2.0 * half;

  const double s_end[] = {L3};
  const cplx P = elastica::evaluate(e, s_end)[0];
  const double scale = out.z_x.y / P.imag();

  const std::size_t M = (spec.resolution - 1) / 2;
  const auto m = split_intervals({L1, L2, L3}, M, 6);

  std::vector<cplx> pts;
  std::vector<double> sigma;
  pts.reserve(M + 1);
  auto offsets = [](double len, std::size_t count, std::size_t first) {
    std::vector<double> v;
    for (std::size_t j = first; j <= count; ++j) v.push_back(len * static_cast<double>(j) / static_cast<double>(count));
    return v;
  };
  {
    const auto o = offsets(L1, m[0], 0);
    const auto p = hyp2::circle_points(cap, phi_w, false, o);
    pts.insert(pts.end(), p.begin(), p.end());
    for (double v : o) sigma.push_back(v);
  }
  {
    const auto o = offsets(L2, m[1], 1);
    const auto p = hyp2::circle_points(cx, phi_in, true, o);
    pts.insert(pts.end(), p.begin(), p.end());
    for (double v : o) sigma.push_back(L1 + v);
  }
  {
    const auto o = offsets(L3, m[2], 1);
    std::vector<double> s(o.size());
    for (std::size_t j = 0; j < o.size(); ++j) s[j] = L3 - o[j];
    s.back() = 0.0;
    const auto p = elastica::evaluate(e, s);
    for (const cplx& z : p) pts.push_back(scale * z);
    for (double v : o) sigma.push_back(L1 + L2 + v);
  }
  require(pts.size() == M + 1, ErrorKind::geometry, "singular datum node count mismatch");
  pts.front() = {0.0, q};
  pts.back() = {0.0, pts.back().imag()};
  sigma.back() = half;

  DiscreteCurve c;
  c.params.resize(2 * M + 1);
  c.nodes.resize(2 * M + 1);
  for (std::size_t i = 0; i <= M; ++i) {
    const cplx z = pts[i] / q;
    c.nodes[i] = HPoint::from(z);
    c.params[i] = sigma[i] / half - 1.0;
  }
  c.params[M] = 0.0;
  for (std::size_t i = M + 1; i <= 2 * M; ++i) {
    c.nodes[i] = hyp2::reflect(c.nodes[2 * M - i]);
    c.params[i] = -c.params[2 * M - i];
  }
  const std::size_t j1 = m[0], j2 = m[0] + m[1];
  c.corners = {j1, j2, 2 * M - j2, 2 * M - j1};
  c.boundary_tangents = {HVector{c.nodes.front(), 0.0, -1.0}, HVector{c.nodes.back(), 0.0, 1.0}};
  c.validate();
  out.curve = std::move(c);
  return out;
}

}  // namespace hypflow::scenarios
