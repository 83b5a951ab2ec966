#include "hypflow/elastica.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hypflow/ellip.hpp"
#include "hypflow/error.hpp"
#include "hypflow/numerics.hpp"

namespace hypflow::elastica {

using hyp2::circle_points;
using hyp2::HypCircle;

namespace {

constexpr double kPi = std::numbers::pi;

bool close_to(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

double sign(double v) { return v < 0.0 ? -1.0 : 1.0; }

// Circle carrying a circular elastica and the direction of travel.
struct CircleData {
  HypCircle circle;
  bool ccw;
};

CircleData circular_circle(const ElasticaParams& e) {
  require(std::abs(e.kappa0) > 1.0, ErrorKind::parameter, "circular elastica needs |kappa| > 1 (lambda > -1)");
  const double ke = (e.kappa0 - 1.0) / e.y;
  const double rho = 1.0 / std::abs(ke);
  return {HypCircle{0.0, e.y + 1.0 / ke, rho}, ke > 0.0};
}

ElasticaParams build(Family fam, double kappa0, double lambda, double p, double y) {
  ElasticaParams e;
  e.family = fam;
  e.lambda = lambda;
  e.kappa0 = kappa0;
  e.kappa0_sq = kappa0 * kappa0;
  e.p = p;
  e.y = y;
  e.C = 0.25 * e.kappa0_sq * e.kappa0_sq - 0.5 * (lambda + 2.0) * e.kappa0_sq;
  switch (fam) {
    case Family::circular:
      e.r = 0.0;
      break;
    case Family::orbit_like:
      e.r = 0.5 * std::sqrt((2.0 * lambda + 4.0) / (2.0 - p * p));
      break;
    case Family::asymptotically_geodesic:
      e.r = 0.5 * std::sqrt(2.0 * lambda + 4.0);
      e.C = 0.0;
      break;
    case Family::wave_like:
      e.r = 0.5 * std::sqrt((2.0 * lambda + 4.0) / (2.0 * p * p - 1.0));
      break;
  }
  if (fam != Family::circular) {
    const auto [a, c] = canonical_coefficients(e, y);
    e.a = a;
    e.c = c;
    e.z1 = canonical_offset(a, c, y);
  }
  return e;
}

}  // namespace

const char* to_string(Family f) {
  switch (f) {
    case Family::circular:
      return "circular";
    case Family::orbit_like:
      return "orbit-like";
    case Family::asymptotically_geodesic:
      return "asymptotically-geodesic";
    case Family::wave_like:
      return "wave-like";
  }
  return "unknown";
}

Classification classify(double kappa0_sq, double lambda) {
  require(std::isfinite(kappa0_sq) && std::isfinite(lambda), ErrorKind::parameter, "non-finite elastica data");
  const double low = lambda + 2.0, mid = 2.0 * lambda + 4.0;
  const double C = 0.25 * kappa0_sq * kappa0_sq - 0.5 * low * kappa0_sq;
  if (close_to(kappa0_sq, low)) return {Family::circular, 0.0, 0.0, C};
  if (kappa0_sq < low) fail(ErrorKind::parameter, "no elastica exists for kappa0^2 < lambda + 2");
  if (close_to(kappa0_sq, mid)) return {Family::asymptotically_geodesic, 1.0, 0.5 * std::sqrt(mid), 0.0};
  if (kappa0_sq < mid) {
    const double p = std::sqrt(2.0 - mid / kappa0_sq);
    return {Family::orbit_like, p, 0.5 * std::sqrt(mid / (2.0 - p * p)), C};
  }
  const double p = std::sqrt(kappa0_sq / (2.0 * kappa0_sq - mid));
  return {Family::wave_like, p, 0.5 * std::sqrt(mid / (2.0 * p * p - 1.0)), C};
}

ElasticaParams make_params(double kappa0, double lambda, double y) {
  require(y > 0.0, ErrorKind::parameter, "canonical height must be positive");
  const Classification cl = classify(kappa0 * kappa0, lambda);
  return build(cl.family, kappa0, lambda, cl.p, y);
}

double curvature_profile(const ElasticaParams& e, double s) {
  switch (e.family) {
    case Family::circular:
      return e.kappa0;
    case Family::asymptotically_geodesic:
      return e.kappa0 / std::cosh(e.r * s);
    case Family::orbit_like:
      return e.kappa0 * ellip::jacobi_sn_cn_dn(e.r * s, e.p).dn;
    case Family::wave_like:
      return e.kappa0 * ellip::jacobi_sn_cn_dn(e.r * s, e.p).cn;
  }
  return 0.0;
}

double curvature_slope(const ElasticaParams& e, double s) {
  switch (e.family) {
    case Family::circular:
      return 0.0;
    case Family::asymptotically_geodesic: {
      const double ch = std::cosh(e.r * s);
      return -e.kappa0 * e.r * std::sinh(e.r * s) / (ch * ch);
    }
    case Family::orbit_like: {
      const auto j = ellip::jacobi_sn_cn_dn(e.r * s, e.p);
      return -e.kappa0 * e.r * e.p * e.p * j.sn * j.cn;
    }
    case Family::wave_like: {
      const auto j = ellip::jacobi_sn_cn_dn(e.r * s, e.p);
      return -e.kappa0 * e.r * j.sn * j.dn;
    }
  }
  return 0.0;
}

cplx theta(const ElasticaParams& e, double s) {
  const double k = curvature_profile(e, s);
  return {k * k - e.lambda, 2.0 * curvature_slope(e, s)};
}

std::pair<double, double> canonical_coefficients(const ElasticaParams& e, double y) {
  require(y > 0.0, ErrorKind::parameter, "canonical height must be positive");
  const double t0 = e.kappa0_sq - e.lambda;
  double a = (2.0 * e.kappa0 - t0) / (2.0 * y);
  double c = 0.5 * y * (2.0 * e.kappa0 + t0);
  const double scale = std::abs(a) + std::abs(c);
  require(scale > 0.0, ErrorKind::parameter, "degenerate coefficients a = c = 0");
  if (std::abs(a) <= 1e-13 * scale) a = 0.0;
  if (std::abs(c) <= 1e-13 * scale) c = 0.0;
  const double want = -0.25 * (e.lambda * e.lambda + 4.0 * e.C);
  require(std::abs(a * c - want) <= 1e-9 * std::max(1.0, std::abs(want)), ErrorKind::parameter,
          "coefficients inconsistent with the first integral");
  return {a, c};
}

double canonical_offset(double a, double c, double y) {
  if (a == 0.0) return y / c;
  if (c == 0.0) return -1.0 / (a * y);
  const double q = y * std::sqrt(std::abs(a / c));
  if (a > 0.0 && c > 0.0) {
    require(q < 1.0, ErrorKind::parameter, "tan case cannot reach iy");
    return std::atanh(q) / std::sqrt(a * c);
  }
  if (a < 0.0 && c < 0.0) {
    require(q > 1.0, ErrorKind::parameter, "cot case cannot reach iy");
    return std::atanh(1.0 / q) / std::sqrt(a * c);
  }
  return std::atan(q) / std::sqrt(-a * c);
}

cplx f_map(double a, double c, cplx z) {
  if (a == 0.0) return c * z;
  if (c == 0.0) return 1.0 / (a * z);
  if (a > 0.0 && c > 0.0) return std::sqrt(c / a) * std::tan(std::sqrt(a * c) * z);
  if (a < 0.0 && c < 0.0) return -std::sqrt(c / a) / std::tan(std::sqrt(a * c) * z);
  return std::sqrt(-c / a) * std::tanh(std::sqrt(-a * c) * z);
}

std::vector<cplx> evaluate(const ElasticaParams& e, std::span<const double> s) {
  std::vector<cplx> out(s.size());
  if (e.family == Family::circular) {
    const CircleData cd = circular_circle(e);
    const double phi0 = cd.ccw ? 0.0 : kPi;
    return circle_points(cd.circle, phi0, cd.ccw, s);
  }
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return s[i] < s[j]; });
  const double rate = std::max(1.0, e.r);
  auto integral = [&](double from, double to) {
    const int panels = 1 + static_cast<int>(std::ceil(2.0 * rate * std::abs(to - from)));
    return numerics::integrate_panels([&](double t) { return 1.0 / theta(e, t); }, from, to, panels);
  };
  // Accumulate outward from s = 0 in both directions.
  auto sweep = [&](auto begin, auto end) {
    double prev = 0.0;
    cplx acc{0.0, e.z1};
    for (auto it = begin; it != end; ++it) {
      const double v = s[*it];
      acc += integral(prev, v);
      prev = v;
      out[*it] = f_map(e.a, e.c, acc);
    }
  };
  const auto split = std::find_if(order.begin(), order.end(), [&](std::size_t i) { return s[i] >= 0.0; });
  sweep(split, order.end());
  sweep(std::make_reverse_iterator(split), order.rend());
  for (const cplx& z : out) {
    require(std::isfinite(z.real()) && std::isfinite(z.imag()) && z.imag() > 0.0, ErrorKind::domain,
            "elastica left the upper half-plane");
  }
  return out;
}

cplx tangent(const ElasticaParams& e, double s, cplx gamma) {
  if (e.family == Family::circular) {
    const CircleData cd = circular_circle(e);
    const cplx rel = gamma - cplx(cd.circle.cx, cd.circle.cy);
    return (cd.ccw ? 1.0 : -1.0) * cplx(0.0, 1.0) * rel / cd.circle.rho * gamma.imag();
  }
  return (e.a * gamma * gamma + e.c) / theta(e, s);
}

DiscreteCurve parametrize_at(const ElasticaParams& e, std::vector<double> s) {
  const auto pts = evaluate(e, s);
  DiscreteCurve curve;
  curve.params = std::move(s);
  for (const cplx& z : pts) curve.nodes.push_back(HPoint::from(z));
  curve.validate();
  for (int end = 0; end < 2; ++end) {
    const std::size_t i = end == 0 ? 0 : curve.size() - 1;
    const cplx t = tangent(e, curve.params[i], pts[i]);
    const cplx unit = t / std::abs(t) * pts[i].imag();
    curve.boundary_tangents[end] = HVector{curve.nodes[i], unit.real(), unit.imag()};
  }
  return curve;
}

DiscreteCurve parametrize(const ElasticaParams& e, double s_lo, double s_hi, std::size_t n) {
  require(s_hi > s_lo, ErrorKind::parameter, "empty arc-length window");
  require(n >= 5, ErrorKind::stencil, "need at least 5 nodes");
  return parametrize_at(e, hyp2::uniform_params(s_lo, s_hi, n));
}

double first_integral_residual(const DiscreteCurve& curve, double lambda) {
  const auto jet = hyp2::curvature_jet(curve);
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
    const double k2 = jet.kappa[i] * jet.kappa[i];
    const double v = jet.kappa_s[i] * jet.kappa_s[i] + 0.25 * k2 * k2 - 0.5 * (lambda + 2.0) * k2;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

double figure_eight_integral(double lambda, double p) {
  const double k2 = (2.0 * lambda + 4.0) * p * p / (2.0 * p * p - 1.0);
  const double m = 4.0 * k2 / ((k2 - lambda) * (k2 - lambda));
  const double shift = lambda / k2;
  auto f = [=](double t) {
    const double s = std::sin(t), c = std::cos(t);
    return (s * s - shift) / ((1.0 - m * c * c) * std::sqrt(1.0 - p * p * c * c));
  };
  return numerics::integrate_adaptive(f, 0.0, 0.5 * kPi, 1e-15, 1e-14, 20000).value;
}

ElasticaParams figure_eight_solve(double lambda) {
  const double upper = 64.0 / (kPi * kPi) - 2.0;
  require(lambda > 0.0 && lambda < upper, ErrorKind::parameter, "figure-eight needs 0 < lambda < 64/pi^2 - 2");
  const double lo = 1.0 / std::numbers::sqrt2 + 1e-6, hi = 1.0 - 1e-12;
  const double p = numerics::find_root([&](double q) { return figure_eight_integral(lambda, q); }, lo, hi, 1e-16);
  const double k2 = (2.0 * lambda + 4.0) * p * p / (2.0 * p * p - 1.0);
  return build(Family::wave_like, std::sqrt(k2), lambda, p, 1.0);
}

double quarter_period(const ElasticaParams& e) {
  require(e.family == Family::wave_like || e.family == Family::orbit_like, ErrorKind::parameter,
          "quarter period needs an elliptic family");
  return ellip::complete_K(e.p) / e.r;
}

DiscreteCurve figure_eight_segment(const ElasticaParams& e, std::size_t n) {
  require(e.family == Family::wave_like, ErrorKind::parameter, "figure-eight segment needs wave-like params");
  const double L = quarter_period(e);
  DiscreteCurve c = parametrize(e, -L, L, n);
  const double gap = std::hypot(c.nodes.front().x - c.nodes.back().x, c.nodes.front().y - c.nodes.back().y);
  require(gap < 1e-6, ErrorKind::closure, "figure-eight segment endpoints do not meet");
  return c;
}

double figure_eight_segment_energy(const ElasticaParams& e) {
  require(e.family == Family::wave_like, ErrorKind::parameter, "segment energy needs wave-like params");
  const double p2 = e.p * e.p;
  const double K = ellip::complete_K(e.p), E = ellip::complete_E(e.p);
  return 2.0 * e.kappa0_sq * (E - (1.0 - p2) * K) / (e.r * p2);
}

EndTangent figure_eight_tangent(const ElasticaParams& e) {
  require(e.family == Family::wave_like, ErrorKind::parameter, "end tangent needs wave-like params");
  const double L = quarter_period(e);
  const double s[] = {L};
  const cplx g = evaluate(e, s)[0];
  const cplx t = tangent(e, L, g);
  const cplx unit = t / std::abs(t);
  EndTangent out;
  out.tangent = HVector{HPoint::from(g), unit.real(), unit.imag()};
  out.ratio = sign(e.kappa0) * t.imag() / t.real();
  out.predicted_ratio = -2.0 * e.r * std::abs(e.kappa0) * std::sqrt(1.0 - e.p * e.p) / e.lambda;
  out.angle_to_vertical = std::acos(std::clamp(sign(e.kappa0) * unit.imag(), -1.0, 1.0));
  return out;
}

AmplitudeWindow amplitude_window(const ElasticaParams& e, ArcWindow w) {
  require(e.family == Family::orbit_like, ErrorKind::parameter, "amplitude window needs orbit-like params");
  return {ellip::jacobi_am(e.r * w.alpha, e.p), ellip::jacobi_am(e.r * w.beta, e.p)};
}

double closing_multiplicity(double p, AmplitudeWindow w) {
  require(p > 0.0 && p < 1.0, ErrorKind::domain, "closing multiplicity needs 0 < p < 1");
  const double q = 1.0 - p * p, n = p * p * (2.0 - p * p);
  // n < 1 for p in (0, 1): the integrand has no pole.
  require(n < 1.0, ErrorKind::singular_integral, "pole in closing integrand");
  auto prim = [&](double phi) { return (ellip::ellint_F(phi, p) + q * ellip::ellint_Pi(phi, n, p)) / (2.0 - p * p); };
  const double integral = prim(w.hi) - prim(w.lo);
  return 0.5 * std::sqrt(q) * std::sqrt(2.0 - p * p) * integral / kPi;
}

double closing_multiplicity(const ElasticaParams& e, ArcWindow w) {
  require(e.lambda == 0.0, ErrorKind::parameter, "closing condition holds for free elastica only");
  return closing_multiplicity(e.p, amplitude_window(e, w));
}

double orbitlike_segment_energy(const ElasticaParams& e, AmplitudeWindow w) {
  require(e.family == Family::orbit_like, ErrorKind::parameter, "segment energy needs orbit-like params");
  return 2.0 * std::abs(e.kappa0) * (ellip::ellint_E(w.hi, e.p) - ellip::ellint_E(w.lo, e.p));
}

double orbitlike_segment_energy(const ElasticaParams& e, ArcWindow w) {
  return orbitlike_segment_energy(e, amplitude_window(e, w));
}

double heart_gap_for_delta(double delta) { return 8.0 / std::numbers::sqrt2 * std::sin(delta); }

HeartGap heart_energy_gap(double p) {
  auto excess = [&](double d) { return closing_multiplicity(p, {-d, kPi + d}) - 1.0; };
  const double cap = 0.25 * kPi;
  double delta = cap;
  if (excess(cap) >= 0.0) {
    require(excess(0.0) < 0.0, ErrorKind::solver, "heart bound: no admissible delta");
    delta = numerics::find_root(excess, 0.0, cap, 1e-15);
    // Stay on the admissible side of the root.
    while (delta > 0.0 && excess(delta) >= 0.0) delta = std::nextafter(delta, 0.0);
  }
  return {delta, heart_gap_for_delta(delta)};
}

}  // namespace hypflow::elastica
