#include "hypflow/hyp2.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hypflow/error.hpp"

namespace hypflow {

std::vector<cplx> DiscreteCurve::points() const {
  std::vector<cplx> out;
  out.reserve(nodes.size());
  for (const HPoint& p : nodes) out.push_back(p.z());
  return out;
}

void DiscreteCurve::validate() const {
  require(nodes.size() >= 5, ErrorKind::stencil, "curve needs at least 5 nodes");
  require(params.size() == nodes.size(), ErrorKind::parameter, "params and nodes differ in length");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    require(std::isfinite(nodes[i].x) && std::isfinite(nodes[i].y), ErrorKind::domain, "non-finite node");
    require(nodes[i].y > 0.0, ErrorKind::domain, "node outside the upper half-plane");
    if (i > 0) {
      require(params[i] > params[i - 1], ErrorKind::parameter, "params must increase strictly");
      require(nodes[i].x != nodes[i - 1].x || nodes[i].y != nodes[i - 1].y, ErrorKind::immersion,
              "consecutive nodes coincide");
    }
  }
  for (std::size_t k = 0; k < corners.size(); ++k) {
    require(corners[k] > 0 && corners[k] + 1 < nodes.size(), ErrorKind::parameter, "corner must be an interior node");
    require(k == 0 || corners[k] > corners[k - 1], ErrorKind::parameter, "corners must increase");
  }
}

namespace hyp2 {

namespace {

constexpr double kPi = std::numbers::pi;

cplx rotate90(cplx v) { return {-v.imag(), v.real()}; }

// Covariant derivative of a field X with parameter derivative dX along u with u' = du.
cplx covariant(cplx u, cplx du, cplx X, cplx dX) {
  const double y = u.imag();
  return {dX.real() - (X.real() * du.imag() + X.imag() * du.real()) / y,
          dX.imag() + (X.real() * du.real() - X.imag() * du.imag()) / y};
}

// Curvature vector (Euclidean components) from the jet at one node.
cplx curvature_from_jet(cplx u, cplx d1, cplx d2) {
  const double y = u.imag();
  const double speed2 = std::norm(d1);
  require(speed2 > 0.0, ErrorKind::immersion, "degenerate tangent (zero speed)");
  const cplx acc = covariant(u, d1, d1, d2);
  const double tang = (acc.real() * d1.real() + acc.imag() * d1.imag()) / speed2;
  const cplx normal = acc - tang * d1;
  // sigma^2 = |u'|^2 / y^2.
  return normal * (y * y / speed2);
}

double scalar_from_jet(cplx u, cplx d1, cplx d2) {
  const cplx k = curvature_from_jet(u, d1, d2);
  const double y = u.imag();
  const double sigma = std::abs(d1) / y;
  const cplx N = rotate90(d1) / sigma;
  return (k.real() * N.real() + k.imag() * N.imag()) / (y * y);
}

}  // namespace

double metric_norm(const HVector& v) { return std::hypot(v.vx, v.vy) / v.base.y; }

double metric_inner(const HVector& v, const HVector& w) {
  return (v.vx * w.vx + v.vy * w.vy) / (v.base.y * v.base.y);
}

double distance(const HPoint& p, const HPoint& q) {
  const double dx = p.x - q.x, dy = p.y - q.y;
  return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * p.y * q.y));
}

std::vector<double> uniform_params(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  out.back() = b;
  return out;
}

numerics::Stencils make_stencils(const DiscreteCurve& curve, FdOrder order) {
  return numerics::Stencils(curve.params, curve.closed, order);
}

std::vector<DiscreteCurve> pieces(const DiscreteCurve& curve) {
  if (curve.corners.empty() || curve.closed) return {curve};
  std::vector<DiscreteCurve> out;
  std::size_t lo = 0;
  auto cut = [&](std::size_t hi) {
    require(hi - lo + 1 >= 6, ErrorKind::stencil, "piece between corners needs at least 6 nodes");
    DiscreteCurve c;
    c.params.assign(curve.params.begin() + lo, curve.params.begin() + hi + 1);
    c.nodes.assign(curve.nodes.begin() + lo, curve.nodes.begin() + hi + 1);
    out.push_back(std::move(c));
    lo = hi;
  };
  for (std::size_t k : curve.corners) cut(k);
  cut(curve.size() - 1);
  return out;
}

Jet curve_jet(const DiscreteCurve& curve, const numerics::Stencils& st) {
  Jet jet;
  jet.u = curve.points();
  jet.d1 = st.apply_all<cplx>(jet.u, 1);
  jet.d2 = st.apply_all<cplx>(jet.u, 2);
  double top = 0.0;
  for (const cplx& d : jet.d1) top = std::max(top, std::abs(d));
  for (const cplx& d : jet.d1) {
    require(std::abs(d) > 1e-10 * top, ErrorKind::immersion, "degenerate tangent (zero speed)");
  }
  return jet;
}

void estimate_boundary_tangents(DiscreteCurve& curve, FdOrder order) {
  if (curve.closed) {
    curve.boundary_tangents = {};
    return;
  }
  const auto st = make_stencils(curve, order);
  const auto u = curve.points();
  for (int end = 0; end < 2; ++end) {
    const std::size_t i = end == 0 ? 0 : curve.size() - 1;
    const cplx d = st.apply<cplx>(u, 1, i);
    require(std::abs(d) > 0.0, ErrorKind::immersion, "degenerate boundary tangent");
    const cplx t = d / std::abs(d) * u[i].imag();
    curve.boundary_tangents[end] = HVector{curve.nodes[i], t.real(), t.imag()};
  }
}

DiscreteCurve make_curve(std::vector<double> params, const std::vector<cplx>& points, bool closed) {
  DiscreteCurve curve;
  curve.params = std::move(params);
  curve.nodes.reserve(points.size());
  for (const cplx& z : points) curve.nodes.push_back(HPoint::from(z));
  curve.closed = closed;
  curve.validate();
  estimate_boundary_tangents(curve);
  return curve;
}

HVector cov_derivative(const DiscreteCurve& curve, const std::vector<HVector>& field, std::size_t i, FdOrder order) {
  require(curve.size() >= 3, ErrorKind::stencil, "cov_derivative needs at least 3 nodes");
  require(field.size() == curve.size(), ErrorKind::parameter, "field must be sampled at every node");
  const auto st = make_stencils(curve, order);
  const auto u = curve.points();
  std::vector<cplx> X(field.size());
  for (std::size_t k = 0; k < field.size(); ++k) X[k] = field[k].v();
  const cplx du = st.apply<cplx>(u, 1, i);
  const cplx dX = st.apply<cplx>(X, 1, i);
  const cplx r = covariant(u[i], du, X[i], dX);
  return {curve.nodes[i], r.real(), r.imag()};
}

HVector curvature_vector(const DiscreteCurve& curve, std::size_t i, FdOrder order) {
  return curvature_vectors(curve, order).at(i);
}

std::vector<HVector> curvature_vectors(const DiscreteCurve& curve, FdOrder order) {
  const auto st = make_stencils(curve, order);
  const Jet jet = curve_jet(curve, st);
  std::vector<HVector> out(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const cplx k = curvature_from_jet(jet.u[i], jet.d1[i], jet.d2[i]);
    out[i] = {curve.nodes[i], k.real(), k.imag()};
  }
  return out;
}

double scalar_curvature(const DiscreteCurve& curve, std::size_t i, FdOrder order) {
  return scalar_curvatures(curve, order).at(i);
}

std::vector<double> scalar_curvatures(const DiscreteCurve& curve, FdOrder order) {
  const auto st = make_stencils(curve, order);
  const Jet jet = curve_jet(curve, st);
  std::vector<double> out(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) out[i] = scalar_from_jet(jet.u[i], jet.d1[i], jet.d2[i]);
  return out;
}

CurvatureJet curvature_jet(const DiscreteCurve& curve, FdOrder order) {
  const auto st = make_stencils(curve, order);
  const Jet jet = curve_jet(curve, st);
  const std::size_t n = curve.size();
  CurvatureJet out;
  out.kappa.resize(n);
  out.speed.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.kappa[i] = scalar_from_jet(jet.u[i], jet.d1[i], jet.d2[i]);
    out.speed[i] = std::abs(jet.d1[i]) / jet.u[i].imag();
  }
  const auto k1 = st.apply_all<double>(out.kappa, 1);
  const auto k2 = st.apply_all<double>(out.kappa, 2);
  const auto s1 = st.apply_all<double>(out.speed, 1);
  out.kappa_s.resize(n);
  out.kappa_ss.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sg = out.speed[i];
    out.kappa_s[i] = k1[i] / sg;
    out.kappa_ss[i] = k2[i] / (sg * sg) - k1[i] * s1[i] / (sg * sg * sg);
  }
  return out;
}

std::vector<double> speeds(const DiscreteCurve& curve, FdOrder order) {
  const auto st = make_stencils(curve, order);
  const auto u = curve.points();
  std::vector<double> out(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) out[i] = std::abs(st.apply<cplx>(u, 1, i)) / u[i].imag();
  return out;
}

double integrate_ds(const DiscreteCurve& curve, const std::vector<double>& f, const std::vector<double>& speed) {
  std::vector<double> g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) g[i] = f[i] * speed[i];
  if (curve.closed) return numerics::periodic_trapezoid(curve.params[1] - curve.params[0], g);
  return numerics::simpson(curve.params, g);
}

static double hyperbolic_length_piece(const DiscreteCurve& curve, FdOrder order) {
  const auto sp = speeds(curve, order);
  return integrate_ds(curve, std::vector<double>(curve.size(), 1.0), sp);
}

static double elastic_energy_piece(const DiscreteCurve& curve, FdOrder order) {
  const auto st = make_stencils(curve, order);
  const Jet jet = curve_jet(curve, st);
  std::vector<double> k2(curve.size()), sp(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double y = jet.u[i].imag();
    k2[i] = std::norm(curvature_from_jet(jet.u[i], jet.d1[i], jet.d2[i])) / (y * y);
    sp[i] = std::abs(jet.d1[i]) / y;
  }
  return integrate_ds(curve, k2, sp);
}

static double total_abs_curvature_piece(const DiscreteCurve& curve, FdOrder order) {
  const auto st = make_stencils(curve, order);
  const Jet jet = curve_jet(curve, st);
  std::vector<double> k(curve.size()), sp(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    k[i] = std::abs(scalar_from_jet(jet.u[i], jet.d1[i], jet.d2[i]));
    sp[i] = std::abs(jet.d1[i]) / jet.u[i].imag();
  }
  return integrate_ds(curve, k, sp);
}

double min_height(const DiscreteCurve& curve) {
  double m = curve.nodes.front().y;
  for (const HPoint& p : curve.nodes) m = std::min(m, p.y);
  return m;
}

double elastic_energy_graph(const std::vector<double>& x, const std::vector<double>& g, const std::vector<double>& g1,
                            const std::vector<double>& g2) {
  const std::size_t n = x.size();
  require(n >= 2 && g.size() == n && g1.size() == n && g2.size() == n, ErrorKind::parameter,
          "graph samples must share the grid");
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    require(g[i] > 0.0, ErrorKind::domain, "graph must stay in the upper half-plane");
    const double q = 1.0 + g1[i] * g1[i];
    f[i] = g2[i] * g2[i] * g[i] / std::pow(q, 2.5) + 1.0 / (g[i] * std::sqrt(q));
  }
  auto edge = [&](std::size_t i) { return 2.0 * g1[i] / std::sqrt(1.0 + g1[i] * g1[i]); };
  return numerics::simpson(x, f) + edge(n - 1) - edge(0);
}

double boundary_term(const DiscreteCurve& curve, FdOrder order) {
  if (curve.closed) return 0.0;
  const auto parts = pieces(curve);
  auto slope = [&](const DiscreteCurve& c, std::size_t i) {
    const auto st = make_stencils(c, order);
    const cplx d = st.apply<cplx>(c.points(), 1, i);
    return d.imag() / std::abs(d);
  };
  return slope(parts.back(), parts.back().size() - 1) - slope(parts.front(), 0);
}

double willmore_energy(const DiscreteCurve& curve, FdOrder order) {
  return 0.5 * kPi * (elastic_energy(curve, order) - 4.0 * boundary_term(curve, order));
}

static double willmore_energy_direct_piece(const DiscreteCurve& curve, FdOrder order) {
  const auto st = make_stencils(curve, order);
  const Jet jet = curve_jet(curve, st);
  std::vector<double> f(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double x1 = jet.d1[i].real(), y1 = jet.d1[i].imag();
    const double x2 = jet.d2[i].real(), y2 = jet.d2[i].imag();
    const double s = std::hypot(x1, y1);
    const double r = jet.u[i].imag();
    const double meridian = (x2 * y1 - y2 * x1) / (s * s * s);
    const double parallel = x1 / (r * s);
    const double H = 0.5 * (meridian + parallel);
    f[i] = 2.0 * kPi * H * H * r * s;
  }
  if (curve.closed) return numerics::periodic_trapezoid(curve.params[1] - curve.params[0], f);
  return numerics::simpson(curve.params, f);
}

static double surface_area_piece(const DiscreteCurve& curve, FdOrder order) {
  const auto st = make_stencils(curve, order);
  const auto u = curve.points();
  std::vector<double> f(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) f[i] = 2.0 * kPi * u[i].imag() * std::abs(st.apply<cplx>(u, 1, i));
  if (curve.closed) return numerics::periodic_trapezoid(curve.params[1] - curve.params[0], f);
  return numerics::simpson(curve.params, f);
}

double hyperbolic_length(const DiscreteCurve& curve, FdOrder order) {
  double total = 0.0;
  for (const DiscreteCurve& c : pieces(curve)) total += hyperbolic_length_piece(c, order);
  return total;
}

double elastic_energy(const DiscreteCurve& curve, FdOrder order) {
  double total = 0.0;
  for (const DiscreteCurve& c : pieces(curve)) total += elastic_energy_piece(c, order);
  return total;
}

double total_abs_curvature(const DiscreteCurve& curve, FdOrder order) {
  double total = 0.0;
  for (const DiscreteCurve& c : pieces(curve)) total += total_abs_curvature_piece(c, order);
  return total;
}

double willmore_energy_direct(const DiscreteCurve& curve, FdOrder order) {
  double total = 0.0;
  for (const DiscreteCurve& c : pieces(curve)) total += willmore_energy_direct_piece(c, order);
  return total;
}

double surface_area(const DiscreteCurve& curve, FdOrder order) {
  double total = 0.0;
  for (const DiscreteCurve& c : pieces(curve)) total += surface_area_piece(c, order);
  return total;
}

MoebiusMap compose(const MoebiusMap& o, const MoebiusMap& i) {
  return {o.a * i.a + o.b * i.c, o.a * i.b + o.b * i.d, o.c * i.a + o.d * i.c, o.c * i.b + o.d * i.d};
}

HPoint apply_moebius(const MoebiusMap& m, const HPoint& p) {
  require(m.a * m.d - m.b * m.c > 0.0, ErrorKind::precondition, "Moebius map must have ad - bc > 0");
  const cplx z = p.z();
  const cplx den = m.c * z + m.d;
  require(std::abs(den) > 0.0, ErrorKind::domain, "Moebius denominator vanishes");
  return HPoint::from((m.a * z + m.b) / den);
}

HVector pushforward(const MoebiusMap& m, const HVector& v) {
  const HPoint q = apply_moebius(m, v.base);
  const cplx den = m.c * v.base.z() + m.d;
  const cplx w = (m.a * m.d - m.b * m.c) / (den * den) * v.v();
  return {q, w.real(), w.imag()};
}

DiscreteCurve apply_moebius(const MoebiusMap& m, const DiscreteCurve& curve) {
  DiscreteCurve out = curve;
  for (auto& p : out.nodes) p = apply_moebius(m, p);
  if (!curve.closed) {
    for (auto& t : out.boundary_tangents) t = pushforward(m, t);
  }
  return out;
}

MoebiusMap isometry_to_standard(const HPoint& p, const HVector& v, double y) {
  require(y > 0.0, ErrorKind::precondition, "target height must be positive");
  require(std::abs(metric_norm(v) - 1.0) <= 1e-9, ErrorKind::precondition, "tangent must be g-unit");
  // z -> (z - p.x)/p.y sends p to i and v to v/p.y (Euclidean unit).
  const MoebiusMap shift{1.0 / p.y, -p.x / p.y, 0.0, 1.0};
  const cplx w = v.v() / p.y;
  // Rotation about i with derivative exp(2 i t) at i.
  const double t = -0.5 * std::arg(w);
  const MoebiusMap rot{std::cos(t), std::sin(t), -std::sin(t), std::cos(t)};
  const MoebiusMap scale{y, 0.0, 0.0, 1.0};
  return compose(scale, compose(rot, shift));
}

cplx HypCircle::at(double phi) const { return {cx + rho * std::sin(phi), cy - rho * std::cos(phi)}; }

double HypCircle::arclength(double phi) const {
  require(cy > rho && rho > 0.0, ErrorKind::domain, "circle must lie in the upper half-plane");
  const double root = std::sqrt((cy - rho) * (cy + rho));
  const double k = std::sqrt((cy + rho) / (cy - rho));
  const double n = std::floor((phi + kPi) / (2.0 * kPi));
  const double phi0 = phi - 2.0 * kPi * n;
  return 2.0 * rho / root * (std::atan(k * std::tan(0.5 * phi0)) + kPi * n);
}

double HypCircle::angle_at(double arclen) const {
  require(cy > rho && rho > 0.0, ErrorKind::domain, "circle must lie in the upper half-plane");
  const double root = std::sqrt((cy - rho) * (cy + rho));
  const double k = std::sqrt((cy + rho) / (cy - rho));
  const double t = arclen * root / (2.0 * rho);
  const double n = std::floor((t + 0.5 * kPi) / kPi);
  const double t0 = t - kPi * n;
  return 2.0 * std::atan(std::tan(t0) / k) + 2.0 * kPi * n;
}

double HypCircle::circumference() const { return 2.0 * kPi * rho / std::sqrt((cy - rho) * (cy + rho)); }

std::vector<cplx> circle_points(const HypCircle& c, double phi0, bool ccw, std::span<const double> s) {
  const double s0 = c.arclength(phi0);
  std::vector<cplx> out;
  out.reserve(s.size());
  for (double v : s) out.push_back(c.at(c.angle_at(ccw ? s0 + v : s0 - v)));
  return out;
}

HPoint reflect(const HPoint& p) { return {-p.x, p.y}; }

HVector reflect(const HVector& v) { return {reflect(v.base), -v.vx, v.vy}; }

DiscreteCurve reflect(const DiscreteCurve& curve, bool reverse) {
  DiscreteCurve out = curve;
  for (auto& p : out.nodes) p = reflect(p);
  if (reverse) {
    for (auto& k : out.corners) k = curve.size() - 1 - k;
    std::reverse(out.corners.begin(), out.corners.end());
  }
  if (!curve.closed) {
    out.boundary_tangents = {reflect(curve.boundary_tangents[0]), reflect(curve.boundary_tangents[1])};
  }
  if (reverse) {
    std::reverse(out.nodes.begin(), out.nodes.end());
    const double a = curve.params.front(), b = curve.params.back();
    for (std::size_t i = 0; i < curve.size(); ++i) out.params[i] = a + b - curve.params[curve.size() - 1 - i];
    if (!curve.closed) {
      const HVector ta = out.boundary_tangents[1], tb = out.boundary_tangents[0];
      out.boundary_tangents = {HVector{ta.base, -ta.vx, -ta.vy}, HVector{tb.base, -tb.vx, -tb.vy}};
    }
  }
  return out;
}

}  // namespace hyp2
}  // namespace hypflow
