#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "curves.hpp"
#include "gen.hpp"
#include "hypflow/error.hpp"
#include "hypflow/hyp2.hpp"

using namespace hypflow;
using namespace hypflow::hyp2;
using std::numbers::pi;
using std::numbers::sqrt2;

namespace {

DiscreteCurve wobbly(std::size_t n, double amp = 0.2) {
  return testcurves::sample(
      [=](double t) { return cplx(t + amp * std::sin(3 * t), 1.5 + amp * std::cos(2 * t) + 0.3 * t); }, -1.0, 1.0, n);
}

double max_kappa_norm(const DiscreteCurve& c) {
  double m = 0.0;
  for (const auto& k : curvature_vectors(c)) m = std::max(m, metric_norm(k));
  return m;
}

}  // namespace

TEST(Metric, NormExamples) {
  EXPECT_DOUBLE_EQ(metric_norm({{0, 1}, 0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(metric_norm({{0, 5}, 3, 4}), 1.0);
  EXPECT_DOUBLE_EQ(metric_norm({{0, 2}, 1, 0}), 0.5);
  EXPECT_NEAR(distance({0, 1}, {0, std::exp(2.0)}), 2.0, 1e-14);
}

TEST(Curve, ValidateRejectsBadInput) {
  std::vector<double> t{0, 1, 2, 3, 4};
  EXPECT_THROW(make_curve(t, {{0, 1}, {0, 2}, {0, -1}, {0, 3}, {0, 4}}), Error);
  EXPECT_THROW(make_curve(t, {{0, 1}, {0, 2}, {0, 2}, {0, 3}, {0, 4}}), Error);
  EXPECT_THROW(make_curve({0, 1, 1, 3, 4}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}}), Error);
  EXPECT_THROW(make_curve({0, 1, 2}, {{0, 1}, {0, 2}, {0, 3}}), Error);
}

TEST(CovDerivative, ZeroFieldAndGeodesic) {
  const auto c = testcurves::vertical(1.0, std::exp(1.0), 200);
  std::vector<HVector> zero(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) zero[i] = {c.nodes[i], 0, 0};
  const auto d = cov_derivative(c, zero, 50);
  EXPECT_EQ(d.vx, 0.0);
  EXPECT_EQ(d.vy, 0.0);
  // X = d_x u on u = (0, e^t) is parallel: nabla X = 0.
  std::vector<HVector> tangent(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) tangent[i] = {c.nodes[i], 0, c.nodes[i].y};
  EXPECT_LT(metric_norm(cov_derivative(c, tangent, 100)), 1e-8);
}

TEST(CovDerivative, CliffordTangentField) {
  // Arc-length parametrized Clifford circle: |nabla_s d_s u|^2 = 2.
  const auto c = testcurves::clifford(400);
  const auto sp = speeds(c);
  std::vector<HVector> T(c.size());
  const auto st = make_stencils(c);
  const auto u = c.points();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const cplx d = st.apply<cplx>(u, 1, i) / sp[i];
    T[i] = {c.nodes[i], d.real(), d.imag()};
  }
  for (std::size_t i : {0u, 77u, 200u, 399u}) {
    const HVector k = cov_derivative(c, T, i);
    EXPECT_NEAR(metric_inner(k, k) / (sp[i] * sp[i]), 2.0, 1e-4);
  }
}

TEST(Curvature, GeodesicsAnnihilate) {
  EXPECT_LT(max_kappa_norm(testcurves::vertical(1.0, 3.0, 400)), 1e-6);
  const auto semi =
      testcurves::sample([](double t) { return cplx(0.3 + 2.0 * std::cos(t), 2.0 * std::sin(t)); }, 0.3, 2.8, 400);
  EXPECT_LT(max_kappa_norm(semi), 1e-6);
}

TEST(Curvature, CliffordValueAndSign) {
  const auto c = testcurves::clifford(400);
  for (const auto& k : curvature_vectors(c)) EXPECT_NEAR(metric_inner(k, k), 2.0, 1e-4);
  for (double k : scalar_curvatures(c)) EXPECT_NEAR(k, sqrt2, 1e-3);
  for (double k : scalar_curvatures(testcurves::clifford(400, true))) EXPECT_NEAR(k, -sqrt2, 1e-3);
}

TEST(Curvature, ConvergesAtLeastSecondOrder) {
  auto err = [](std::size_t n) {
    const auto c = testcurves::circle(0.0, sqrt2, 1.0, 0.2, 2.5, n);
    double m = 0.0;
    for (const auto& k : curvature_vectors(c)) m = std::max(m, std::abs(metric_inner(k, k) - 2.0));
    return m;
  };
  EXPECT_GT(std::log2(err(50) / err(100)), 1.9);
}

TEST(Curvature, DegenerateTangentThrows) {
  // A cusp at t = 0 gives zero speed there.
  const auto c = testcurves::sample([](double t) { return cplx(t * t * t, 2.0 + t * t); }, -1.0, 1.0, 41);
  EXPECT_THROW(curvature_vectors(c), Error);
}

TEST(Length, Examples) {
  EXPECT_NEAR(hyperbolic_length(testcurves::vertical(1.0, std::exp(1.0), 100)), 1.0, 1e-8);
  EXPECT_NEAR(hyperbolic_length(testcurves::sample([](double t) { return cplx(t, 1.0); }, 0.0, 1.0, 50)), 1.0, 1e-12);
  const double oracle = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [](double t) { return 1.0 / (sqrt2 - std::cos(t)); }, 0.0, 2 * pi, 15, 1e-14);
  EXPECT_NEAR(hyperbolic_length(testcurves::clifford(400)), oracle, 1e-7);
  EXPECT_NEAR(oracle, 2 * pi, 1e-12);
}

TEST(Energy, Examples) {
  EXPECT_NEAR(elastic_energy(testcurves::vertical(1.0, 5.0, 200)), 0.0, 1e-6);
  const auto cl = testcurves::clifford(400);
  const double e = elastic_energy(cl);
  EXPECT_NEAR(e, 2.0 * hyperbolic_length(cl), 1e-3);
  EXPECT_GE(e, 4 * pi - 1e-3);
  EXPECT_NEAR(elastic_energy(testcurves::catenary(1.0, 1.0, 400)), 8.0 * std::tanh(1.0), 1e-4);
}

TEST(Energy, GraphFormula) {
  std::vector<double> x, g, g1, g2;
  for (int i = 0; i <= 400; ++i) {
    const double t = -1.0 + 2.0 * i / 400.0;
    x.push_back(t);
    g.push_back(std::cosh(t));
    g1.push_back(std::sinh(t));
    g2.push_back(std::cosh(t));
  }
  EXPECT_NEAR(elastic_energy_graph(x, g, g1, g2), 8.0 * std::tanh(1.0), 1e-6);
  std::vector<double> one(11, 1.0), zero(11, 0.0), xs;
  for (int i = 0; i <= 10; ++i) xs.push_back(i / 10.0);
  EXPECT_NEAR(elastic_energy_graph(xs, one, zero, zero), 1.0, 1e-12);
  std::vector<double> bad(11, 1.0);
  bad[3] = 0.0;
  EXPECT_THROW(elastic_energy_graph(xs, bad, zero, zero), Error);
}

TEST(Energy, GraphMatchesCurveEnergy) {
  const double a = 0.9;
  std::vector<double> x, g, g1, g2;
  for (int i = 0; i <= 400; ++i) {
    const double t = -a + 2 * a * i / 400.0, q = std::sqrt(1 - t * t);
    x.push_back(t);
    g.push_back(q);
    g1.push_back(-t / q);
    g2.push_back(-1.0 / (q * q * q));
  }
  const auto curve = testcurves::sample([](double t) { return cplx(t, std::sqrt(1 - t * t)); }, -a, a, 400);
  EXPECT_NEAR(elastic_energy_graph(x, g, g1, g2), elastic_energy(curve), 1e-4);
  EXPECT_NEAR(elastic_energy(curve), 0.0, 1e-4);
}

TEST(Willmore, ExamplesAndDirectOracle) {
  const auto cat = testcurves::catenary(1.0, 1.0, 400);
  EXPECT_NEAR(willmore_energy(cat), 0.0, 1e-4);
  EXPECT_NEAR(willmore_energy_direct(cat), 0.0, 1e-6);
  EXPECT_NEAR(willmore_energy(testcurves::vertical(1.0, 2.0, 100)), 0.0, 1e-10);
  const auto cl = testcurves::clifford(800);
  EXPECT_NEAR(willmore_energy(cl), 2 * pi * pi, 0.01);
  EXPECT_NEAR(willmore_energy_direct(cl), 2 * pi * pi, 0.01);
}

TEST(Willmore, BryantGriffithsOnSuite) {
  const std::vector<DiscreteCurve> suite{
      testcurves::catenary(1.0, 1.0, 400), testcurves::catenary(0.5, 1.0, 400), testcurves::clifford(400),
      testcurves::circle(0.0, 3.0, 1.0, -2.0, 2.5, 400), wobbly(400), testcurves::vertical(1.0, 4.0, 100)};
  for (const auto& c : suite) EXPECT_NEAR(willmore_energy(c), willmore_energy_direct(c), 1e-4);
}

TEST(Area, Examples) {
  EXPECT_NEAR(surface_area(testcurves::sample([](double t) { return cplx(t, 1.0); }, 0.0, 1.0, 21)), 2 * pi, 1e-12);
  EXPECT_NEAR(surface_area(testcurves::sample([](double t) { return cplx(0.0, t); }, 1.0, 2.0, 21)), 3 * pi, 1e-12);
  EXPECT_NEAR(surface_area(testcurves::catenary(1.0, 1.0, 400)), 2 * pi * (1.0 + std::sinh(2.0) / 2.0), 1e-8);
}

TEST(Moebius, ActionExamples) {
  const HPoint q = apply_moebius({}, {1, 1});
  EXPECT_DOUBLE_EQ(q.x, 1.0);
  EXPECT_DOUBLE_EQ(q.y, 1.0);
  const HPoint r = apply_moebius({0, -1, 1, 0}, {0, 1});
  EXPECT_NEAR(r.x, 0.0, 1e-15);
  EXPECT_NEAR(r.y, 1.0, 1e-15);
  EXPECT_THROW(apply_moebius({1, 0, 1, -1}, {0, 1}), Error);
}

TEST(Moebius, EnergyInvarianceProperty) {
  const auto base = wobbly(400);
  const double e0 = elastic_energy(base);
  EXPECT_NEAR(elastic_energy(apply_moebius({2, 1, 1, 1}, base)), e0, 1e-6);
  gen::for_all(21, 10, [&](gen::Rng& rng, int) {
    const double a = rng.uniform(0.5, 2.0), b = rng.uniform(-1.0, 1.0), c = rng.uniform(-0.3, 0.3);
    const double d = (1.0 + b * c) / a;
    const auto moved = apply_moebius({a, b, c, d}, base);
    EXPECT_NEAR(elastic_energy(moved), e0, 1e-6);
    EXPECT_NEAR(hyperbolic_length(moved), hyperbolic_length(base), 1e-8);
  });
}

TEST(Moebius, PushforwardIsIsometric) {
  gen::for_all(22, 50, [](gen::Rng& rng, int) {
    const MoebiusMap m{rng.uniform(0.5, 2), rng.uniform(-1, 1), rng.uniform(-1, 1), 0.0};
    const MoebiusMap mm{m.a, m.b, m.c, (1.0 + m.b * m.c) / m.a};
    const HVector v{{rng.uniform(-2, 2), rng.uniform(0.2, 3)}, rng.uniform(-1, 1), rng.uniform(-1, 1)};
    EXPECT_NEAR(metric_norm(pushforward(mm, v)), metric_norm(v), 1e-12);
  });
}

TEST(Isometry, ToStandard) {
  const auto id = isometry_to_standard({0, 1}, {{0, 1}, 1, 0}, 1.0);
  EXPECT_NEAR(id.a, 1.0, 1e-15);
  EXPECT_NEAR(id.b, 0.0, 1e-15);
  EXPECT_NEAR(id.c, 0.0, 1e-15);
  EXPECT_NEAR(id.d, 1.0, 1e-15);
  const auto sc = isometry_to_standard({0, 2}, {{0, 2}, 2, 0}, 1.0);
  EXPECT_NEAR(sc.b, 0.0, 1e-15);
  EXPECT_NEAR(sc.c, 0.0, 1e-15);
  EXPECT_NEAR(sc.a / sc.d, 0.5, 1e-15);
  EXPECT_THROW(isometry_to_standard({0, 1}, {{0, 1}, 2, 0}, 1.0), Error);
  gen::for_all(23, 50, [](gen::Rng& rng, int) {
    const HPoint p{rng.uniform(-3, 3), rng.uniform(0.1, 4)};
    const double ang = rng.uniform(-pi, pi), y = rng.uniform(0.2, 3);
    const HVector v{p, p.y * std::cos(ang), p.y * std::sin(ang)};
    const auto m = isometry_to_standard(p, v, y);
    const HVector w = pushforward(m, v);
    EXPECT_NEAR(w.base.x, 0.0, 1e-9);
    EXPECT_NEAR(w.base.y, y, 1e-9);
    EXPECT_NEAR(w.vx, y, 1e-9);
    EXPECT_NEAR(w.vy, 0.0, 1e-9);
  });
}

TEST(Reflect, PointsAndCurvatureSymmetry) {
  EXPECT_DOUBLE_EQ(reflect(HPoint{0, 1}).x, 0.0);
  EXPECT_DOUBLE_EQ(reflect(HPoint{2, 3}).x, -2.0);
  EXPECT_DOUBLE_EQ(reflect(HPoint{2, 3}).y, 3.0);
  const auto c = wobbly(300);
  const auto r = reflect(c, true);
  const auto k = scalar_curvatures(c), kr = scalar_curvatures(r);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(kr[i], k[c.size() - 1 - i], 1e-6);
  EXPECT_NEAR(r.params.front(), -1.0, 1e-15);
}

TEST(Pieces, CornersSplitIntegrals) {
  // Two circle arcs of different curvature meeting with a common tangent.
  auto c = testcurves::vertical(1.0, 2.0, 11);
  c.corners = {5};
  EXPECT_EQ(pieces(c).size(), 2u);
  EXPECT_NEAR(hyperbolic_length(c), std::log(2.0), 1e-5);
  c.corners = {2};
  EXPECT_THROW(hyperbolic_length(c), Error);
}
