#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/ellint_2.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <cmath>
#include <numbers>

#include "curves.hpp"
#include "gen.hpp"
#include "hypflow/elastica.hpp"
#include "hypflow/error.hpp"
#include "hypflow/hyp2.hpp"

using namespace hypflow;
using namespace hypflow::elastica;
using std::numbers::pi;
using std::numbers::sqrt2;

namespace {

double gk(auto f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-14);
}

double closing_oracle(double p, double lo, double hi) {
  const double n = p * p * (2 - p * p);
  auto f = [&](double t) {
    const double s = std::sin(t);
    return std::sqrt(1 - p * p * s * s) / (1 - n * s * s);
  };
  return 0.5 * std::sqrt(1 - p * p) * std::sqrt(2 - p * p) * gk(f, lo, hi) / pi;
}

void check_invariants(const ElasticaParams& e) {
  const double l = e.lambda, k2 = e.kappa0_sq;
  EXPECT_NEAR(e.C, k2 * k2 / 4 - (l + 2) * k2 / 2, 1e-12 * std::max(1.0, k2 * k2));
  switch (e.family) {
    case Family::circular:
      EXPECT_NEAR(k2, l + 2, 1e-12);
      EXPECT_LT(e.C, 0);
      break;
    case Family::orbit_like:
      EXPECT_NEAR(k2, (2 * l + 4) / (2 - e.p * e.p), 1e-12 * k2);
      EXPECT_GT(k2, l + 2);
      EXPECT_LT(k2, 2 * l + 4);
      EXPECT_LT(e.C, 0);
      break;
    case Family::asymptotically_geodesic:
      EXPECT_NEAR(k2, 2 * l + 4, 1e-12);
      EXPECT_EQ(e.C, 0);
      break;
    case Family::wave_like:
      EXPECT_NEAR(k2, (2 * l + 4) * e.p * e.p / (2 * e.p * e.p - 1), 1e-10 * k2);
      EXPECT_GT(e.C, 0);
      EXPECT_GT(e.p, 1 / sqrt2);
      EXPECT_LT(e.p, 1);
      break;
  }
  if (e.family != Family::circular) {
    EXPECT_NEAR(e.a * e.c, -(l * l + 4 * e.C) / 4, 1e-9 * std::max(1.0, std::abs(e.C)));
    EXPECT_NEAR(-e.a * e.y * e.y + e.c, (k2 - l) * e.y, 1e-12 * std::max(1.0, k2));
  }
}

// Relative spread of the g-speed of a parametrized curve.
double speed_defect(const DiscreteCurve& c) {
  double worst = 0.0;
  for (double v : hyp2::speeds(c)) worst = std::max(worst, std::abs(v - 1.0));
  return worst;
}

}  // namespace

TEST(Classify, PaperExamples) {
  auto c = classify(2, 0);
  EXPECT_EQ(c.family, Family::circular);
  EXPECT_DOUBLE_EQ(c.C, -1);
  c = classify(4, 0);
  EXPECT_EQ(c.family, Family::asymptotically_geodesic);
  EXPECT_EQ(c.C, 0);
  c = classify(3, 0);
  EXPECT_EQ(c.family, Family::orbit_like);
  EXPECT_NEAR(c.p * c.p, 2.0 / 3.0, 1e-15);
  c = classify(5, 0);
  EXPECT_EQ(c.family, Family::wave_like);
  EXPECT_NEAR(c.p * c.p, 5.0 / 6.0, 1e-15);
}

TEST(Classify, BelowThresholdHasNoElastica) {
  try {
    classify(1.0, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parameter);
  }
}

TEST(Classify, InvariantsOnRandomParams) {
  gen::for_all(11, 300, [](gen::Rng& rng, int) {
    const double lambda = rng.uniform(-0.9, 3.0);
    const double k2 = (lambda + 2) * rng.uniform(1.0, 4.0);
    const double sgn = rng.coin() ? 1.0 : -1.0;
    check_invariants(make_params(sgn * std::sqrt(k2), lambda));
  });
  check_invariants(make_params(sqrt2, 0));
  check_invariants(make_params(2, 0));
}

TEST(Profile, Examples) {
  const auto circ = make_params(sqrt2, 0);
  for (double s : {-3.0, 0.0, 2.5}) EXPECT_DOUBLE_EQ(curvature_profile(circ, s), sqrt2);
  const auto wave = make_params(2.5, 0.1);
  ASSERT_EQ(wave.family, Family::wave_like);
  const double K = boost::math::ellint_1(wave.p);
  EXPECT_NEAR(curvature_profile(wave, K / wave.r), 0.0, 1e-13);
  const auto orb = make_params(-1.7, 0.0);
  ASSERT_EQ(orb.family, Family::orbit_like);
  EXPECT_NEAR(curvature_profile(orb, boost::math::ellint_1(orb.p) / orb.r), -1.7 * std::sqrt(1 - orb.p * orb.p),
              1e-13);
}

TEST(Profile, MatchesBoostJacobi) {
  gen::for_all(12, 200, [](gen::Rng& rng, int) {
    const double lambda = rng.uniform(-0.5, 2.0);
    const double k2 = (lambda + 2) * rng.uniform(1.05, 3.5);
    const auto e = make_params(std::sqrt(k2), lambda);
    if (e.family == Family::asymptotically_geodesic) return;
    const double s = rng.uniform(-20, 20);
    double cn, dn;
    const double sn = boost::math::jacobi_elliptic(e.p, e.r * s, &cn, &dn);
    const double want = e.kappa0 * (e.family == Family::orbit_like ? dn : cn);
    EXPECT_NEAR(curvature_profile(e, s), want, 1e-12);
    const double slope = e.family == Family::orbit_like ? -e.kappa0 * e.r * e.p * e.p * sn * cn
                                                        : -e.kappa0 * e.r * sn * dn;
    EXPECT_NEAR(curvature_slope(e, s), slope, 1e-11);
  });
}

TEST(Profile, ExactPeriods) {
  gen::for_all(13, 100, [](gen::Rng& rng, int) {
    const double lambda = rng.uniform(-0.5, 2.0);
    const double k2 = (lambda + 2) * rng.uniform(1.05, 3.5);
    const auto e = make_params(std::sqrt(k2), lambda);
    if (e.family == Family::asymptotically_geodesic) return;
    const double K = boost::math::ellint_1(e.p);
    // dn has period 2K, cn has period 4K.
    const double period = (e.family == Family::orbit_like ? 2 : 4) * K / e.r;
    const double s = rng.uniform(-5, 5);
    EXPECT_NEAR(curvature_profile(e, s + period), curvature_profile(e, s), 1e-10);
  });
}

TEST(Coefficients, AsymptoticallyGeodesicFreeCase) {
  const auto plus = make_params(2, 0);
  EXPECT_EQ(plus.a, 0.0);
  EXPECT_DOUBLE_EQ(plus.c, 4.0);
  const auto minus = make_params(-2, 0);
  EXPECT_DOUBLE_EQ(minus.a, -4.0);
  EXPECT_EQ(minus.c, 0.0);
}

TEST(Coefficients, WaveLikeSigns) {
  const auto e = figure_eight_solve(0.1);
  EXPECT_LT(e.a, 0);
  EXPECT_GT(e.c, 0);
}

TEST(Coefficients, CircularSolvesSystem) {
  ElasticaParams e = make_params(sqrt2, 0);
  const auto [a, c] = canonical_coefficients(e, 1.0);
  EXPECT_NEAR(a * c, 1.0, 1e-14);
  EXPECT_NEAR(-a + c, 2.0, 1e-14);
}

TEST(Coefficients, OffsetHitsCanonicalPoint) {
  gen::for_all(14, 200, [](gen::Rng& rng, int) {
    const double lambda = rng.uniform(-0.5, 2.0);
    const double k2 = (lambda + 2) * rng.uniform(1.05, 3.5);
    const double y = rng.uniform(0.2, 5.0);
    const auto e = make_params((rng.coin() ? 1 : -1) * std::sqrt(k2), lambda, y);
    const cplx g = f_map(e.a, e.c, cplx(0, e.z1));
    EXPECT_NEAR(g.real(), 0.0, 1e-10 * y);
    EXPECT_NEAR(g.imag(), y, 1e-10 * y);
  });
}

TEST(Parametrize, CanonicalStart) {
  for (double k0 : {1.8, -1.8, 2.0, 2.6, -2.6}) {
    const auto e = make_params(k0, 0.0, 1.3);
    const double s[] = {0.0};
    const cplx g = evaluate(e, s)[0];
    EXPECT_NEAR(std::abs(g - cplx(0, 1.3)), 0.0, 1e-12);
    const cplx t = tangent(e, 0.0, g);
    EXPECT_NEAR(std::abs(t - cplx(1.3, 0)), 0.0, 1e-12);
  }
}

TEST(Parametrize, UnitSpeedAndProfile) {
  for (double lambda : {0.0, 0.1}) {
    for (double k0 : {1.8, 2.0, 2.5, -2.5}) {
      const double kk = k0 * std::sqrt((lambda + 2) / 2.0);
      const auto e = make_params(kk, lambda);
      const double span = 6.0;
      const auto curve = parametrize(e, -span / 2, span / 2, 6001);
      EXPECT_LT(speed_defect(curve), 1e-6) << k0 << " " << lambda;
      const auto kappa = hyp2::scalar_curvatures(curve);
      for (std::size_t i = 0; i < curve.size(); i += 50) {
        EXPECT_NEAR(kappa[i], curvature_profile(e, curve.params[i]), 1e-5);
      }
    }
  }
}

TEST(Parametrize, TangentIdentity) {
  const auto e = figure_eight_solve(0.1);
  const auto c = parametrize(e, -3, 3, 3001);
  const auto jet = hyp2::curve_jet(c, hyp2::make_stencils(c));
  for (std::size_t i = 0; i < c.size(); i += 25) {
    const cplx want = tangent(e, c.params[i], jet.u[i]);
    EXPECT_LT(std::abs(jet.d1[i] - want), 1e-6);
  }
}

TEST(Parametrize, CircularIsHyperbolicCircle) {
  for (double k0 : {sqrt2, -sqrt2}) {
    const auto e = make_params(k0, 0);
    ASSERT_EQ(e.family, Family::circular);
    const auto c = parametrize(e, -1, 1, 801);
    EXPECT_LT(speed_defect(c), 1e-9);
    for (double k : hyp2::scalar_curvatures(c)) EXPECT_NEAR(k, k0, 1e-7);
    EXPECT_NEAR(c.nodes[400].x, 0, 1e-14);
    EXPECT_NEAR(c.nodes[400].y, 1, 1e-14);
  }
}

TEST(Parametrize, OdeAndFirstIntegral) {
  for (auto [k0, lambda] : std::vector<std::pair<double, double>>{{1.8, 0}, {2.5, 0}, {2.0, 0}, {2.2, 0.1}}) {
    const auto e = make_params(k0, lambda);
    const auto c = parametrize(e, -3, 3, 800);
    const auto jet = hyp2::curvature_jet(c);
    // Centered stencils only; the two nodes next to each end use skewed ones.
    for (std::size_t i = 3; i + 3 < c.size(); ++i) {
      const double k = jet.kappa[i];
      EXPECT_LT(std::abs(2 * jet.kappa_ss[i] + k * k * k - (lambda + 2) * k), 1e-3);
    }
    EXPECT_LT(first_integral_residual(c, lambda), 1e-4);
  }
  const auto fig = figure_eight_solve(0.1);
  EXPECT_LT(first_integral_residual(parametrize(fig, -2, 2, 800), 0.1), 1e-4);
}

TEST(FirstIntegral, CliffordAndNegativeControl) {
  const auto cl = testcurves::clifford(400);
  EXPECT_LT(first_integral_residual(cl, 0.0), 1e-4);
  const auto jet = hyp2::curvature_jet(cl);
  const double k = jet.kappa[200];
  EXPECT_NEAR(k * k * k * k / 4 - k * k, -1.0, 1e-6);

  const auto bumpy = testcurves::sample(
      [](double t) { return cplx(t, 1.0 + 0.2 * std::sin(5 * t) + 0.1 * t * t); }, -1, 1, 400);
  EXPECT_GT(first_integral_residual(bumpy, 0.0), 1e-1);
}

TEST(FigureEight, RootResidualAndMonotonicity) {
  double prev_p = 0, prev_q = 0;
  for (double lambda : {0.4, 0.2, 0.1, 0.05}) {
    const auto e = figure_eight_solve(lambda);
    check_invariants(e);
    EXPECT_EQ(e.family, Family::wave_like);
    EXPECT_LT(std::abs(figure_eight_integral(lambda, e.p)), 1e-10);
    EXPECT_GT(e.p, prev_p);
    const double q = (1 - e.p * e.p) / (lambda * lambda);
    EXPECT_GT(q, prev_q);
    prev_p = e.p;
    prev_q = q;
  }
  const auto small = figure_eight_solve(0.05);
  EXPECT_NEAR(small.r, 1.0, 0.02);
  EXPECT_NEAR(small.kappa0_sq, 4.0, 0.12);
}

TEST(FigureEight, IntegralMatchesQuadratureOracle) {
  for (double lambda : {0.4, 0.1}) {
    for (double p : {0.75, 0.9, 0.99}) {
      const double k2 = (2 * lambda + 4) * p * p / (2 * p * p - 1);
      const double m = 4 * k2 / ((k2 - lambda) * (k2 - lambda));
      auto f = [&](double t) {
        const double s = std::sin(t), c = std::cos(t);
        return (s * s - lambda / k2) / ((1 - m * c * c) * std::sqrt(1 - p * p * c * c));
      };
      EXPECT_NEAR(figure_eight_integral(lambda, p), gk(f, 0, pi / 2), 1e-11);
    }
  }
}

TEST(FigureEight, RejectsOutOfRangeLambda) {
  EXPECT_THROW(figure_eight_solve(0.0), Error);
  EXPECT_THROW(figure_eight_solve(64 / (pi * pi) - 2 + 0.01), Error);
}

TEST(FigureEight, SegmentClosureSymmetryAndEnergy) {
  double prev = INFINITY;
  for (double lambda : {0.4, 0.2, 0.1, 0.05}) {
    const auto e = figure_eight_solve(lambda);
    const auto seg = figure_eight_segment(e);
    const auto& a = seg.nodes.front();
    const auto& b = seg.nodes.back();
    EXPECT_LT(std::hypot(a.x - b.x, a.y - b.y), 1e-6);
    const std::size_t n = seg.size();
    for (std::size_t i = 0; i < n; i += 40) {
      EXPECT_NEAR(seg.nodes[i].x, -seg.nodes[n - 1 - i].x, 1e-6);
      EXPECT_NEAR(seg.nodes[i].y, seg.nodes[n - 1 - i].y, 1e-6);
    }
    const double energy = figure_eight_segment_energy(e);
    // Oracle: kappa0^2 * integral of cn^2 over [-K, K] / r.
    const double K = boost::math::ellint_1(e.p), E = boost::math::ellint_2(e.p);
    const double p2 = e.p * e.p;
    EXPECT_NEAR(energy, e.kappa0_sq * 2 * (E - (1 - p2) * K) / (p2 * e.r), 1e-12);
    EXPECT_NEAR(hyp2::elastic_energy(seg), energy, 1e-6);
    EXPECT_GT(energy, 8);
    EXPECT_LT(energy, 9);
    EXPECT_LT(energy, prev);
    prev = energy;
    if (lambda == 0.1) {
      EXPECT_LT(energy, 8.8);
    }
  }
  EXPECT_LT(prev - 8, 0.2);
}

TEST(FigureEight, EndTangent) {
  double prev = INFINITY;
  for (double lambda : {0.4, 0.2, 0.1, 0.05}) {
    const auto e = figure_eight_solve(lambda);
    const auto t = figure_eight_tangent(e);
    EXPECT_LT(t.tangent.vx, 0);
    EXPECT_NEAR(t.ratio, t.predicted_ratio, 1e-8 * std::abs(t.predicted_ratio));
    EXPECT_LT(t.angle_to_vertical, prev);
    prev = t.angle_to_vertical;
    EXPECT_NEAR(std::hypot(t.tangent.vx, t.tangent.vy), 1.0, 1e-14);
  }
}

TEST(Closing, WindowsOfWidthAtMostPiStayBelowOne) {
  gen::for_all(15, 300, [](gen::Rng& rng, int) {
    const double p = rng.uniform(0.01, 0.999);
    const double lo = rng.uniform(-10, 10);
    const double width = rng.uniform(0, pi);
    EXPECT_LT(closing_multiplicity(p, {lo, lo + width}), 1.0);
  });
}

TEST(Closing, MatchesQuadratureOracle) {
  EXPECT_NEAR(closing_multiplicity(0.5, {0, 2 * pi}), closing_oracle(0.5, 0, 2 * pi), 1e-10);
  gen::for_all(16, 100, [](gen::Rng& rng, int) {
    const double p = rng.uniform(0.05, 0.98);
    const double lo = rng.uniform(-4, 4), hi = lo + rng.uniform(0, 6);
    EXPECT_NEAR(closing_multiplicity(p, {lo, hi}), closing_oracle(p, lo, hi), 1e-9);
  });
}

TEST(Closing, HalfPeriodBoundAtP09) {
  const double p = 0.9;
  const double K = boost::math::ellint_1(p);
  const double eta = std::sqrt(1 - p * p) / std::sqrt(2 - p * p) * K / (pi / 2);
  EXPECT_LT(closing_multiplicity(p, {-pi / 2, pi / 2}), (1 + eta) / 2);
}

TEST(Closing, ArcWindowUsesAmplitude) {
  const auto e = make_params(std::sqrt(4 / (2 - 0.81)), 0.0);
  ASSERT_EQ(e.family, Family::orbit_like);
  EXPECT_NEAR(e.p, 0.9, 1e-14);
  const double K = boost::math::ellint_1(e.p);
  EXPECT_NEAR(closing_multiplicity(e, {0, 2 * K / e.r}), closing_multiplicity(0.9, {0, pi}), 1e-12);
  const auto constrained = make_params(1.5, 0.05);
  EXPECT_THROW(closing_multiplicity(constrained, ArcWindow{0, 1}), Error);
}

TEST(OrbitEnergy, ClosedFormAboveEightM) {
  for (double p : {0.5, 0.9, 0.99}) {
    const auto e = make_params(std::sqrt(4 / (2 - p * p)), 0.0);
    for (int m : {1, 2}) {
      const double energy = orbitlike_segment_energy(e, AmplitudeWindow{0, m * pi});
      EXPECT_NEAR(energy, 8 * m * boost::math::ellint_2(p) / std::sqrt(2 - p * p), 1e-8);
      EXPECT_GT(energy, 8 * m);
    }
    EXPECT_EQ(orbitlike_segment_energy(e, AmplitudeWindow{1.0, 1.0}), 0.0);
  }
}

TEST(OrbitEnergy, MatchesCurveQuadrature) {
  const double p = 0.9;
  const auto e = make_params(std::sqrt(4 / (2 - p * p)), 0.0);
  const double K = boost::math::ellint_1(p);
  const ArcWindow w{0, 2 * K / e.r};
  const auto c = parametrize(e, w.alpha, w.beta, 2001);
  EXPECT_NEAR(hyp2::elastic_energy(c), orbitlike_segment_energy(e, w), 1e-4);
}

TEST(Heart, GapPositiveAndClosedForm) {
  EXPECT_NEAR(heart_gap_for_delta(0.1), 8 / sqrt2 * std::sin(0.1), 1e-15);
  EXPECT_EQ(heart_gap_for_delta(0.0), 0.0);
  EXPECT_LT(heart_gap_for_delta(1e-9), 1e-8);
  for (double p : {0.1, 0.5, 0.9, 0.99, 0.999999}) {
    const auto h = heart_energy_gap(p);
    EXPECT_GT(h.gap, 0);
    EXPECT_GT(h.delta, 0);
    EXPECT_LE(h.delta, pi / 4);
    EXPECT_LT(closing_multiplicity(p, {-h.delta, pi + h.delta}), 1.0);
  }
}

TEST(WaveLike, FreeCurvesDoNotClose) {
  // Sampled nodes of free wave-like elastica over several periods stay apart.
  gen::for_all(17, 20, [](gen::Rng& rng, int) {
    const double k0 = rng.uniform(2.05, 4.0);
    const auto e = make_params(k0, 0.0);
    ASSERT_EQ(e.family, Family::wave_like);
    const double K = boost::math::ellint_1(e.p);
    const auto c = parametrize(e, -4 * K / e.r, 4 * K / e.r, 401);
    double closest = INFINITY;
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 20; j < c.size(); ++j)
        closest = std::min(closest, hyp2::distance(c.nodes[i], c.nodes[j]));
    EXPECT_GT(closest, 1e-3);
  });
}
