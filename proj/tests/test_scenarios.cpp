#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gen.hpp"
#include "hypflow/error.hpp"
#include "hypflow/scenarios.hpp"

using namespace hypflow;
using namespace hypflow::scenarios;
using std::numbers::pi;
using std::numbers::sqrt2;

namespace {

double angle_between(cplx a, cplx b) { return std::abs(std::arg(a / b)); }

cplx unit(cplx z) { return z / std::abs(z); }

}  // namespace

TEST(Catenary, EnergyMatchesClosedForm) {
  EXPECT_NEAR(catenary_energy(1, 1), 8 * std::tanh(1.0), 1e-14);
  for (auto [eps, n] : std::vector<std::pair<double, std::size_t>>{{1.0, 400}, {0.5, 400}, {0.2, 800}}) {
    const auto c = catenary(eps, 1.0, n);
    EXPECT_NEAR(hyp2::elastic_energy(c), catenary_energy(eps, 1.0), 1e-4) << eps;
    EXPECT_NEAR(hyp2::min_height(c), eps, 1e-3 * eps);
  }
  EXPECT_LT(catenary_energy(1, 1), catenary_energy(0.5, 1));
  EXPECT_LT(catenary_energy(0.5, 1), catenary_energy(0.2, 1));
  EXPECT_LT(catenary_energy(0.2, 1), 8);
}

TEST(Catenary, OddNodeCountHitsMinimum) {
  const auto c = catenary(0.3, 1.0, 401);
  EXPECT_DOUBLE_EQ(hyp2::min_height(c), 0.3);
}

TEST(Clifford, CurvatureNormIsTwo) {
  const auto c = clifford_circle(0.0, 400);
  for (const auto& k : hyp2::curvature_vectors(c)) {
    const double n = hyp2::metric_norm(k);
    EXPECT_NEAR(n * n, 2.0, 1e-4);
  }
}

TEST(Clifford, EnergyAtLeastFourPiAndTranslationInvariant) {
  const double e0 = hyp2::elastic_energy(clifford_circle(0.0, 400));
  gen::for_all(21, 10, [&](gen::Rng& rng, int) {
    const double x = rng.uniform(-5, 5);
    const double e = hyp2::elastic_energy(clifford_circle(x, 400));
    EXPECT_GE(e, 4 * pi);
    EXPECT_NEAR(e, e0, 1e-8);
  });
}

TEST(Clifford, ArcHasExactBoundaryTangents) {
  const auto c = clifford_arc(0.0, -1.0, 1.0, 201);
  auto copy = c;
  hyp2::estimate_boundary_tangents(copy);
  for (int e = 0; e < 2; ++e) {
    EXPECT_NEAR(hyp2::metric_norm(c.boundary_tangents[e]), 1.0, 1e-14);
    EXPECT_NEAR(c.boundary_tangents[e].vx, copy.boundary_tangents[e].vx, 1e-7);
    EXPECT_NEAR(c.boundary_tangents[e].vy, copy.boundary_tangents[e].vy, 1e-7);
  }
}

TEST(Cap, CircleAndBound) {
  const auto c = cap_circle(10);
  EXPECT_DOUBLE_EQ(c.cx, -10 / sqrt2);
  EXPECT_DOUBLE_EQ(c.cy, 10);
  EXPECT_DOUBLE_EQ(c.rho, 10 / sqrt2);
  EXPECT_NEAR(cap_bound(), 4 + 3 * sqrt2, 1e-13);
  EXPECT_THROW(cap_circle(cap_bound()), Error);
  // Lowest point of C' sits above the highest point of every C_x.
  const double h = cap_bound() * 1.0001;
  const auto cp = cap_circle(h);
  EXPECT_GT(cp.cy - cp.rho, sqrt2 + 1);
}

TEST(Tangency, ResidualsAndTouchPoint) {
  gen::for_all(22, 200, [](gen::Rng& rng, int) {
    const double x = rng.uniform(0.01, 0.99);
    const double h = rng.uniform(cap_bound() * 1.01, 40);
    const auto t = tangency(x, h);
    const auto cp = cap_circle(h);
    const cplx c1(x, sqrt2), c2(t.eta * cp.cx, t.eta * cp.cy);
    const double r2 = t.eta * cp.rho;
    EXPECT_NEAR(std::abs(c1 - c2) - (1 + r2), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(t.z_star.z() - c1), 1.0, 1e-10);
    EXPECT_NEAR(std::abs(t.z_star.z() - c2), r2, 1e-10);
    EXPECT_LT(t.z_star.x, 0);
    EXPECT_GT(t.eta, 0);
    EXPECT_LT(t.eta, 1);
    // Slightly smaller eta overlaps (two intersections), slightly larger separates.
    for (double d : {-1e-6, 1e-6}) {
      const double e = t.eta + d;
      const double gap = std::abs(c1 - cplx(e * cp.cx, e * cp.cy)) - (1 + e * cp.rho);
      if (d < 0) {
        EXPECT_LT(gap, 0);
      } else {
        EXPECT_GT(gap, 0);
      }
    }
  });
}

TEST(Graph, Examples) {
  const auto flat = graph_curve([](double) { return 1.0; }, -1, 1, 50);
  for (const auto& p : flat.nodes) EXPECT_EQ(p.y, 1.0);
  const auto cosh_graph = graph_curve([](double x) { return std::cosh(x); }, -1, 1, 101);
  const auto cat = catenary(1, 1, 101);
  for (std::size_t i = 0; i < cat.size(); ++i) {
    EXPECT_EQ(cat.nodes[i].x, cosh_graph.nodes[i].x);
    EXPECT_EQ(cat.nodes[i].y, cosh_graph.nodes[i].y);
  }
  const auto semi = graph_curve([](double x) { return std::sqrt(4 - x * x); }, -1.5, 1.5, 400);
  EXPECT_NEAR(hyp2::elastic_energy(semi), 0.0, 1e-4);
  EXPECT_THROW(graph_curve([](double x) { return x; }, -1, 1, 20), Error);
}

TEST(Geodesics, VerticalAndPerturbed) {
  const auto v = vertical_geodesic(1, std::exp(2.0), 101);
  EXPECT_NEAR(hyp2::hyperbolic_length(v), 2.0, 1e-7);
  EXPECT_NEAR(hyp2::elastic_energy(v), 0.0, 1e-12);
  const auto p = perturbed_geodesic(0.3, 2.0, 201);
  EXPECT_EQ(p.nodes.front().x, 0.0);
  EXPECT_EQ(p.nodes.back().y, std::exp(2.0));
  EXPECT_GT(hyp2::elastic_energy(p), 0.01);
  EXPECT_LT(hyp2::elastic_energy(p), 8);
}

class SingularDatumTest : public ::testing::TestWithParam<double> {};

TEST_P(SingularDatumTest, BoundaryDataAndSymmetry) {
  const auto d = build_singular_datum({GetParam(), 0, 801});
  const auto& c = d.curve;
  EXPECT_NEAR(c.nodes.front().x, 0, 1e-12);
  EXPECT_NEAR(c.nodes.front().y, 1, 1e-12);
  EXPECT_NEAR(c.nodes.back().x, 0, 1e-12);
  EXPECT_NEAR(c.nodes.back().y, 1, 1e-12);
  auto est = c;
  hyp2::estimate_boundary_tangents(est);
  EXPECT_LT(angle_between(est.boundary_tangents[0].v(), {0, -1}), 2 * pi / 180);
  EXPECT_LT(angle_between(est.boundary_tangents[1].v(), {0, 1}), 2 * pi / 180);
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_NEAR(c.nodes[i].x, -c.nodes[n - 1 - i].x, 1e-12);
    EXPECT_NEAR(c.nodes[i].y, c.nodes[n - 1 - i].y, 1e-12);
    EXPECT_NEAR(c.params[i], -c.params[n - 1 - i], 1e-15);
  }
  EXPECT_GT(hyp2::min_height(c), 0);
  EXPECT_NO_THROW(c.validate());
}

TEST_P(SingularDatumTest, ConstantSpeedAndJunctions) {
  const auto d = build_singular_datum({GetParam(), 0, 801});
  const auto& c = d.curve;
  const double want = d.total_length / 2;
  for (double v : hyp2::speeds(c)) EXPECT_NEAR(v / want, 1.0, 1e-4);
  ASSERT_EQ(c.corners.size(), 4u);
  const auto parts = hyp2::pieces(c);
  for (std::size_t k = 0; k + 1 < parts.size(); ++k) {
    const auto a = hyp2::curve_jet(parts[k], hyp2::make_stencils(parts[k]));
    const auto b = hyp2::curve_jet(parts[k + 1], hyp2::make_stencils(parts[k + 1]));
    EXPECT_LT(angle_between(a.d1.back(), b.d1.front()), 1e-6) << k;
    EXPECT_LT(std::abs(a.u.back() - b.u.front()), 1e-15);
  }
  // Figure-eight tangent meets C_x tangent at z_x.
  const double x = d.x;
  EXPECT_LT(angle_between(-unit(elastica::figure_eight_tangent(d.fig8).tangent.v()),
                          cplx(std::sqrt(1 - x * x), -x)),
            1e-12);
}

TEST_P(SingularDatumTest, EnergyDecomposition) {
  const auto d = build_singular_datum({GetParam(), 0, 801});
  const double e = hyp2::elastic_energy(d.curve);
  EXPECT_NEAR(e, d.fig8_energy + 2 * d.cap_energy, 1e-3);
  EXPECT_NEAR(d.cap_energy, 2 * d.cap_length, 1e-14);
  EXPECT_NEAR(hyp2::hyperbolic_length(d.curve), d.total_length, 1e-6);
  // One cap as its own curve.
  auto parts = hyp2::pieces(d.curve);
  const double cap_e = hyp2::elastic_energy(parts[0]) + hyp2::elastic_energy(parts[1]);
  const double cap_l = hyp2::hyperbolic_length(parts[0]) + hyp2::hyperbolic_length(parts[1]);
  EXPECT_NEAR(cap_e, 2 * cap_l, 1e-3);
}

INSTANTIATE_TEST_SUITE_P(Lambdas, SingularDatumTest, ::testing::Values(0.4, 0.2, 0.1));

TEST(SingularDatum, EnergyDecreasesTowardEight) {
  double prev = INFINITY;
  for (double l : {0.4, 0.2, 0.1, 0.05}) {
    const auto d = build_singular_datum({l, 0, 801});
    const double e = hyp2::elastic_energy(d.curve);
    EXPECT_LT(e, prev);
    EXPECT_GT(e, 8);
    prev = e;
    EXPECT_GT(d.x, 0);
    EXPECT_LT(d.x, 1);
  }
}

TEST(SingularDatum, RejectsBadSpec) {
  EXPECT_THROW(build_singular_datum({0.0, 0, 801}), Error);
  EXPECT_THROW(build_singular_datum({0.1, 5.0, 801}), Error);
  EXPECT_THROW(build_singular_datum({0.1, 0, 800}), Error);
}
