#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "hypflow/numerics.hpp"

namespace hypflow {

using cplx = std::complex<double>;

// A point of the upper half-plane {y > 0}.
struct HPoint {
  double x = 0.0;
  double y = 1.0;
  cplx z() const { return {x, y}; }
  static HPoint from(cplx z) { return {z.real(), z.imag()}; }
};

// Tangent vector with Euclidean components (vx, vy) at `base`.
struct HVector {
  HPoint base;
  double vx = 0.0;
  double vy = 0.0;
  cplx v() const { return {vx, vy}; }
};

// Sampled profile curve. boundary_tangents are the clamped data at the two
// ends as g-unit vectors; closed curves wrap and carry no boundary data.
struct DiscreteCurve {
  std::vector<double> params;
  std::vector<HPoint> nodes;
  std::array<HVector, 2> boundary_tangents{};
  bool closed = false;
  // Interior node indices where the curve is only C^1 (curvature may jump).
  // Energies are integrated piecewise between corners.
  std::vector<std::size_t> corners;

  std::size_t size() const { return nodes.size(); }
  std::vector<cplx> points() const;
  // Throws on violated invariants (sizes, heights, distinct nodes, monotone params).
  void validate() const;
};

// z -> (az + b)/(cz + d), ad - bc > 0.
struct MoebiusMap {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
};

namespace hyp2 {

using numerics::FdOrder;
inline constexpr FdOrder kDefaultOrder = FdOrder::fourth;

double metric_norm(const HVector& v);
double metric_inner(const HVector& v, const HVector& w);
double distance(const HPoint& p, const HPoint& q);

// Builds a curve from samples; boundary tangents are estimated from the nodes.
DiscreteCurve make_curve(std::vector<double> params, const std::vector<cplx>& points, bool closed = false);
// Recomputes boundary tangents from one-sided differences of the nodes.
void estimate_boundary_tangents(DiscreteCurve& curve, FdOrder order = kDefaultOrder);
// Uniform grid on [a, b] with n nodes.
std::vector<double> uniform_params(double a, double b, std::size_t n);

numerics::Stencils make_stencils(const DiscreteCurve& curve, FdOrder order = kDefaultOrder);
// Splits an open curve at its corners; a curve without corners is returned whole.
std::vector<DiscreteCurve> pieces(const DiscreteCurve& curve);

// First and second parameter derivatives at every node.
struct Jet {
  std::vector<cplx> u, d1, d2;
};
Jet curve_jet(const DiscreteCurve& curve, const numerics::Stencils& st);

HVector cov_derivative(const DiscreteCurve& curve, const std::vector<HVector>& field, std::size_t i,
                       FdOrder order = kDefaultOrder);
HVector curvature_vector(const DiscreteCurve& curve, std::size_t i, FdOrder order = kDefaultOrder);
std::vector<HVector> curvature_vectors(const DiscreteCurve& curve, FdOrder order = kDefaultOrder);
double scalar_curvature(const DiscreteCurve& curve, std::size_t i, FdOrder order = kDefaultOrder);
std::vector<double> scalar_curvatures(const DiscreteCurve& curve, FdOrder order = kDefaultOrder);
// Scalar curvature with its first two arc-length derivatives, and the g-speed.
struct CurvatureJet {
  std::vector<double> kappa, kappa_s, kappa_ss, speed;
};
CurvatureJet curvature_jet(const DiscreteCurve& curve, FdOrder order = kDefaultOrder);
// |d_x u|_g at every node.
std::vector<double> speeds(const DiscreteCurve& curve, FdOrder order = kDefaultOrder);

// Integral over the parameter domain of f_i * |d_x u|_g (i.e. of f ds).
double integrate_ds(const DiscreteCurve& curve, const std::vector<double>& f, const std::vector<double>& speed);

double hyperbolic_length(const DiscreteCurve& curve, FdOrder order = kDefaultOrder);
double elastic_energy(const DiscreteCurve& curve, FdOrder order = kDefaultOrder);
double total_abs_curvature(const DiscreteCurve& curve, FdOrder order = kDefaultOrder);
double min_height(const DiscreteCurve& curve);

// Graph (x, g(x)) with samples of g, g', g'' on the grid x.
double elastic_energy_graph(const std::vector<double>& x, const std::vector<double>& g, const std::vector<double>& g1,
                            const std::vector<double>& g2);

// [d_x u2 / |d_x u|] evaluated at b minus at a; zero for closed curves.
double boundary_term(const DiscreteCurve& curve, FdOrder order = kDefaultOrder);
// (pi/2)(E - 4 * boundary_term).
double willmore_energy(const DiscreteCurve& curve, FdOrder order = kDefaultOrder);
// Integral of H^2 over the surface of revolution from the profile's principal curvatures.
double willmore_energy_direct(const DiscreteCurve& curve, FdOrder order = kDefaultOrder);
double surface_area(const DiscreteCurve& curve, FdOrder order = kDefaultOrder);

MoebiusMap compose(const MoebiusMap& outer, const MoebiusMap& inner);
HPoint apply_moebius(const MoebiusMap& m, const HPoint& p);
HVector pushforward(const MoebiusMap& m, const HVector& v);
DiscreteCurve apply_moebius(const MoebiusMap& m, const DiscreteCurve& curve);
// Phi with Phi(p) = iy and dPhi_p(v) = y for a g-unit v.
MoebiusMap isometry_to_standard(const HPoint& p, const HVector& v, double y);

// Euclidean circle with center (cx, cy), cy > rho > 0, i.e. a hyperbolic circle.
// Angles phi are measured from the lowest point; increasing phi runs counterclockwise.
struct HypCircle {
  double cx = 0.0, cy = 1.0, rho = 0.5;
  cplx at(double phi) const;
  // Hyperbolic arc length from the lowest point to phi, monotone and unbounded in phi.
  double arclength(double phi) const;
  double angle_at(double arclen) const;
  double circumference() const;
};
// Points at hyperbolic arc-length offsets s from angle phi0, counterclockwise when ccw.
std::vector<cplx> circle_points(const HypCircle& c, double phi0, bool ccw, std::span<const double> s);

HPoint reflect(const HPoint& p);
HVector reflect(const HVector& v);
// Reflection z -> -conj(z); with reverse the parameter runs backwards so that
// the result is parametrized on the same interval by x -> a + b - x.
DiscreteCurve reflect(const DiscreteCurve& curve, bool reverse);

}  // namespace hyp2
}  // namespace hypflow
