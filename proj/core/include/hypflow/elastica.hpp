#pragma once

#include <span>
#include <utility>
#include <vector>

#include "hypflow/hyp2.hpp"

namespace hypflow::elastica {

enum class Family { circular, orbit_like, asymptotically_geodesic, wave_like };
const char* to_string(Family f);

// A lambda-elastica in canonical position: gamma(0) = iy, gamma'(0) = y and
// kappa(0) = kappa0 is the extremal curvature. For non-constant curvature
//   gamma(s) = f(int_0^s ds / theta + i z1),  theta = kappa^2 - lambda + 2i kappa'.
struct ElasticaParams {
  Family family = Family::circular;
  double lambda = 0.0;
  double kappa0 = 0.0;  // signed
  double kappa0_sq = 0.0;
  double p = 0.0;  // elliptic modulus (orbit-like, wave-like)
  double r = 0.0;  // frequency
  double C = 0.0;  // first-integral constant
  double y = 1.0;
  double a = 0.0, c = 0.0;
  double z1 = 0.0;  // imaginary part of the offset
  double s_star = 0.0;
};

struct Classification {
  Family family;
  double p;
  double r;
  double C;
};

// Throws parameter error when kappa0_sq < lambda + 2.
Classification classify(double kappa0_sq, double lambda);

// Canonical params with signed extremal curvature kappa0 at height y.
ElasticaParams make_params(double kappa0, double lambda, double y = 1.0);

double curvature_profile(const ElasticaParams& e, double s);
double curvature_slope(const ElasticaParams& e, double s);
cplx theta(const ElasticaParams& e, double s);

// Real (a, c) with ac = -(lambda^2 + 4C)/4 and -a y^2 + c = (kappa0^2 - lambda) y.
std::pair<double, double> canonical_coefficients(const ElasticaParams& e, double y);
// Imaginary part of z1 with f(i z1) = iy for the active case of f.
double canonical_offset(double a, double c, double y);
// The map f of the parametrization for coefficients (a, c).
cplx f_map(double a, double c, cplx z);

// Positions gamma(s) at arbitrary arc-length values.
std::vector<cplx> evaluate(const ElasticaParams& e, std::span<const double> s);
// gamma'(s) = (a gamma^2 + c) / theta, given gamma(s).
cplx tangent(const ElasticaParams& e, double s, cplx gamma);

// Curve on [s_lo, s_hi] with n nodes uniform in arc length (params are s).
DiscreteCurve parametrize(const ElasticaParams& e, double s_lo, double s_hi, std::size_t n);
DiscreteCurve parametrize_at(const ElasticaParams& e, std::vector<double> s);

// Spread (max - min) over interior nodes of kappa_s^2 + kappa^4/4 - (lambda+2) kappa^2/2.
double first_integral_residual(const DiscreteCurve& curve, double lambda);

// Figure-eights.
double figure_eight_integral(double lambda, double p);
ElasticaParams figure_eight_solve(double lambda);
double quarter_period(const ElasticaParams& e);  // K(p)/r
DiscreteCurve figure_eight_segment(const ElasticaParams& e, std::size_t n = 801);
// 2 kappa0^2 (E(p) - (1 - p^2) K(p)) / (r p^2): energy of the segment over [-K/r, K/r].
double figure_eight_segment_energy(const ElasticaParams& e);

struct EndTangent {
  HVector tangent;          // Euclidean unit direction at gamma(K/r)
  double ratio;             // sgn(kappa0) Im / Re of gamma'(K/r)
  double predicted_ratio;   // -2 r |kappa0| sqrt(1 - p^2) / lambda
  double angle_to_vertical; // angle between the unit tangent and sgn(kappa0) i
};
EndTangent figure_eight_tangent(const ElasticaParams& e);

// Orbit-like windows.
struct ArcWindow {
  double alpha;
  double beta;
};
struct AmplitudeWindow {
  double lo;
  double hi;
};
AmplitudeWindow amplitude_window(const ElasticaParams& e, ArcWindow w);

// Right-hand side of the closing condition divided by pi (free orbit-like only).
double closing_multiplicity(double p, AmplitudeWindow w);
double closing_multiplicity(const ElasticaParams& e, ArcWindow w);

// 2 |kappa0| (E(hi, p) - E(lo, p)).
double orbitlike_segment_energy(const ElasticaParams& e, AmplitudeWindow w);
double orbitlike_segment_energy(const ElasticaParams& e, ArcWindow w);

struct HeartGap {
  double delta;
  double gap;
};
// Largest delta <= pi/4 with closing_multiplicity(p, (-delta, pi + delta)) < 1,
// and the energy margin (8/sqrt 2) sin(delta) above 8.
HeartGap heart_energy_gap(double p);
double heart_gap_for_delta(double delta);

}  // namespace hypflow::elastica
