#pragma once

#include <functional>

#include "hypflow/elastica.hpp"
#include "hypflow/hyp2.hpp"

namespace hypflow::scenarios {

using hyp2::HypCircle;

// (x, eps cosh(x / eps)) on [-a, a].
DiscreteCurve catenary(double eps, double a, std::size_t n);
// 4 (e^{2a/eps} - 1)/(e^{2a/eps} + 1) + 4 tanh(a/eps)
double catenary_energy(double eps, double a);

// Closed circle with center (x_center, sqrt 2) and radius 1, uniform in hyperbolic arc length,
// starting at the lowest point and running counterclockwise.
DiscreteCurve clifford_circle(double x_center, std::size_t n);
// Open arc of the same circle on hyperbolic arc-length window [s_lo, s_hi] from the lowest point.
DiscreteCurve clifford_arc(double x_center, double s_lo, double s_hi, std::size_t n);

// Lower bound sqrt2 (1 + sqrt2)/(sqrt2 - 1) on the cap parameter h.
double cap_bound();
// Center (-h/sqrt2, h), radius h/sqrt2.
HypCircle cap_circle(double h);

// Circle C_x: center (x, sqrt 2), radius 1.
HypCircle matching_circle(double x);

struct Tangency {
  double eta;
  HPoint z_star;
  double q;  // eta * h
};
// Largest eta with eta * C' externally tangent to C_x.
Tangency tangency(double x, double h);

// (x, g(x)) sampled on n uniform nodes of [a, b].
DiscreteCurve graph_curve(const std::function<double(double)>& g, double a, double b, std::size_t n);
// Vertical geodesic from (0, y0) to (0, y1), uniform in hyperbolic arc length.
DiscreteCurve vertical_geodesic(double y0, double y1, std::size_t n);
// (amp sin^6(pi t), exp(ell t)) on t in [0, 1]: clamped data of the vertical geodesic.
// The perturbation vanishes to fifth order at the ends, so curvature and its
// derivatives match the geodesic there.
DiscreteCurve perturbed_geodesic(double amp, double ell, std::size_t n);

struct SingularDatumSpec {
  double lambda = 0.1;
  double h = 0.0;  // <= 0 selects twice cap_bound()
  std::size_t resolution = 801;
};

struct SingularDatum {
  DiscreteCurve curve;
  elastica::ElasticaParams fig8;
  double x = 0.0;
  double eta = 0.0;
  double h = 0.0;
  HPoint z_x;
  HPoint z_star;
  HPoint w_x;
  double fig8_energy = 0.0;     // closed form for the segment
  double cap_length = 0.0;      // hyperbolic length of one cap
  double cap_energy = 0.0;      // 2 * cap_length
  double total_length = 0.0;
};

void validate(const SingularDatumSpec& spec);
// Figure-eight segment closed off by two circular caps, rescaled so that both ends sit at (0, 1)
// with tangents (0, -1) and (0, 1). Nodes are uniform in hyperbolic arc length on each piece
// and params are that arc length mapped to [-1, 1]. The four junctions are recorded as corners.
SingularDatum build_singular_datum(const SingularDatumSpec& spec);

}  // namespace hypflow::scenarios
