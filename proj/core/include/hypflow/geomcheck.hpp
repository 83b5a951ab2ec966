#pragma once

#include <span>
#include <vector>

#include "hypflow/hyp2.hpp"

namespace hypflow::geomcheck {

struct Crossing {
  double s = 0.0;  // parameter on the earlier branch
  double t = 0.0;  // parameter on the later branch, s < t
  HPoint point;
  double distance = 0.0;  // Euclidean gap after polishing; 0 for transversal crossings
  bool transversal = true;
};

struct IntersectionReport {
  std::vector<Crossing> pairs;
  bool embedded = true;
  double min_height = 0.0;
  double max_norm = 0.0;
};

inline constexpr double kNearTouch = 1e-7;

// Segment crossings and near-touches (Euclidean gap <= tol) of the polyline through the nodes,
// refined on the local cubic interpolant. Segment pairs at most two cells apart are skipped.
IntersectionReport self_intersections(const DiscreteCurve& curve, double tol = kNearTouch);

enum class LiYauVerdict {
  embedded_below,  // E <= 8 - band and embedded
  counterexample,  // E <= 8 - band but not embedded
  threshold,       // |E - 8| < band: no assertion
  above,           // E >= 8 + band: no assertion
};
const char* to_string(LiYauVerdict v);

struct LiYauResult {
  double energy = 0.0;
  IntersectionReport report;
  LiYauVerdict verdict = LiYauVerdict::above;
  bool implication_holds = true;
};
LiYauResult liyau_check(const DiscreteCurve& curve, double band = 1e-3);

struct MonitorReport {
  double value = 0.0;
  std::vector<std::size_t> violations;  // indices of curves failing the hypotheses
};
// Infimum of min heights; hypotheses: endpoint heights >= alpha and E < 8.
MonitorReport height_bound_monitor(std::span<const DiscreteCurve> curves, double alpha);
// Maximum Euclidean node norm; hypotheses: endpoints shared with the first curve and E < 8.
MonitorReport norm_bound_monitor(std::span<const DiscreteCurve> curves);

double max_norm(const DiscreteCurve& curve);

}  // namespace hypflow::geomcheck
