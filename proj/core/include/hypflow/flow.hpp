#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "hypflow/hyp2.hpp"

namespace hypflow::flow {

// Weight a(x, y) < 0 in front of the bracket of the flow.
struct WeightFunction {
  enum class Kind { willmore, elastic, custom };
  Kind kind = Kind::willmore;
  std::function<double(double, double)> custom;

  double operator()(double x, double y) const;
  static WeightFunction willmore() { return {}; }
  static WeightFunction elastic() { return {Kind::elastic, {}}; }
};
const char* to_string(WeightFunction::Kind k);

struct FlowConfig {
  std::size_t resolution = 0;  // 0 keeps the node count of the initial datum
  double dt = 0.0;             // initial step; <= 0 selects default_dt
  double dt_max = 0.0;         // <= 0 means no cap
  double t_max = 1.0;
  double grad_tol = 1e-6;
  double length_cap = 0.0;     // <= 0 selects 10x the initial length
  double height_floor = 1e-3;
  std::size_t reparam_every = 25;
  std::size_t max_steps = 100000;
  std::size_t stride = 1;      // keep every stride-th accepted step in the trajectory
  double energy_slack = 1e-10; // steps raising the energy by more are rejected
  bool adaptive = true;        // grow after accepted and halve after rejected steps
  double max_move = 0.25;      // steps moving a node farther than this fraction of its g-spacing are rejected
  WeightFunction weight;

  void validate() const;
};

struct EnergyReport {
  double elastic = 0.0;
  double willmore = 0.0;
  double boundary_term = 0.0;
  double hyp_length = 0.0;
  double min_height = 0.0;
  double total_abs_curvature = 0.0;
  double grad_norm = 0.0;  // h(t)
};

struct FlowState {
  double t = 0.0;
  DiscreteCurve curve;
  EnergyReport report;
  std::size_t step_count = 0;
};

// Nodal velocity a (kappa_ss + kappa^3/2 - kappa) N with N the g-unit normal; zero at the ends.
std::vector<HVector> velocity(const DiscreteCurve& curve, const WeightFunction& weight);
// h = integral of |V|_g^2 / |a| ds.
double gradient_norm(const DiscreteCurve& curve, const WeightFunction& weight);
EnergyReport monitor(const DiscreteCurve& curve, const WeightFunction& weight);
EnergyReport monitor(const FlowState& state, const WeightFunction& weight);

// 0.1 h_g^4 min |1/a| with h_g the smallest nodal g-spacing.
double default_dt(const DiscreteCurve& curve, const WeightFunction& weight);

// Resamples on uniform params over the same interval so that |d_x u|_g is constant.
// Endpoints and the clamped tangent directions are kept; corners are dropped.
DiscreteCurve reparametrize_constant_speed(const DiscreteCurve& curve);
DiscreteCurve reparametrize_constant_speed(const DiscreteCurve& curve, std::size_t n_out);

// One linearly implicit step of size dt. Throws step errors on solver failure,
// loss of immersion or non-positive height.
DiscreteCurve imex_step(const DiscreteCurve& curve, double dt, const WeightFunction& weight);

struct StepResult {
  FlowState state;
  double dt_used = 0.0;
  double dt_next = 0.0;
  std::size_t rejected = 0;
};
// Takes one accepted step starting from dt, halving on rejection.
StepResult step(const FlowState& state, double dt, const FlowConfig& config);

enum class Verdict { converged, singular_length, singular_height, budget_exhausted, step_failure };
const char* to_string(Verdict v);

struct RunResult {
  std::vector<FlowState> trajectory;
  FlowState final_state;
  Verdict verdict = Verdict::budget_exhausted;
  std::string message;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double max_energy_increase = 0.0;  // largest E(t + dt) - E(t) over accepted steps
  double initial_length = 0.0;
  double max_length = 0.0;
  double min_length = 0.0;
};

using Observer = std::function<void(const FlowState&)>;
RunResult run(const DiscreteCurve& u0, const FlowConfig& config, const Observer& observe = {});

// Header t,elastic,willmore,length,min_height,grad_norm,total_abs_curvature; round-trip decimals.
void write_trajectory_csv(std::ostream& os, const std::vector<FlowState>& trajectory);

// max over interior nodes with centered stencils of |2 kappa_ss + kappa^3 - (lambda + 2) kappa|.
double elastica_residual(const DiscreteCurve& curve, double lambda);

struct ThresholdCheck {
  bool satisfied = false;
  double willmore = 0.0;
  double bound = 0.0;   // 4 pi - 2 pi [d_x u2 / |d_x u|]
  double margin = 0.0;  // bound - willmore
  double elastic_margin = 0.0;  // 8 - E
};
ThresholdCheck willmore_threshold_check(const DiscreteCurve& u0);

}  // namespace hypflow::flow
