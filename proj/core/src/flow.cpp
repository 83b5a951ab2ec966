#include "hypflow/flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>
#include <tuple>

#include "hypflow/curve_io.hpp"
#include "hypflow/error.hpp"
#include "hypflow/numerics.hpp"

namespace hypflow::flow {

namespace {

constexpr double kPi = std::numbers::pi;

cplx unit(cplx v) { return v / std::abs(v); }

void require_open(const DiscreteCurve& curve) {
  require(!curve.closed, ErrorKind::precondition, "the flow acts on open clamped curves");
  require(curve.size() >= 16, ErrorKind::stencil, "the flow needs at least 16 nodes");
}

// Nodal velocity a (kappa_ss + kappa^3/2 - kappa) N with N the g-unit normal, zero at the ends,
// and h = integral of |a| (kappa_ss + kappa^3/2 - kappa)^2 ds over the interior nodes.
struct Motion {
  std::vector<cplx> v;
  std::vector<double> speed, weight;
  double grad_norm = 0.0;
};

Motion motion(const DiscreteCurve& curve, const numerics::Stencils& st, const WeightFunction& a) {
  const std::size_t n = curve.size();
  const auto jet = hyp2::curve_jet(curve, st);
  const auto cj = hyp2::curvature_jet(curve);
  Motion m;
  m.speed = cj.speed;
  m.weight.resize(n);
  m.v.assign(n, 0.0);
  std::vector<double> f(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    m.weight[i] = a(jet.u[i].real(), jet.u[i].imag());
    if (i == 0 || i + 1 == n) continue;
    const double k = cj.kappa[i];
    const double br = cj.kappa_ss[i] + 0.5 * k * k * k - k;
    const cplx normal = cplx(0.0, 1.0) * unit(jet.d1[i]) * jet.u[i].imag();
    m.v[i] = m.weight[i] * br * normal;
    f[i] = std::abs(m.weight[i]) * br * br;
  }
  m.grad_norm = hyp2::integrate_ds(curve, f, m.speed);
  return m;
}

// Moves node 1 (or n-2) along the clamped normal so that the one-sided first derivative at the end
// is parallel to the clamped tangent.
void impose_tangent(DiscreteCurve& curve, const numerics::Stencils& st) {
  const std::size_t n = curve.size();
  for (int end = 0; end < 2; ++end) {
    const std::size_t b = end == 0 ? 0 : n - 1;
    const std::size_t nb = end == 0 ? 1 : n - 2;
    const cplx nh = cplx(0.0, 1.0) * unit(curve.boundary_tangents[end].v());
    const auto& e = st.entry(1, b);
    cplx d1 = 0.0;
    double w = 0.0;
    for (std::size_t j = 0; j < e.index.size(); ++j) {
      d1 += e.weight[j] * curve.nodes[e.index[j]].z();
      if (e.index[j] == nb) w = e.weight[j];
    }
    const double off = (d1 * std::conj(nh)).real();
    const cplx z = curve.nodes[nb].z() - off / w * nh;
    curve.nodes[nb] = HPoint::from(z);
  }
}

// Largest g-distance a node moved, relative to the g-distance to its nearest neighbour.
double max_relative_move(const DiscreteCurve& before, const DiscreteCurve& after) {
  const std::size_t n = before.size();
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h = std::min(hyp2::distance(before.nodes[i - 1], before.nodes[i]),
                              hyp2::distance(before.nodes[i], before.nodes[i + 1]));
    worst = std::max(worst, hyp2::distance(before.nodes[i], after.nodes[i]) / h);
  }
  return worst;
}

}  // namespace

double WeightFunction::operator()(double x, double y) const {
  switch (kind) {
    case Kind::willmore:
      return -0.5 / (y * y * y * y);
    case Kind::elastic:
      return -1.0;
    case Kind::custom: {
      const double v = custom(x, y);
      require(v < 0.0 && std::isfinite(v), ErrorKind::parameter, "custom weight must be negative");
      return v;
    }
  }
  return -1.0;
}

const char* to_string(WeightFunction::Kind k) {
  switch (k) {
    case WeightFunction::Kind::willmore:
      return "willmore";
    case WeightFunction::Kind::elastic:
      return "elastic";
    case WeightFunction::Kind::custom:
      return "custom";
  }
  return "unknown";
}

void FlowConfig::validate() const {
  require(resolution == 0 || resolution >= 16, ErrorKind::config, "resolution must be at least 16");
  require(t_max > 0.0, ErrorKind::config, "t_max must be positive");
  require(grad_tol > 0.0, ErrorKind::config, "grad_tol must be positive");
  require(height_floor >= 0.0, ErrorKind::config, "height_floor must be non-negative");
  require(stride >= 1, ErrorKind::config, "stride must be at least 1");
  require(energy_slack >= 0.0, ErrorKind::config, "energy_slack must be non-negative");
  require(max_move > 0.0, ErrorKind::config, "max_move must be positive");
  require(weight.kind != WeightFunction::Kind::custom || static_cast<bool>(weight.custom), ErrorKind::config,
          "custom weight without a function");
}

std::vector<HVector> velocity(const DiscreteCurve& curve, const WeightFunction& weight) {
  require_open(curve);
  const auto m = motion(curve, hyp2::make_stencils(curve), weight);
  std::vector<HVector> v(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) v[i] = {curve.nodes[i], m.v[i].real(), m.v[i].imag()};
  return v;
}

double gradient_norm(const DiscreteCurve& curve, const WeightFunction& weight) {
  require_open(curve);
  return motion(curve, hyp2::make_stencils(curve), weight).grad_norm;
}

EnergyReport monitor(const DiscreteCurve& curve, const WeightFunction& weight) {
  EnergyReport r;
  r.elastic = hyp2::elastic_energy(curve);
  r.boundary_term = hyp2::boundary_term(curve);
  r.willmore = 0.5 * kPi * (r.elastic - 4.0 * r.boundary_term);
  r.hyp_length = hyp2::hyperbolic_length(curve);
  r.min_height = hyp2::min_height(curve);
  r.total_abs_curvature = hyp2::total_abs_curvature(curve);
  r.grad_norm = gradient_norm(curve, weight);
  return r;
}

EnergyReport monitor(const FlowState& state, const WeightFunction& weight) { return monitor(state.curve, weight); }

double default_dt(const DiscreteCurve& curve, const WeightFunction& weight) {
  double hg = INFINITY, inv = INFINITY;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    hg = std::min(hg, hyp2::distance(curve.nodes[i], curve.nodes[i + 1]));
  }
  for (const auto& p : curve.nodes) inv = std::min(inv, 1.0 / std::abs(weight(p.x, p.y)));
  return 0.1 * std::pow(hg, 4) * inv;
}

DiscreteCurve reparametrize_constant_speed(const DiscreteCurve& curve, std::size_t n_out) {
  require_open(curve);
  require(n_out >= 16, ErrorKind::stencil, "reparametrization needs at least 16 nodes");
  const std::size_t n = curve.size();
  const auto st = hyp2::make_stencils(curve);
  const auto u = curve.points();
  const cplx da = st.apply<cplx>(u, 1, 0), db = st.apply<cplx>(u, 1, n - 1);
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = u[i].real();
    ys[i] = u[i].imag();
  }
  const numerics::CubicSpline X(curve.params, xs, da.real(), db.real());
  const numerics::CubicSpline Y(curve.params, ys, da.imag(), db.imag());
  auto g = [&](double t) {
    const double y = Y.value(t);
    require(y > 0.0, ErrorKind::domain, "spline left the upper half-plane");
    return std::hypot(X.derivative(t), Y.derivative(t)) / y;
  };
  std::vector<double> S(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    S[k + 1] = S[k] + numerics::integrate_panels(g, curve.params[k], curve.params[k + 1], 1);
  }
  const double L = S.back();
  auto params = hyp2::uniform_params(curve.params.front(), curve.params.back(), n_out);
  std::vector<cplx> pts(n_out);
  pts.front() = u.front();
  pts.back() = u.back();
  for (std::size_t j = 1; j + 1 < n_out; ++j) {
    const double target = L * static_cast<double>(j) / static_cast<double>(n_out - 1);
    const std::size_t k = std::min<std::size_t>(
        static_cast<std::size_t>(std::upper_bound(S.begin(), S.end(), target) - S.begin()) - 1, n - 2);
    double lo = curve.params[k], hi = curve.params[k + 1];
    double t = lo + (hi - lo) * (target - S[k]) / (S[k + 1] - S[k]);
    for (int it = 0; it < 50; ++it) {
      const double f = S[k] + numerics::integrate_panels(g, curve.params[k], t, 1) - target;
      if (f > 0.0) hi = t;
      else lo = t;
      double next = t - f / g(t);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const double step = std::abs(next - t);
      t = next;
      if (step <= 1e-15 * (1.0 + std::abs(t))) break;
    }
    pts[j] = {X.value(t), Y.value(t)};
  }
  DiscreteCurve out;
  out.params = std::move(params);
  for (const cplx& z : pts) out.nodes.push_back(HPoint::from(z));
  out.boundary_tangents = curve.boundary_tangents;
  out.boundary_tangents[0].base = out.nodes.front();
  out.boundary_tangents[1].base = out.nodes.back();
  impose_tangent(out, hyp2::make_stencils(out));
  out.validate();
  return out;
}

DiscreteCurve reparametrize_constant_speed(const DiscreteCurve& curve) {
  return reparametrize_constant_speed(curve, curve.size());
}

DiscreteCurve imex_step(const DiscreteCurve& curve, double dt, const WeightFunction& weight) {
  require_open(curve);
  require(dt > 0.0, ErrorKind::step, "time step must be positive");
  const std::size_t n = curve.size();
  const auto st = hyp2::make_stencils(curve);
  const auto p = motion(curve, st, weight);
  const auto u = curve.points();

  // Composite operator D2 D2, the leading part of the linearized velocity, row by row.
  std::vector<std::vector<std::pair<std::size_t, double>>> lap2(n);
  std::size_t reach = 0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    std::vector<std::pair<std::size_t, double>> row;
    const auto& outer = st.entry(2, i);
    for (std::size_t a = 0; a < outer.index.size(); ++a) {
      const auto& inner = st.entry(2, outer.index[a]);
      for (std::size_t b = 0; b < inner.index.size(); ++b) {
        const std::size_t j = inner.index[b];
        const double w = outer.weight[a] * inner.weight[b];
        auto it = std::find_if(row.begin(), row.end(), [&](const auto& e) { return e.first == j; });
        if (it == row.end()) row.emplace_back(j, w);
        else it->second += w;
      }
    }
    for (const auto& [j, w] : row) reach = std::max(reach, i > j ? i - j : j - i);
    lap2[i] = std::move(row);
  }
  for (std::size_t j : st.entry(1, 0).index) reach = std::max(reach, j);
  for (std::size_t j : st.entry(1, n - 1).index) reach = std::max(reach, n - 1 - j);
  const std::size_t m = 2 * (n - 2);
  const std::size_t band = 2 * reach + 2;
  numerics::BandedMatrix A(m, band, band);
  std::vector<double> rhs(m, 0.0);
  auto col = [](std::size_t node, int c) { return 2 * (node - 1) + static_cast<std::size_t>(c); };

  // Increments d_i = u_i(t + dt) - u_i(t) solve d_i - dt alpha_i n_i <n_i, (L d)_i> = dt V_i, L = D2 D2,
  // with n_i the Euclidean unit normal; the ends do not move.
  struct Row {
    std::vector<std::pair<std::size_t, double>> coef;  // (unknown, weight)
    double rhs = 0.0;
  };
  std::vector<cplx> nrm(n);
  for (std::size_t i = 0; i < n; ++i) nrm[i] = cplx(0.0, 1.0) * unit(st.apply<cplx>(u, 1, i));
  auto node_row = [&](std::size_t i, int c) {
    Row r;
    const double alpha = p.weight[i] / std::pow(p.speed[i], 4);
    const double nc = c == 0 ? nrm[i].real() : nrm[i].imag();
    r.rhs = dt * (c == 0 ? p.v[i].real() : p.v[i].imag());
    r.coef.emplace_back(col(i, c), 1.0);
    for (const auto& [j, lw] : lap2[i]) {
      if (j == 0 || j == n - 1) continue;
      const double w = -dt * alpha * lw * nc;
      r.coef.emplace_back(col(j, 0), w * nrm[i].real());
      r.coef.emplace_back(col(j, 1), w * nrm[i].imag());
    }
    return r;
  };
  std::vector<std::tuple<std::size_t, std::size_t, double>> entries;
  auto put = [&](std::size_t row, const Row& r) {
    for (const auto& [k, w] : r.coef) {
      A.add(row, k, w);
      entries.emplace_back(row, k, w);
    }
    rhs[row] = r.rhs;
  };
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const bool clamped = i == 1 || i == n - 2;
    if (!clamped) {
      put(col(i, 0), node_row(i, 0));
      put(col(i, 1), node_row(i, 1));
      continue;
    }
    const int end = i == 1 ? 0 : 1;
    const std::size_t b = end == 0 ? 0 : n - 1;
    const cplx th = unit(curve.boundary_tangents[end].v());
    const cplx nh = cplx(0.0, 1.0) * th;
    // Tangential part of the node equation.
    Row rx = node_row(i, 0), ry = node_row(i, 1);
    Row tan;
    for (auto [k, w] : rx.coef) tan.coef.emplace_back(k, th.real() * w);
    for (auto [k, w] : ry.coef) tan.coef.emplace_back(k, th.imag() * w);
    tan.rhs = th.real() * rx.rhs + th.imag() * ry.rhs;
    // Clamped tangent: the normal part of the one-sided first derivative at the end vanishes.
    Row con;
    const auto& e = st.entry(1, b);
    for (std::size_t k = 0; k < e.index.size(); ++k) {
      const std::size_t j = e.index[k];
      con.rhs -= e.weight[k] * (u[j] * std::conj(nh)).real();
      if (j == 0 || j == n - 1) continue;
      con.coef.emplace_back(col(j, 0), e.weight[k] * nh.real());
      con.coef.emplace_back(col(j, 1), e.weight[k] * nh.imag());
    }
    put(col(i, 0), tan);
    put(col(i, 1), con);
  }
  const std::vector<double> b = rhs;
  require(A.solve(rhs), ErrorKind::step, "singular implicit system");
  // Two rounds of iterative refinement.
  for (int round = 0; round < 2; ++round) {
    std::vector<double> res = b;
    for (const auto& [r, k, w] : entries) res[r] -= w * rhs[k];
    require(A.solve(res), ErrorKind::step, "singular implicit system");
    for (std::size_t k = 0; k < m; ++k) rhs[k] += res[k];
  }

  DiscreteCurve out = curve;
  out.corners.clear();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double x = u[i].real() + rhs[col(i, 0)], y = u[i].imag() + rhs[col(i, 1)];
    require(std::isfinite(x) && std::isfinite(y), ErrorKind::step, "non-finite node after step");
    require(y > 0.0, ErrorKind::step, "node left the upper half-plane");
    out.nodes[i] = {x, y};
  }
  out.validate();
  return out;
}

StepResult step(const FlowState& state, double dt, const FlowConfig& config) {
  StepResult r;
  const double e0 = state.report.elastic;
  const double dt_min = 1e-14 * std::max(1.0, state.t);
  std::string last = "none";
  for (;;) {
    if (dt < dt_min) throw Error(ErrorKind::step, "time step underflow; last rejection: " + last);
    try {
      DiscreteCurve next = imex_step(state.curve, dt, config.weight);
      double e1 = hyp2::elastic_energy(next);
      if (!(e1 <= e0 + config.energy_slack)) throw Error(ErrorKind::step, "energy increase");
      if (!(max_relative_move(state.curve, next) <= config.max_move)) throw Error(ErrorKind::step, "step too large");
      const std::size_t count = state.step_count + 1;
      if (config.reparam_every > 0 && count % config.reparam_every == 0) {
        DiscreteCurve rep = reparametrize_constant_speed(next);
        const double er = hyp2::elastic_energy(rep);
        if (er <= e0 + config.energy_slack) {
          next = std::move(rep);
          e1 = er;
        }
      }
      r.state.curve = std::move(next);
      r.state.t = state.t + dt;
      r.state.step_count = count;
      r.state.report = monitor(r.state.curve, config.weight);
      r.dt_used = dt;
      r.dt_next = config.adaptive && r.rejected == 0 ? dt * 1.2 : dt;
      if (config.dt_max > 0.0) r.dt_next = std::min(r.dt_next, config.dt_max);
      return r;
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::step && err.kind() != ErrorKind::immersion && err.kind() != ErrorKind::domain)
        throw;
      if (!config.adaptive) throw;
      last = err.what();
      ++r.rejected;
      dt *= 0.5;
    }
  }
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::converged:
      return "converged";
    case Verdict::singular_length:
      return "singular_length";
    case Verdict::singular_height:
      return "singular_height";
    case Verdict::budget_exhausted:
      return "budget_exhausted";
    case Verdict::step_failure:
      return "step_failure";
  }
  return "unknown";
}

RunResult run(const DiscreteCurve& u0, const FlowConfig& config, const Observer& observe) {
  config.validate();
  require_open(u0);
  DiscreteCurve start = u0;
  start.corners.clear();
  const std::size_t n = config.resolution > 0 ? config.resolution : u0.size();
  if (n != u0.size() || !numerics::near_uniform(u0.params, 1e-12)) start = reparametrize_constant_speed(start, n);
  impose_tangent(start, hyp2::make_stencils(start));

  RunResult res;
  FlowState state;
  state.curve = std::move(start);
  state.report = monitor(state.curve, config.weight);
  res.initial_length = res.max_length = res.min_length = state.report.hyp_length;
  const double cap = config.length_cap > 0.0 ? config.length_cap : 10.0 * res.initial_length;
  double dt = config.dt > 0.0 ? config.dt : default_dt(state.curve, config.weight);
  res.trajectory.push_back(state);
  if (observe) observe(state);

  for (;;) {
    const auto& rep = state.report;
    if (rep.grad_norm < config.grad_tol) {
      res.verdict = Verdict::converged;
      break;
    }
    if (rep.hyp_length > cap) {
      res.verdict = Verdict::singular_length;
      break;
    }
    if (rep.min_height < config.height_floor) {
      res.verdict = Verdict::singular_height;
      break;
    }
    if (state.t >= config.t_max || state.step_count >= config.max_steps) {
      res.verdict = Verdict::budget_exhausted;
      break;
    }
    StepResult sr;
    try {
      sr = step(state, std::min(dt, config.t_max - state.t + 1e-300), config);
    } catch (const Error& err) {
      res.verdict = Verdict::step_failure;
      res.message = err.what();
      break;
    }
    res.rejected += sr.rejected;
    ++res.accepted;
    res.max_energy_increase = std::max(res.max_energy_increase, sr.state.report.elastic - state.report.elastic);
    res.max_length = std::max(res.max_length, sr.state.report.hyp_length);
    res.min_length = std::min(res.min_length, sr.state.report.hyp_length);
    state = std::move(sr.state);
    dt = sr.dt_next;
    if (observe) observe(state);
    if (state.step_count % config.stride == 0) res.trajectory.push_back(state);
  }
  if (res.trajectory.back().step_count != state.step_count) res.trajectory.push_back(state);
  res.final_state = std::move(state);
  return res;
}

double elastica_residual(const DiscreteCurve& curve, double lambda) {
  const auto jet = hyp2::curvature_jet(curve);
  const std::size_t n = curve.size();
  const std::size_t skip = n >= 8 ? 3 : 1;
  double worst = 0.0;
  for (std::size_t i = skip; i + skip < n; ++i) {
    const double k = jet.kappa[i];
    worst = std::max(worst, std::abs(2.0 * jet.kappa_ss[i] + k * k * k - (lambda + 2.0) * k));
  }
  return worst;
}

void write_trajectory_csv(std::ostream& os, const std::vector<FlowState>& trajectory) {
  os << "t,elastic,willmore,length,min_height,grad_norm,total_abs_curvature\n";
  for (const auto& s : trajectory) {
    const auto& r = s.report;
    for (double v : {s.t, r.elastic, r.willmore, r.hyp_length, r.min_height, r.grad_norm}) os << io::format_double(v) << ',';
    os << io::format_double(r.total_abs_curvature) << '\n';
  }
}

ThresholdCheck willmore_threshold_check(const DiscreteCurve& u0) {
  ThresholdCheck c;
  const double e = hyp2::elastic_energy(u0);
  const double bt = hyp2::boundary_term(u0);
  c.willmore = 0.5 * kPi * (e - 4.0 * bt);
  c.bound = 4.0 * kPi - 2.0 * kPi * bt;
  c.margin = c.bound - c.willmore;
  c.elastic_margin = 8.0 - e;
  c.satisfied = c.margin >= 0.0;
  return c;
}

}  // namespace hypflow::flow
