#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "acceptance.hpp"
#include "hypflow/curve_io.hpp"
#include "hypflow/elastica.hpp"
#include "hypflow/ellip.hpp"
#include "hypflow/error.hpp"
#include "hypflow/flow.hpp"
#include "hypflow/geomcheck.hpp"
#include "hypflow/scenarios.hpp"

using namespace hypflow;
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, config_error = 2, numerical_failure = 3, acceptance_failure = 4 };

struct ScenarioOpts {
  std::string name = "perturbed";
  std::string input;
  bool closed = false;
  double eps = 1.0, a = 1.0;
  double amp = 0.3, ell = 1.5;
  double y0 = 1.0, y1 = 2.0;
  double x_center = 0.0, s_lo = 0.5, s_hi = 3.0;
  double lambda = 0.1, h = 0.0;
  std::size_t n = 201;
  std::uint64_t seed = 0;
  bool seeded = false;
};

void add_scenario_options(CLI::App* app, ScenarioOpts& s) {
  app->add_option("--scenario", s.name,
                  "catenary | geodesic | perturbed | random-perturbed | clifford-arc | clifford-circle | singular | "
                  "fig8 | input")
      ->capture_default_str();
  app->add_option("--input", s.input, "curve csv for --scenario input");
  app->add_flag("--closed", s.closed, "input curve is closed");
  app->add_option("--eps", s.eps, "catenary height")->capture_default_str();
  app->add_option("--a", s.a, "catenary half width")->capture_default_str();
  app->add_option("--amp", s.amp, "perturbation amplitude")->capture_default_str();
  app->add_option("--ell", s.ell, "geodesic length of the perturbed datum")->capture_default_str();
  app->add_option("--y0", s.y0, "geodesic lower end height")->capture_default_str();
  app->add_option("--y1", s.y1, "geodesic upper end height")->capture_default_str();
  app->add_option("--x-center", s.x_center, "Clifford circle center abscissa")->capture_default_str();
  app->add_option("--s-lo", s.s_lo, "Clifford arc start (hyperbolic arc length)")->capture_default_str();
  app->add_option("--s-hi", s.s_hi, "Clifford arc end (hyperbolic arc length)")->capture_default_str();
  app->add_option("--lambda", s.lambda, "figure-eight multiplier")->capture_default_str();
  app->add_option("--cap-h", s.h, "cap parameter of the singular datum, <= 0 for the default")->capture_default_str();
  app->add_option("--n", s.n, "node count")->capture_default_str();
  app->add_option("--seed", s.seed, "seed for random-perturbed")->each([&](const std::string&) { s.seeded = true; });
}

DiscreteCurve build_scenario(const ScenarioOpts& s) {
  if (s.name == "catenary") return scenarios::catenary(s.eps, s.a, s.n);
  if (s.name == "geodesic") return scenarios::vertical_geodesic(s.y0, s.y1, s.n);
  if (s.name == "perturbed") return scenarios::perturbed_geodesic(s.amp, s.ell, s.n);
  if (s.name == "random-perturbed") {
    std::mt19937_64 rng(s.seed);
    const double amp = std::uniform_real_distribution<double>(-0.4, 0.4)(rng);
    const double ell = std::uniform_real_distribution<double>(0.5, 2.5)(rng);
    return scenarios::perturbed_geodesic(amp, ell, s.n);
  }
  if (s.name == "clifford-arc") return scenarios::clifford_arc(s.x_center, s.s_lo, s.s_hi, s.n);
  if (s.name == "clifford-circle") return scenarios::clifford_circle(s.x_center, s.n);
  if (s.name == "singular") return scenarios::build_singular_datum({s.lambda, s.h, s.n}).curve;
  if (s.name == "fig8") return elastica::figure_eight_segment(elastica::figure_eight_solve(s.lambda), s.n);
  if (s.name == "input") {
    if (s.input.empty()) fail(ErrorKind::config, "--scenario input needs --input");
    return io::load_curve_csv(s.input, s.closed);
  }
  fail(ErrorKind::config, "unknown scenario '" + s.name + "'");
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) fail(ErrorKind::io, "cannot write " + path);
  out << text;
}

json report_json(const flow::EnergyReport& r) {
  return {{"elastic", r.elastic},         {"willmore", r.willmore},     {"boundary_term", r.boundary_term},
          {"hyp_length", r.hyp_length},   {"min_height", r.min_height}, {"total_abs_curvature", r.total_abs_curvature},
          {"grad_norm", r.grad_norm}};
}

json intersection_json(const geomcheck::IntersectionReport& r) {
  json pairs = json::array();
  for (const auto& c : r.pairs) {
    pairs.push_back({{"s", c.s}, {"t", c.t}, {"x", c.point.x}, {"y", c.point.y}, {"distance", c.distance},
                     {"transversal", c.transversal}});
  }
  return {{"embedded", r.embedded}, {"pairs", pairs}, {"min_height", r.min_height}, {"max_norm", r.max_norm}};
}

json params_json(const elastica::ElasticaParams& e) {
  return {{"family", elastica::to_string(e.family)},
          {"lambda", e.lambda},
          {"kappa0", e.kappa0},
          {"kappa0_sq", e.kappa0_sq},
          {"p", e.p},
          {"r", e.r},
          {"C", e.C},
          {"y", e.y},
          {"a", e.a},
          {"c", e.c},
          {"z1", e.z1},
          {"s_star", e.s_star}};
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::config:
    case ErrorKind::parameter:
    case ErrorKind::precondition:
    case ErrorKind::io:
      return config_error;
    default:
      return numerical_failure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypflow: Willmore flow of surfaces of revolution via hyperbolic elastic flow"};
  app.set_config("--config", "", "flat key-value config file; [section] names select subcommands");
  app.require_subcommand(1);
  int code = ok;

  // flow
  auto* flow_cmd = app.add_subcommand("flow", "run the flow and write trajectory, final curve and manifest");
  ScenarioOpts fs_opts;
  flow::FlowConfig cfg;
  std::string weight = "willmore", out_dir = "flow_out";
  add_scenario_options(flow_cmd, fs_opts);
  flow_cmd->add_option("--resolution", cfg.resolution, "resample to this many nodes, 0 keeps the datum")
      ->capture_default_str();
  flow_cmd->add_option("--dt", cfg.dt, "initial step, <= 0 selects the stability default")->capture_default_str();
  flow_cmd->add_option("--dt-max", cfg.dt_max, "largest step, <= 0 for none")->capture_default_str();
  flow_cmd->add_option("--t-max", cfg.t_max, "final time")->capture_default_str();
  flow_cmd->add_option("--grad-tol", cfg.grad_tol, "convergence threshold on h(t)")->capture_default_str();
  flow_cmd->add_option("--length-cap", cfg.length_cap, "singular-length threshold, <= 0 for 10x initial")
      ->capture_default_str();
  flow_cmd->add_option("--height-floor", cfg.height_floor, "singular-height threshold")->capture_default_str();
  flow_cmd->add_option("--reparam-every", cfg.reparam_every, "steps between constant-speed resampling, 0 for never")
      ->capture_default_str();
  flow_cmd->add_option("--max-steps", cfg.max_steps, "step budget")->capture_default_str();
  flow_cmd->add_option("--stride", cfg.stride, "snapshot stride")->capture_default_str();
  flow_cmd->add_option("--energy-slack", cfg.energy_slack, "largest accepted energy increase")->capture_default_str();
  flow_cmd->add_option("--max-move", cfg.max_move, "largest node move relative to its g-spacing")->capture_default_str();
  flow_cmd->add_option("--weight", weight, "willmore | elastic")->capture_default_str();
  flow_cmd->add_option("--out", out_dir, "output directory")->capture_default_str();
  flow_cmd->callback([&] {
    if (weight == "elastic") cfg.weight = flow::WeightFunction::elastic();
    else if (weight != "willmore") fail(ErrorKind::config, "unknown weight '" + weight + "'");
    cfg.validate();
    const auto u0 = build_scenario(fs_opts);
    const auto r = flow::run(u0, cfg);
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    {
      std::ofstream t(dir / "trajectory.csv");
      flow::write_trajectory_csv(t, r.trajectory);
    }
    for (std::size_t k = 0; k < r.trajectory.size(); ++k) {
      io::save_curve_csv((dir / ("snapshot_" + std::to_string(k) + ".csv")).string(), r.trajectory[k].curve);
    }
    io::save_curve_csv((dir / "final.csv").string(), r.final_state.curve);
    json m;
    m["scenario"] = fs_opts.name;
    m["config"] = {{"resolution", cfg.resolution}, {"dt", cfg.dt},
                   {"dt_max", cfg.dt_max},         {"t_max", cfg.t_max},
                   {"grad_tol", cfg.grad_tol},     {"length_cap", cfg.length_cap},
                   {"height_floor", cfg.height_floor}, {"reparam_every", cfg.reparam_every},
                   {"max_steps", cfg.max_steps},   {"stride", cfg.stride},
                   {"energy_slack", cfg.energy_slack}, {"max_move", cfg.max_move},
                   {"weight", weight}};
    m["verdict"] = flow::to_string(r.verdict);
    m["message"] = r.message;
    m["t"] = r.final_state.t;
    m["accepted"] = r.accepted;
    m["rejected"] = r.rejected;
    m["initial_length"] = r.initial_length;
    m["max_length"] = r.max_length;
    m["min_length"] = r.min_length;
    m["max_energy_increase"] = r.max_energy_increase;
    m["final"] = report_json(r.final_state.report);
    emit((dir / "manifest.json").string(), m.dump(2) + "\n");
    std::cout << flow::to_string(r.verdict) << " after " << r.accepted << " steps, t = " << r.final_state.t
              << ", E = " << r.final_state.report.elastic << "\n";
    if (r.verdict == flow::Verdict::step_failure) code = numerical_failure;
  });

  // elastica
  auto* el_cmd = app.add_subcommand("elastica", "emit a parametrized elastica");
  double kappa0 = 2.5, el_lambda = 0.0, el_lo = -3.0, el_hi = 3.0, el_y = 1.0;
  std::size_t el_n = 801;
  std::string el_out;
  el_cmd->add_option("--kappa0", kappa0, "signed extremal curvature")->capture_default_str();
  el_cmd->add_option("--lambda", el_lambda, "multiplier")->capture_default_str();
  el_cmd->add_option("--y", el_y, "height of the canonical point")->capture_default_str();
  el_cmd->add_option("--s-lo", el_lo, "arc-length window start")->capture_default_str();
  el_cmd->add_option("--s-hi", el_hi, "arc-length window end")->capture_default_str();
  el_cmd->add_option("--n", el_n, "node count")->capture_default_str();
  el_cmd->add_option("--out", el_out, "curve csv path; the JSON record goes to stdout");
  el_cmd->callback([&] {
    const auto e = elastica::make_params(kappa0, el_lambda, el_y);
    const auto c = elastica::parametrize(e, el_lo, el_hi, el_n);
    if (!el_out.empty()) io::save_curve_csv(el_out, c);
    json j = params_json(e);
    j["elastic_energy"] = hyp2::elastic_energy(c);
    j["first_integral_spread"] = elastica::first_integral_residual(c, el_lambda);
    std::cout << j.dump(2) << "\n";
  });

  // fig8
  auto* f8_cmd = app.add_subcommand("fig8", "solve for the lambda-figure-eight");
  double f8_lambda = 0.1;
  std::string f8_out;
  f8_cmd->add_option("--lambda", f8_lambda, "multiplier in (0, 64/pi^2 - 2)")->capture_default_str();
  f8_cmd->add_option("--curve", f8_out, "write the segment as curve csv");
  f8_cmd->callback([&] {
    const auto e = elastica::figure_eight_solve(f8_lambda);
    const auto t = elastica::figure_eight_tangent(e);
    json j = params_json(e);
    j["root_residual"] = elastica::figure_eight_integral(f8_lambda, e.p);
    j["segment_energy"] = elastica::figure_eight_segment_energy(e);
    j["quarter_period"] = elastica::quarter_period(e);
    j["end_tangent"] = {{"x", t.tangent.vx}, {"y", t.tangent.vy}, {"ratio", t.ratio},
                        {"predicted_ratio", t.predicted_ratio}, {"angle_to_vertical", t.angle_to_vertical}};
    if (!f8_out.empty()) io::save_curve_csv(f8_out, elastica::figure_eight_segment(e));
    std::cout << j.dump(2) << "\n";
  });

  // scenario
  auto* sc_cmd = app.add_subcommand("scenario", "write an initial datum as curve csv");
  ScenarioOpts sc_opts;
  std::string sc_out, sc_format = "csv";
  add_scenario_options(sc_cmd, sc_opts);
  sc_cmd->add_option("--out", sc_out, "output path, stdout when empty");
  sc_cmd->add_option("--format", sc_format, "csv | json")->capture_default_str();
  sc_cmd->callback([&] {
    const auto c = build_scenario(sc_opts);
    if (sc_format == "json") emit(sc_out, io::curve_json(c, {{"elastic_energy", hyp2::elastic_energy(c)}}) + "\n");
    else if (sc_format == "csv") emit(sc_out, io::curve_csv(c));
    else fail(ErrorKind::config, "unknown format '" + sc_format + "'");
  });

  // check
  auto* ck_cmd = app.add_subcommand("check", "self-intersections, energy and Li-Yau verdict of a curve");
  std::string ck_in;
  bool ck_closed = false;
  double ck_tol = geomcheck::kNearTouch;
  ck_cmd->add_option("--input", ck_in, "curve csv")->required();
  ck_cmd->add_flag("--closed", ck_closed, "curve is closed");
  ck_cmd->add_option("--tol", ck_tol, "near-touch tolerance")->capture_default_str();
  ck_cmd->callback([&] {
    const auto c = io::load_curve_csv(ck_in, ck_closed);
    const auto r = geomcheck::self_intersections(c, ck_tol);
    json j = intersection_json(r);
    const auto ly = geomcheck::liyau_check(c);
    j["elastic_energy"] = ly.energy;
    j["liyau"] = geomcheck::to_string(ly.verdict);
    std::cout << j.dump(2) << "\n";
  });

  // special-eval
  auto* sp_cmd = app.add_subcommand("special-eval", "evaluate an elliptic integral or Jacobi function");
  std::string fn = "K";
  double sp_p = 0.5, sp_x = 0.0, sp_alpha2 = 0.0;
  sp_cmd->add_option("--fn", fn, "K | E | Pi | F | Einc | PiInc | am | sn | cn | dn")->capture_default_str();
  sp_cmd->add_option("--p", sp_p, "modulus")->capture_default_str();
  sp_cmd->add_option("--x", sp_x, "argument (amplitude phi for F, Einc, PiInc)")->capture_default_str();
  sp_cmd->add_option("--alpha2", sp_alpha2, "characteristic for Pi")->capture_default_str();
  sp_cmd->callback([&] {
    const std::map<std::string, std::function<double()>> table = {
        {"K", [&] { return ellip::complete_K(sp_p); }},
        {"E", [&] { return ellip::complete_E(sp_p); }},
        {"Pi", [&] { return ellip::complete_Pi(sp_alpha2, sp_p); }},
        {"F", [&] { return ellip::ellint_F(sp_x, sp_p); }},
        {"Einc", [&] { return ellip::ellint_E(sp_x, sp_p); }},
        {"PiInc", [&] { return ellip::ellint_Pi(sp_x, sp_alpha2, sp_p); }},
        {"am", [&] { return ellip::jacobi_am(sp_x, sp_p); }},
        {"sn", [&] { return ellip::jacobi_sn_cn_dn(sp_x, sp_p).sn; }},
        {"cn", [&] { return ellip::jacobi_sn_cn_dn(sp_x, sp_p).cn; }},
        {"dn", [&] { return ellip::jacobi_sn_cn_dn(sp_x, sp_p).dn; }},
    };
    const auto it = table.find(fn);
    if (it == table.end()) fail(ErrorKind::config, "unknown function '" + fn + "'");
    std::cout << io::format_double(it->second()) << "\n";
  });

  // acceptance
  auto* ac_cmd = app.add_subcommand("acceptance", "run the acceptance criteria and print one line per criterion");
  std::vector<int> only;
  acceptance::Options ac_opts;
  std::string ac_out = ac_opts.out_dir.string();
  ac_cmd->add_option("--only", only, "criterion ids, all when empty")->delimiter(',');
  ac_cmd->add_option("--out", ac_out, "output directory")->capture_default_str();
  ac_cmd->add_option("--seed", ac_opts.seed, "seed for randomized checks")->capture_default_str();
  ac_cmd->callback([&] {
    ac_opts.out_dir = ac_out;
    const auto ids = only.empty() ? acceptance::all_ids() : only;
    bool all = true;
    for (int id : ids) {
      const auto r = acceptance::run_criterion(id, ac_opts);
      std::cout << acceptance::format_line(r) << std::endl;
      all = all && r.pass;
    }
    if (!all) code = acceptance_failure;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : config_error;
  } catch (const Error& e) {
    std::cerr << "{\"error\": \"" << to_string(e.kind()) << "\", \"message\": " << json(e.what()).dump() << "}\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "{\"error\": \"internal\", \"message\": " << json(e.what()).dump() << "}\n";
    return numerical_failure;
  }
  return code;
}
