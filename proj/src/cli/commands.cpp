#include "wsp/cli/commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <vector>

#include "wsp/cli/config.hpp"
#include "wsp/cli/report.hpp"
#include "wsp/cli/verify.hpp"
#include "wsp/field_io.hpp"
#include "wsp/fixtures.hpp"
#include "wsp/galilean.hpp"
#include "wsp/leray.hpp"
#include "wsp/operators.hpp"
#include "wsp/oracle.hpp"
#include "wsp/pressure.hpp"
#include "wsp/spaces.hpp"

namespace wsp::cli {

namespace {

// Config keys that may also be given as flags; flags beat the config file.
struct Overrides {
  // One key may be bound on several subcommands; they share the value slot.
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, CLI::Option*>> options;

  void bind(CLI::App* app, const std::string& key, const std::string& help) {
    options.emplace_back(key, app->add_option("--" + key, values[key], help));
  }
  void apply(RunConfig& cfg) const {
    for (const auto& [key, opt] : options)
      if (opt->count() > 0) cfg.set(key, values.at(key));
  }
};

struct Common {
  std::string config_path;
  std::optional<int> workers;
  std::string report_path;
};

double frame_mean(const ScalarField& f);

// Two passes: the offset field is constant to rounding, where the one-pass
// formula cancels.
double frame_std(const ScalarField& f) {
  const Grid& g = f.grid();
  const double mean = frame_mean(f);
  double s2 = 0.0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (g.is_interior(g.unflatten(k), 1)) {
      s2 += (f[k] - mean) * (f[k] - mean);
      ++n;
    }
  return std::sqrt(s2 / static_cast<double>(n));
}

double frame_mean(const ScalarField& f) {
  const Grid& g = f.grid();
  double s = 0.0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (g.is_interior(g.unflatten(k), 1)) {
      s += f[k];
      ++n;
    }
  return s / static_cast<double>(n);
}

int finish(Json report, const CheckList& checks, const std::string& path) {
  report["checks"] = checks.to_json();
  report["failures"] = checks.failures();
  report["pass"] = checks.all_pass();
  if (!path.empty()) write_report(path, report);
  if (checks.all_pass()) {
    std::cout << "PASS\n";
    return kExitOk;
  }
  std::cout << "FAIL:";
  for (const auto& f : checks.failures()) std::cout << ' ' << f;
  std::cout << '\n';
  return kExitCheckFailed;
}

PressureOptions pressure_options(const RunConfig& cfg, const ExecPolicy& exec) {
  return {CutoffSpec::make(cfg.r0, cfg.r1), ConvolutionMethod::Auto, cfg.closure, exec};
}

// ---------------------------------------------------------------- pressure

struct PressureArgs {
  std::string input, forcing, source, out;
};

int cmd_pressure(const PressureArgs& a, const RunConfig& cfg, const ExecPolicy& exec,
                 const std::string& report_path) {
  const VectorSeries u = read_vector_series(a.input);
  std::optional<TensorSeries> F;
  if (!a.forcing.empty()) F = read_tensor_series(a.forcing);
  const TensorSeries* Fp = F ? &*F : nullptr;
  if (Fp && Fp->times() != u.times()) throw StructuralError("forcing and velocity frame times differ");

  const PressureOptions opts = pressure_options(cfg, exec);
  PressureAssembler assembler(u.grid(), opts);
  CheckList checks(cfg);
  Json report = report_header("pressure", cfg);
  report["grid"] = u.grid().describe();
  Json frames = Json::array();
  std::vector<ScalarField> ps;
  double worst_poisson = 0.0, worst_offset_std = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const TensorField h = source_tensor(u[k], Fp ? &(*Fp)[k] : nullptr);
    const ScalarField p_phi = assembler.p_phi(h);
    ScalarField p = p_phi;
    Json fr = {{"t", u.times()[k]}};
    if (cfg.mode == "p0") {
      p = assembler.p_0(h);
      const ScalarField offset = p - p_phi;
      const double scale = std::max(p_phi.max_abs(), 1e-300);
      fr["p0_minus_pphi_mean"] = frame_mean(offset);
      fr["p0_minus_pphi_std"] = frame_std(offset) / scale;
      fr["origin_constant"] = assembler.origin_constant(h);
      worst_offset_std = std::max(worst_offset_std, frame_std(offset) / scale);
    }
    const double pr = poisson_residual(p, h);
    worst_poisson = std::max(worst_poisson, pr);
    fr["poisson_residual"] = pr;
    fr["grad_max"] = gradient(p).max_norm();
    fr["interior_mean"] = frame_mean(p);
    fr["interior_std"] = frame_std(p);
    fr["tail"] = to_json(far_field_tail(h));
    frames.push_back(fr);
    ps.push_back(p.with_time(u.times()[k]));
  }
  report["frames"] = frames;
  checks.at_most("pressure.poisson_residual", worst_poisson, 5e-2);
  if (cfg.mode == "p0") checks.at_most("pressure.p0_minus_pphi_std", worst_offset_std, 1e-8);

  // Drift extraction: an explicit source, or the NS residual when there are
  // enough frames to differentiate in time.
  std::optional<VectorSeries> S;
  if (!a.source.empty()) S = read_vector_series(a.source);
  if (u.size() >= 3) {
    if (!S) {
      std::vector<ScalarField> zeros;
      for (double t : u.times()) zeros.push_back(ScalarField::zeros(u.grid(), t));
      const VectorSeries r = ns_residual(u, Fp, ScalarSeries(zeros));
      std::vector<VectorField> neg;
      for (const auto& f : r.frames()) neg.push_back(-1.0 * f);
      S = VectorSeries(neg);
    }
    DecomposeOptions dopts;
    dopts.pressure = opts;
    dopts.curl_threshold = cfg.tolerance("pressure.curl", dopts.curl_threshold);
    try {
      const PressureDecomposition dec = decompose_source(*S, u, Fp, dopts);
      Json g = Json::array();
      for (std::size_t k = 0; k < dec.times.size(); ++k)
        g.push_back({{"t", dec.times[k]},
                     {"dg", to_json(dec.dg[k], u.grid().dim)},
                     {"g", to_json(dec.g[k], u.grid().dim)},
                     {"dispersion", dec.dispersion[k]},
                     {"relative_curl", dec.relative_curl[k]}});
      report["drift"] = g;
      report["warnings"] = dec.warnings;
    } catch (const NotAGradientError& e) {
      report["warnings"] = Json::array({std::string("drift not extracted: ") + e.what()});
    }
  }
  if (!a.out.empty()) write_series(a.out, ScalarSeries(ps));
  return finish(report, checks, report_path);
}

// ---------------------------------------------------------------- project

int cmd_project(const std::string& tensor, const std::string& out, const RunConfig& cfg,
                const ExecPolicy& exec, const std::string& report_path) {
  const TensorSeries H = read_tensor_series(tensor);
  PressureAssembler assembler(H.grid(), pressure_options(cfg, exec));
  CheckList checks(cfg);
  Json report = report_header("project", cfg);
  Json frames = Json::array();
  std::vector<VectorField> sol;
  double recon = 0.0;
  for (const auto& Hk : H.frames()) {
    const HodgeParts parts = leray_project(Hk, assembler);
    const double wn = interior_l2(parts.w);
    recon = std::max(recon, interior_max(parts.solenoidal + parts.gradient_part - parts.w) /
                                std::max(interior_max(parts.w), 1e-300));
    const double dw = interior_l2(divergence(parts.w));
    frames.push_back({{"t", Hk.time()},
                      {"w_norm", wn},
                      {"solenoidal_norm", interior_l2(parts.solenoidal)},
                      {"gradient_norm", interior_l2(parts.gradient_part)},
                      {"divergence_ratio",
                       dw > 0.0 ? interior_l2(divergence(parts.solenoidal)) / dw : 0.0},
                      {"tail", to_json(far_field_tail(-1.0 * Hk))}});
    sol.push_back(parts.solenoidal.with_time(Hk.time()));
  }
  report["frames"] = frames;
  checks.at_most("project.hodge_reconstruction", recon, 1e-12);
  if (!out.empty()) write_series(out, VectorSeries(sol));
  return finish(report, checks, report_path);
}

// ---------------------------------------------------------------- galilean

struct GalileanArgs {
  std::string input, drift, out;
  bool inverse = false, cubic = false;
  double margin = 1.0;
};

int cmd_galilean(const GalileanArgs& a, const RunConfig& cfg, const std::string& report_path) {
  const auto records = read_records(a.input);
  if (records.empty()) throw IoError("no records in " + a.input, 0);
  const int d = records.front().grid.dim;
  const DriftCurve drift = read_drift_csv(a.drift, d);
  GalileanOptions opts;
  opts.inverse = a.inverse;
  opts.margin = a.margin;
  opts.interpolation = a.cubic ? Interpolation::Cubic : Interpolation::Linear;
  Json report = report_header("galilean", cfg);
  CheckList checks(cfg);
  const Grid& g = records.front().grid;
  if (records.front().kind == FieldKind::Vector) {
    const VectorSeries w = galilean_transform(read_vector_series(a.input), drift, opts);
    if (!a.out.empty()) write_series(a.out, w);
    report["kind"] = "vector";
  } else if (records.front().kind == FieldKind::Scalar) {
    const ScalarSeries q = galilean_pressure(read_scalar_series(a.input), drift, opts);
    if (!a.out.empty()) write_series(a.out, q);
    report["kind"] = "scalar";
  } else {
    throw ParameterError("galilean takes a scalar or vector series");
  }
  Json table = Json::array();
  for (std::size_t k = 0; k < drift.times.size(); ++k)
    table.push_back({{"t", drift.times[k]}, {"g", to_json(drift.g[k], d)}, {"E", to_json(drift.E[k], d)}});
  report["drift"] = table;
  report["inverse"] = a.inverse;
  report["interpolation"] = a.cubic ? "cubic" : "linear";
  report["valid_ring"] = valid_ring(g, drift, a.cubic ? 2 : 1);
  return finish(report, checks, report_path);
}

// ---------------------------------------------------------------- norms

int cmd_norms(const std::string& input, double p, double gamma, double delta,
              const RunConfig& cfg, const std::string& report_path) {
  const ScalarSeries s = read_scalar_series(input);
  CheckList checks(cfg);
  Json report = report_header("norms", cfg);
  report["p"] = p;
  report["gamma"] = gamma;
  report["delta"] = delta;
  Json frames = Json::array();
  bool r1 = true, r2 = true;
  for (const auto& f : s.frames()) {
    const NormReport n = b_norm(f, p, gamma);
    const EmbeddingRatios e = embedding_constants(f, p, gamma, delta);
    frames.push_back({{"t", f.time()},
                      {"lp_wgamma", n.lp_wgamma},
                      {"b_norm", n.b_norm},
                      {"sup_radius", n.sup_radius},
                      {"radius_count", n.radius_count},
                      {"boundary_error", n.boundary_error},
                      {"decay_flag", n.decay_flag},
                      {"r1", e.r1},
                      {"r2", e.r2},
                      {"bound1", e.bound1},
                      {"bound2", e.bound2},
                      {"undefined", e.undefined}});
    if (!e.undefined) {
      r1 = r1 && e.r1_ok;
      r2 = r2 && e.r2_ok;
    }
  }
  report["frames"] = frames;
  checks.flag("norms.embedding_r1", r1);
  checks.flag("norms.embedding_r2", r2);
  return finish(report, checks, report_path);
}

// ---------------------------------------------------------------- suitability

int cmd_suitability(const std::string& input, const std::string& pressure,
                    const std::string& forcing, std::uint64_t seed, const RunConfig& cfg,
                    const std::string& report_path) {
  const VectorSeries u = read_vector_series(input);
  const ScalarSeries p = read_scalar_series(pressure);
  std::optional<TensorSeries> F;
  if (!forcing.empty()) F = read_tensor_series(forcing);
  const auto battery = suitability_battery_run(u, p, F ? &*F : nullptr, seed);
  CheckList checks(cfg);
  Json report = report_header("suitability", cfg);
  report["battery_seed"] = seed;
  Json items = Json::array();
  double worst = 0.0;
  for (const auto& r : battery) {
    items.push_back({{"id", r.test_id},
                     {"center", to_json(r.center, u.grid().dim)},
                     {"radius", r.radius},
                     {"mu", r.mu_value},
                     {"energy_rate", r.energy_rate},
                     {"energy_diffusion", r.energy_diffusion},
                     {"dissipation", r.dissipation},
                     {"transport", r.transport},
                     {"forcing", r.forcing},
                     {"mu_strong", r.mu_strong},
                     {"balance_residual", r.balance_residual},
                     {"tolerance", r.tolerance},
                     {"suitable", r.suitable}});
    worst = std::max(worst, -r.mu_value / r.tolerance);
  }
  report["battery"] = items;
  report["verdict"] = "consistent with suitability on the battery";
  // mu >= -tol for every test function.
  checks.at_most("suitability.worst_negative_ratio", worst, 1.0);
  if (!checks.all_pass()) report["verdict"] = "not suitable on the battery";
  return finish(report, checks, report_path);
}

// ---------------------------------------------------------------- oracle-compare

int cmd_oracle(const std::string& op, const std::string& input, const std::string& forcing,
               double enlargement, const RunConfig& cfg, const ExecPolicy& exec,
               const std::string& report_path) {
  CheckList checks(cfg);
  Json report = report_header("oracle-compare", cfg);
  report["op"] = op;
  report["enlargement"] = enlargement;
  Json frames = Json::array();
  double worst = 0.0;
  if (op == "pressure") {
    const VectorSeries u = read_vector_series(input);
    std::optional<TensorSeries> F;
    if (!forcing.empty()) F = read_tensor_series(forcing);
    PressureAssembler assembler(u.grid(), pressure_options(cfg, exec));
    for (std::size_t k = 0; k < u.size(); ++k) {
      const TensorField h = source_tensor(u[k], F ? &(*F)[k] : nullptr);
      const VectorField fast = gradient(assembler.p_phi(h));
      const VectorField ref = gradient(spectral_pressure(h, enlargement));
      const Discrepancy dsc = compare_fields(fast.components(), ref.components());
      worst = std::max(worst, dsc.relative_l2);
      frames.push_back({{"t", u.times()[k]},
                        {"relative_l2", dsc.relative_l2},
                        {"relative_max", dsc.relative_max},
                        {"tail", to_json(far_field_tail(h))}});
    }
  } else if (op == "project") {
    const TensorSeries H = read_tensor_series(input);
    PressureAssembler assembler(H.grid(), pressure_options(cfg, exec));
    for (const auto& Hk : H.frames()) {
      const HodgeParts fast = leray_project(Hk, assembler);
      const SpectralProjection ref = spectral_projection(Hk, enlargement);
      const Discrepancy dsc = compare_fields(fast.solenoidal.components(), ref.solenoidal.components());
      worst = std::max(worst, dsc.relative_l2);
      frames.push_back({{"t", Hk.time()},
                        {"relative_l2", dsc.relative_l2},
                        {"relative_max", dsc.relative_max}});
    }
  } else {
    throw ParameterError("--op must be pressure or project");
  }
  report["frames"] = frames;
  checks.at_most("oracle.relative_l2", worst, 2e-2);
  return finish(report, checks, report_path);
}

// ---------------------------------------------------------------- gen-fixture

struct FixtureArgs {
  std::string name, out, forcing_out, pressure_out, source_out, drift_out;
  int frames = 5;
  double dt = 0.1;
  double t0 = 0.0;
  double rho = 1.5;
};

int cmd_gen_fixture(const FixtureArgs& a, const RunConfig& cfg, const ExecPolicy& exec,
                    const std::string& report_path) {
  const Grid g = Grid::make(cfg.dim, cfg.N, cfg.L);
  if (a.frames < 1) throw ParameterError("--frames must be >= 1");
  const std::vector<double> times = fixtures::uniform_times(a.t0, a.dt, a.frames);
  auto need_2d = [&] {
    if (cfg.dim != 2) throw ParameterError("fixture '" + a.name + "' is two-dimensional");
  };
  if (a.name == "vortex" || a.name == "drifted") need_2d();

  std::vector<VectorField> u, S;
  std::vector<TensorField> tensors;
  std::vector<ScalarField> p;
  const fixtures::HeatVortex vortex{1.0, 1.0};
  const fixtures::ForcedSolution forced = fixtures::forced_solution(cfg.dim);
  const fixtures::DriftedVortex drifted{vortex};
  const fixtures::Gaussian psi{1.0, 1.75, cfg.dim};
  for (double t : times) {
    if (a.name == "vortex") {
      u.push_back(vortex.sample_velocity(g, t, exec));
      p.push_back(vortex.sample_pressure(g, t, exec));
    } else if (a.name == "forced") {
      u.push_back(forced.sample_velocity(g, t, exec));
      tensors.push_back(forced.sample_forcing(g, t, exec));
      p.push_back(forced.sample_pressure(g, t, exec));
    } else if (a.name == "drifted") {
      u.push_back(drifted.sample_velocity(g, t, exec));
      S.push_back(drifted.sample_source(g, t, exec));
    } else if (a.name == "bump") {
      tensors.push_back(fixtures::compact_bump(g, a.rho).with_time(t));
    } else if (a.name == "solenoidal") {
      need_2d();
      tensors.push_back(fixtures::solenoidal_stress(g, psi).with_time(t));
    } else if (a.name == "gradient") {
      tensors.push_back(fixtures::gradient_stress(g, psi).with_time(t));
    } else {
      throw ParameterError("unknown fixture '" + a.name + "'");
    }
  }
  if (a.out.empty()) throw ParameterError("--out is required");
  if (!u.empty()) {
    write_series(a.out, VectorSeries(u));
    if (!tensors.empty() && !a.forcing_out.empty()) write_series(a.forcing_out, TensorSeries(tensors));
  } else {
    write_series(a.out, TensorSeries(tensors));
  }
  if (!p.empty() && !a.pressure_out.empty()) write_series(a.pressure_out, ScalarSeries(p));
  if (!S.empty() && !a.source_out.empty()) write_series(a.source_out, VectorSeries(S));
  if (a.name == "drifted" && !a.drift_out.empty()) {
    std::ofstream csv(a.drift_out);
    if (!csv) throw IoError("cannot write " + a.drift_out, 0);
    csv.precision(17);
    csv << "# t,g1,g2\n";
    for (double t : times) {
      const Point gv = fixtures::DriftedVortex::drift(t);
      csv << t << ',' << gv[0] << ',' << gv[1] << '\n';
    }
  }
  CheckList checks(cfg);
  Json report = report_header("gen-fixture", cfg);
  report["name"] = a.name;
  report["times"] = times;
  return finish(report, checks, report_path);
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Whole-space pressure toolkit"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--config", common.config_path, "key=value configuration file");
  app.add_option("--workers", common.workers, "worker threads (WSP_WORKERS overrides)")
      ->check(CLI::PositiveNumber);

  Overrides over;
  auto with_report = [&](CLI::App* s) {
    s->add_option("--report", common.report_path, "JSON report path");
  };

  PressureArgs pa;
  CLI::App* pressure = app.add_subcommand("pressure", "pressure from a velocity series");
  pressure->add_option("--input", pa.input, "velocity series (FLD1)")->required();
  pressure->add_option("--forcing", pa.forcing, "forcing tensor series (FLD1)");
  pressure->add_option("--source", pa.source, "momentum source S for drift extraction");
  pressure->add_option("--out", pa.out, "pressure series output (FLD1)");
  bool closure = false;
  pressure->add_flag("--closure", closure, "constant-at-infinity closure");
  over.bind(pressure, "r0", "cutoff inner radius");
  over.bind(pressure, "r1", "cutoff outer radius");
  over.bind(pressure, "mode", "phi or p0");
  with_report(pressure);

  std::string tensor, proj_out;
  CLI::App* project = app.add_subcommand("project", "Leray projection of div H");
  project->add_option("--tensor", tensor, "tensor series H (FLD1)")->required();
  project->add_option("--out", proj_out, "solenoidal part output (FLD1)");
  over.bind(project, "r0", "cutoff inner radius");
  over.bind(project, "r1", "cutoff outer radius");
  with_report(project);

  GalileanArgs ga;
  CLI::App* galilean = app.add_subcommand("galilean", "extended Galilean change of frame");
  galilean->add_option("--input", ga.input, "vector (or scalar) series")->required();
  galilean->add_option("--drift", ga.drift, "drift CSV: t,g1..gd")->required();
  galilean->add_flag("--inverse", ga.inverse, "map w back to u");
  galilean->add_flag("--cubic", ga.cubic, "cubic interpolation");
  galilean->add_option("--margin", ga.margin, "largest allowed |E|");
  galilean->add_option("--out", ga.out, "output series (FLD1)");
  with_report(galilean);

  std::string norms_in;
  double np = 2.0, ngamma = 1.0, ndelta = 3.0;
  CLI::App* norms = app.add_subcommand("norms", "Morrey-type and weighted norms");
  norms->add_option("--input", norms_in, "scalar series (FLD1)")->required();
  norms->add_option("--p", np, "exponent p >= 1");
  norms->add_option("--gamma", ngamma, "Morrey exponent");
  norms->add_option("--delta", ndelta, "outer weight exponent");
  with_report(norms);

  std::string su_in, su_p, su_f;
  std::optional<std::uint64_t> battery_seed;
  CLI::App* suit = app.add_subcommand("suitability", "local energy balance on the test battery");
  suit->add_option("--input", su_in, "velocity series (FLD1)")->required();
  suit->add_option("--pressure", su_p, "pressure series (FLD1)")->required();
  suit->add_option("--forcing", su_f, "forcing tensor series (FLD1)");
  suit->add_option("--battery-seed", battery_seed, "seed of the random test functions");
  with_report(suit);

  std::string op = "pressure", or_in, or_f;
  double enlargement = 2.0;
  CLI::App* oracle = app.add_subcommand("oracle-compare", "fast path against the spectral oracle");
  oracle->add_option("--op", op, "pressure or project")->check(CLI::IsMember({"pressure", "project"}));
  oracle->add_option("--input", or_in, "velocity series (pressure) or tensor series (project)")
      ->required();
  oracle->add_option("--forcing", or_f, "forcing tensor series (pressure only)");
  oracle->add_option("--enlargement", enlargement, "periodic box enlargement >= 1");
  over.bind(oracle, "r0", "cutoff inner radius");
  over.bind(oracle, "r1", "cutoff outer radius");
  with_report(oracle);

  std::string suite = "all";
  CLI::App* verify = app.add_subcommand("verify", "built-in invariant suites");
  verify->add_option("--suite", suite, "fields|kernels|pressure|leray|galilean|spaces|oracle|all");
  over.bind(verify, "seed", "battery seed");
  over.bind(verify, "N", "points per axis for the pressure and leray suites");
  over.bind(verify, "L", "box half-width for the pressure and leray suites");
  over.bind(verify, "dim", "dimension of the pressure suite");
  over.bind(verify, "r0", "cutoff inner radius for the pressure and leray suites");
  over.bind(verify, "r1", "cutoff outer radius for the pressure and leray suites");
  with_report(verify);

  FixtureArgs fa;
  CLI::App* gen = app.add_subcommand("gen-fixture", "write a manufactured fixture");
  gen->add_option("--name", fa.name, "vortex|forced|drifted|bump|solenoidal|gradient")->required();
  gen->add_option("--out", fa.out, "primary output (FLD1)")->required();
  gen->add_option("--forcing-out", fa.forcing_out, "forcing output (forced)");
  gen->add_option("--pressure-out", fa.pressure_out, "exact pressure output (vortex, forced)");
  gen->add_option("--source-out", fa.source_out, "momentum source output (drifted)");
  gen->add_option("--drift-out", fa.drift_out, "drift CSV output (drifted)");
  gen->add_option("--frames", fa.frames, "frame count");
  gen->add_option("--dt", fa.dt, "frame spacing");
  gen->add_option("--t0", fa.t0, "first frame time");
  gen->add_option("--rho", fa.rho, "bump radius");
  over.bind(gen, "dim", "dimension");
  over.bind(gen, "N", "points per axis");
  over.bind(gen, "L", "box half-width");
  with_report(gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig cfg;
    if (!common.config_path.empty()) load_config_file(common.config_path, cfg);
    over.apply(cfg);
    if (closure) cfg.closure = true;
    if (common.workers) cfg.workers = *common.workers;
    cfg.workers = workers_from_env(cfg.workers);
    cfg.validate();
    const ExecPolicy exec{cfg.workers};

    if (*pressure) return cmd_pressure(pa, cfg, exec, common.report_path);
    if (*project) return cmd_project(tensor, proj_out, cfg, exec, common.report_path);
    if (*galilean) return cmd_galilean(ga, cfg, common.report_path);
    if (*norms) return cmd_norms(norms_in, np, ngamma, ndelta, cfg, common.report_path);
    if (*suit)
      return cmd_suitability(su_in, su_p, su_f, battery_seed.value_or(cfg.seed), cfg,
                             common.report_path);
    if (*oracle) return cmd_oracle(op, or_in, or_f, enlargement, cfg, exec, common.report_path);
    if (*gen) return cmd_gen_fixture(fa, cfg, exec, common.report_path);
    if (*verify) {
      const VerifyResult r = run_verify(suite, cfg, exec);
      if (!common.report_path.empty()) write_report(common.report_path, r.report);
      if (r.pass) {
        std::cout << "PASS\n";
        return kExitOk;
      }
      std::cout << "FAIL:";
      for (const auto& f : r.report["failures"]) std::cout << ' ' << f.get<std::string>();
      std::cout << '\n';
      return kExitCheckFailed;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace wsp::cli
