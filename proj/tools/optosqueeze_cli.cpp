// optosqueeze: spectra, figure data, impedance matching and squeezing thresholds.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "optosqueeze/error.hpp"
#include "optosqueeze/figures.hpp"
#include "optosqueeze/model.hpp"
#include "optosqueeze/optimize.hpp"
#include "optosqueeze/oracle.hpp"
#include "optosqueeze/scenario.hpp"

namespace os = optosqueeze;

namespace {

constexpr int kValidationExit = 2;
constexpr int kSolverExit = 3;

struct Globals {
  std::string solver;
  std::optional<int> harmonics;

  std::optional<os::Solver> solver_kind() const {
    if (solver.empty()) return std::nullopt;
    return os::parse_solver(solver);
  }
  int n_harm() const { return harmonics.value_or(os::kDefaultHarmonics); }
};

int run_spectrum(const Globals& g, const std::string& config, const std::string& out) {
  os::RunOverrides overrides;
  overrides.solver = g.solver_kind();
  overrides.n_harm = g.harmonics;
  std::string error;
  const int code = os::run_scenario(config, out, overrides, error);
  if (code != 0) std::cerr << "error: " << error << '\n';
  return code;
}

int run_fig(const Globals& g, const std::string& target, const std::string& dir) {
  os::figures::FigureOptions options;
  options.solver = g.solver_kind();
  options.n_harm = g.n_harm();
  for (const auto& path : os::figures::write_figure(target, dir, options))
    std::cout << path.string() << '\n';
  return 0;
}

int run_match(double c, double kappa, double gamma_m) {
  os::PhysParams p;
  p.kappa_out = kappa;
  p.gamma_m = gamma_m;
  p.validate();
  const os::DriveConfig d = os::matched_drives(p, os::coupling_for_cooperativity(p, c));
  const auto sq = os::squeeze_parameter(d.g_plus, d.g_minus);
  const double ratio = os::oracle::self_energy(0.0, p, d).kappa_tilde / p.kappa_total();
  std::cout << "cooperativity,g_minus,g_plus,r,exp_minus_2r,kappa_tilde_over_kappa\n"
            << os::format_number(c) << ',' << os::format_number(d.g_minus) << ','
            << os::format_number(d.g_plus) << ',' << os::format_number(sq.r) << ','
            << os::format_number(sq.exp_minus_2r) << ',' << os::format_number(ratio) << '\n';
  return 0;
}

struct ThresholdArgs {
  std::optional<double> target_db;
  std::optional<double> ratio;
  std::string scheme = "dissipative";
  std::string metric = "resonance";
  double n_th = 10.0;
  double gamma_m = 2e-5;
  double omega_m = 10.0;
  double c_lo = 1.0;
  double c_hi = 1e8;
};

int run_threshold(const Globals& g, const ThresholdArgs& a) {
  os::ThresholdProblem problem;
  problem.params.kappa_out = 1.0;
  problem.params.n_th = a.n_th;
  problem.params.gamma_m = a.gamma_m;
  problem.params.omega_m = a.omega_m;
  problem.params.validate();
  problem.scheme = os::parse_scheme(a.scheme);
  if (problem.scheme != os::Scheme::Dissipative && problem.scheme != os::Scheme::Ponderomotive)
    throw os::ValidationError("--scheme: expected dissipative or ponderomotive");
  if (a.metric == "resonance") problem.metric = os::ThresholdMetric::Resonance;
  else if (a.metric == "sideband") problem.metric = os::ThresholdMetric::Sideband;
  else throw os::ValidationError("--metric: expected resonance or sideband");
  problem.solver.kind = g.solver_kind().value_or(os::Solver::Rwa);
  problem.solver.n_harm = g.n_harm();
  problem.c_lo = a.c_lo;
  problem.c_hi = a.c_hi;
  const double target = a.ratio ? *a.ratio : os::ratio_from_db(*a.target_db);
  const auto result = os::threshold_cooperativity(problem, target);
  std::cout << "target_ratio,cooperativity,ratio\n"
            << os::format_number(target) << ',' << os::format_number(result.cooperativity) << ','
            << os::format_number(result.ratio) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Squeezed-light spectra of two-tone driven optomechanical cavities"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--solver", g.solver, "Spectrum solver")->check(CLI::IsMember({"rwa", "floquet"}));
  app.add_option("--harmonics", g.harmonics, "Initial Floquet truncation order")
      ->check(CLI::Range(2, os::kMaxHarmonics));

  std::string config, out;
  auto* spectrum = app.add_subcommand("spectrum", "Evaluate a scenario config to CSV");
  spectrum->add_option("--config", config, "Scenario file (key = value or JSON)")->required();
  spectrum->add_option("--out", out, "Output CSV path")->required();

  std::string target, dir;
  auto* fig = app.add_subcommand("fig", "Write the data behind a figure");
  fig->add_option("target", target, "2a, 2b, 2c, 3, 4 or 5")
      ->required()
      ->check(CLI::IsMember({"2a", "2b", "2c", "3", "4", "5"}));
  fig->add_option("--out", dir, "Output directory")->required();

  double c = 0.0, kappa = 1.0, gamma_m = 2e-5;
  auto* match = app.add_subcommand("match", "Impedance-matched drives at cooperativity C");
  match->add_option("--c", c, "Cooperativity 4 G-^2 / (kappa Gamma_M), >= 1")->required();
  match->add_option("--kappa", kappa, "Cavity decay rate")->capture_default_str();
  match->add_option("--gamma-m", gamma_m, "Mechanical decay rate")->capture_default_str();

  ThresholdArgs t;
  auto* threshold = app.add_subcommand("threshold", "Minimal cooperativity for a squeezing level");
  auto* db = threshold->add_option("--target", t.target_db, "Squeezing level in dB");
  auto* ratio = threshold->add_option("--ratio", t.ratio, "Target S / S_SN in (0, 1)");
  db->excludes(ratio);
  ratio->excludes(db);
  threshold->add_option("--scheme", t.scheme, "dissipative or ponderomotive")->capture_default_str();
  threshold->add_option("--metric", t.metric, "resonance (omega = 0) or sideband")
      ->capture_default_str();
  threshold->add_option("--n-th", t.n_th, "Thermal occupancy")->capture_default_str();
  threshold->add_option("--gamma-m", t.gamma_m, "Mechanical decay (kappa = 1)")->capture_default_str();
  threshold->add_option("--omega-m", t.omega_m, "Mechanical frequency (kappa = 1)")
      ->capture_default_str();
  threshold->add_option("--c-lo", t.c_lo, "Lower cooperativity bracket")->capture_default_str();
  threshold->add_option("--c-hi", t.c_hi, "Upper cooperativity bracket")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidationExit;
  }

  try {
    if (*spectrum) return run_spectrum(g, config, out);
    if (*fig) return run_fig(g, target, dir);
    if (*match) return run_match(c, kappa, gamma_m);
    if (*threshold) {
      if (!t.target_db && !t.ratio) throw os::ValidationError("threshold: give --target or --ratio");
      return run_threshold(g, t);
    }
  } catch (const os::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationExit;
  } catch (const os::SolverError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolverExit;
  }
  return 0;
}
