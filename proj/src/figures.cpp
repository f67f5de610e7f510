#include "optosqueeze/figures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "optosqueeze/error.hpp"
#include "optosqueeze/optimize.hpp"
#include "optosqueeze/scenario.hpp"

namespace optosqueeze::figures {
namespace {

constexpr std::size_t kResonancePerSide = 151;
constexpr std::size_t kSidebandPoints = 1001;
constexpr double kSidebandHalfWidth = 50.0;  // in units of gamma_m

Scenario dissipative_series(const FigureOptions& options) {
  Scenario s;
  s.params = spectra_params();
  s.drives.scheme = Scheme::Dissipative;
  s.cooperativity = kSpectraCooperativity;
  s.auto_match = true;
  s.solver.kind = options.solver.value_or(Solver::Rwa);
  s.solver.n_harm = options.n_harm;
  return s;
}

Scenario ponderomotive_series() {
  Scenario s;
  s.params = spectra_params();
  s.drives.scheme = Scheme::Ponderomotive;
  s.cooperativity = kSpectraCooperativity;
  return s;
}

std::vector<double> resonance_grid() {
  return symmetric_log_grid(1e-7, 3.0, kResonancePerSide);
}

std::vector<double> sideband_grid() {
  const PhysParams p = spectra_params();
  const double half = kSidebandHalfWidth * p.gamma_m;
  return linear_grid(p.omega_m - half, p.omega_m + half, kSidebandPoints);
}

std::string spectrum_csv(const Scenario& s, const std::vector<double>& omegas,
                         const FigureOptions& options) {
  const SweepResult result = spectrum_result(s, omegas, options.execution);
  for (const auto& r : result.rows) check_row_invariants(r.row, s.drives.scheme);
  return to_csv(result);
}

std::vector<FigureFile> spectra_pair(const std::string& stem, const std::vector<double>& omegas,
                                     const FigureOptions& options) {
  return {{stem + "_dissipative.csv", spectrum_csv(dissipative_series(options), omegas, options)},
          {stem + "_ponderomotive.csv", spectrum_csv(ponderomotive_series(), omegas, options)}};
}

std::string row(std::initializer_list<std::string> cells) {
  std::string out;
  for (const auto& c : cells) out += (out.empty() ? "" : ",") + c;
  return out + '\n';
}

std::string ratio(double s) { return format_number(s / kShotNoise); }

}  // namespace

PhysParams spectra_params() {
  PhysParams p;
  p.kappa_out = 1.0;
  p.omega_m = 10.0;
  p.gamma_m = 2e-5;
  p.n_th = 10.0;
  return p;
}

PhysParams measurement_params() {
  PhysParams p;
  p.omega_m = 1.0;
  p.kappa_out = 0.05;
  p.gamma_m = 2e-6;
  p.n_th = 10.0;
  return p;
}

PhysParams strong_coupling_params() {
  PhysParams p;
  p.kappa_out = 1.0;
  p.gamma_m = 0.1;
  p.n_th = 10.0;
  p.omega_m = 100.0;  // only the RWA model is used
  return p;
}

DriveConfig strong_coupling_drives() {
  DriveConfig d;
  d.g_minus = 0.5 * std::cosh(5.0);
  d.g_plus = 0.5 * std::sinh(5.0);
  return d;
}

std::vector<FigureFile> fig2a(const FigureOptions& options) {
  return spectra_pair("fig2a", resonance_grid(), options);
}

std::vector<FigureFile> fig2b(const FigureOptions& options) {
  return spectra_pair("fig2b", sideband_grid(), options);
}

std::vector<FigureFile> fig2c(const FigureOptions& options) {
  std::vector<double> omegas = resonance_grid();
  const auto side = sideband_grid();
  omegas.insert(omegas.end(), side.begin(), side.end());
  std::sort(omegas.begin(), omegas.end());
  omegas.erase(std::unique(omegas.begin(), omegas.end()), omegas.end());
  return spectra_pair("fig2c", omegas, options);
}

std::vector<FigureFile> fig3(const FigureOptions& options) {
  const auto cs = log_grid(1.0, 1e7, 71);
  const PhysParams p = spectra_params();
  struct Row {
    double diss_rwa, diss_floquet, ps_resonance, ps_sideband, ps_sideband_omega;
    bool converged;
  };
  std::vector<Row> rows(cs.size());
  for_each_index(cs.size(), options.execution, [&](std::size_t i) {
    ThresholdProblem diss;
    diss.params = p;
    DriveConfig d = drives_at_cooperativity(diss, cs[i]);
    const LtiModel model = build_dissipative(p, d);
    LiftOptions lift_options;
    lift_options.n_harm = options.n_harm;
    const SweepRow fl = floquet_row(lift(model, p, d, lift_options), 0.0);

    ThresholdProblem ps = diss;
    ps.scheme = Scheme::Ponderomotive;
    const DriveConfig g = drives_at_cooperativity(ps, cs[i]);
    const LtiModel pm = build_ponderomotive(p, g);
    const double half = kSidebandWindow * p.gamma_m;
    const auto best = band_minimum([&](double w) { return spectrum_point(pm, w); },
                                   Quadrature::Optimal, p.omega_m - half, p.omega_m + half);
    rows[i] = {spectrum_point(model, 0.0).s_u1, fl.point.s_u1, spectrum_point(pm, 0.0).s_opt,
               best.value, best.omega, fl.converged};
  });

  std::string csv = row({"cooperativity", "diss_rwa", "diss_floquet", "diss_floquet_converged",
                         "ps_resonance", "ps_sideband", "ps_sideband_omega"});
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const Row& r = rows[i];
    csv += row({format_number(cs[i]), ratio(r.diss_rwa), ratio(r.diss_floquet),
                r.converged ? "true" : "false", ratio(r.ps_resonance), ratio(r.ps_sideband),
                format_number(r.ps_sideband_omega)});
  }
  return {{"fig3.csv", csv}};
}

std::vector<FigureFile> fig4(const FigureOptions& options) {
  const auto cs = log_grid(1e-1, 1e7, 33);
  const auto c0s = log_grid(1e-4, 1e2, 25);
  const PhysParams p = measurement_params();
  SolverConfig solver;
  solver.kind = options.solver.value_or(Solver::Floquet);
  solver.n_harm = options.n_harm;

  struct Cell {
    double enhancement = 0.0;
    std::string status;
  };
  std::vector<Cell> cells(cs.size() * c0s.size());
  for_each_index(cells.size(), options.execution, [&](std::size_t k) {
    const double c = cs[k / c0s.size()];
    const double c0 = c0s[k % c0s.size()];
    DriveConfig d;
    d.scheme = Scheme::Measurement;
    d.g_minus = coupling_for_cooperativity(p, c);
    if (c >= 1.0) {
      const DriveConfig m = matched_drives(p, d.g_minus);
      d.g_minus = m.g_minus;
      d.g_plus = m.g_plus;
    }
    d.g_zero = coupling_for_cooperativity(p, c0);
    d.a_zero = 1.0;
    try {
      bool converged = true;
      cells[k].enhancement = measurement_enhancement(p, d, solver, &converged);
      cells[k].status = converged ? "ok" : "not_converged";
    } catch (const SolverError&) {
      cells[k].status = "solver_error";
    }
  });

  std::string csv =
      row({"cooperativity", "cooperativity_zero", "enhancement", "matched", "status"});
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const double c = cs[k / c0s.size()];
    const Cell& cell = cells[k];
    csv += row({format_number(c), format_number(c0s[k % c0s.size()]),
                cell.status == "solver_error" ? "" : format_number(cell.enhancement),
                c >= 1.0 ? "true" : "false", cell.status});
  }
  return {{"fig4.csv", csv}};
}

std::vector<FigureFile> fig5(const FigureOptions& options) {
  Scenario s;
  s.params = strong_coupling_params();
  s.drives = strong_coupling_drives();
  const auto sq = squeeze_parameter(s.drives.g_plus, s.drives.g_minus);
  std::ostringstream header;
  header.precision(17);
  header << "# kappa=1 gamma_m=0.1 n_th=10 r=" << sq.r << " g_eff=0.5 g_minus=" << s.drives.g_minus
         << " g_plus=" << s.drives.g_plus
         << " cooperativity=" << cooperativity(s.params, s.drives.g_minus)
         << " (4 g_minus^2 / (kappa gamma_m))\n";
  return {{"fig5.csv", header.str() + spectrum_csv(s, linear_grid(-1.5, 1.5, 1201), options)}};
}

std::vector<FigureFile> figure(std::string_view target, const FigureOptions& options) {
  if (target == "2a") return fig2a(options);
  if (target == "2b") return fig2b(options);
  if (target == "2c") return fig2c(options);
  if (target == "3") return fig3(options);
  if (target == "4") return fig4(options);
  if (target == "5") return fig5(options);
  throw ValidationError("unknown figure '" + std::string(target) +
                        "' (expected 2a, 2b, 2c, 3, 4 or 5)");
}

std::vector<std::filesystem::path> write_figure(std::string_view target,
                                                const std::filesystem::path& dir,
                                                const FigureOptions& options) {
  const auto files = figure(target, options);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ValidationError("cannot create directory '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written;
  for (const auto& f : files) {
    write_text_file(dir / f.name, f.csv);
    written.push_back(dir / f.name);
  }
  return written;
}

}  // namespace optosqueeze::figures
