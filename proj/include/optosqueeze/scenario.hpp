#pragma once

// Batch scenarios: a parameter set, a frequency grid or parameter sweep, and
// a solver choice, evaluated to a deterministic CSV table.
//
// Config grammar (flat text): one `key = value` per line, `#` starts a
// comment, blank lines are ignored. A file whose first non-blank character is
// `{` is read as a JSON object with the same keys. Keys:
//   omega_m kappa_out kappa_int gamma_m g0 n_th gamma_l     physical rates
//   scheme g_minus g_plus g_zero a_zero                     drives
//   cooperativity                                           sets g_minus
//   g_plus = match                                          impedance matching
//   omega_min omega_max points grid(linear|log|symlog)      frequency grid
//   solver(rwa|floquet) harmonics                           solver
//   outputs = col1, col2, ...                               column subset
//   sweep, sweep2 = var:lo:hi:points[:linear|log]           parameter sweep
//   sweep_omega                                             frequency of sweep rows
//   metric(spectrum|band_minimum|enhancement)               per-row quantity of a sweep
//   z                                                       measurement signal
//   unit(kappa|omega_m)                                     reference rate

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "optosqueeze/model.hpp"
#include "optosqueeze/sweep.hpp"

namespace optosqueeze {

enum class GridScale { Linear, Log, SymmetricLog };
enum class RateUnit { Kappa, OmegaM };
enum class SweepMetric { Spectrum, BandMinimum, Enhancement };

struct FrequencyGrid {
  double omega_min = -1.0;
  double omega_max = 1.0;
  std::size_t points = 201;
  GridScale scale = GridScale::Linear;

  std::vector<double> values() const;
};

struct SweepAxis {
  std::string variable;
  double lo = 0.0;
  double hi = 1.0;
  std::size_t points = 2;
  GridScale scale = GridScale::Linear;

  std::vector<double> values() const;
};

struct Scenario {
  PhysParams params;
  DriveConfig drives;
  bool auto_match = false;
  std::optional<double> cooperativity;
  FrequencyGrid grid;
  SolverConfig solver;
  std::vector<std::string> outputs;  // empty: every column
  std::vector<SweepAxis> sweep;      // 0, 1 or 2 axes
  double sweep_omega = 0.0;
  SweepMetric metric = SweepMetric::Spectrum;
  double z = 1.0;
  RateUnit unit = RateUnit::Kappa;
};

/// Parses flat or JSON config text. Errors name the offending key.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

/// Applies the cooperativity and matching directives and checks the drives
/// against the scheme. The matched result has kappa_tilde[0] = kappa_total.
DriveConfig resolve_drives(const Scenario& scenario);

struct ResultRow {
  std::vector<double> axis;  // sweep variable values, empty for a spectrum
  SweepRow row;
  std::optional<double> enhancement;
};

struct SweepResult {
  std::vector<std::string> axis_names;
  SweepMetric metric = SweepMetric::Spectrum;
  std::vector<ResultRow> rows;
};

/// Spectrum rows of the scenario's model at the given frequencies (sweep settings ignored).
SweepResult spectrum_result(const Scenario& scenario, const std::vector<double>& omegas,
                            Execution execution = Execution::Parallel);

SweepResult evaluate_scenario(const Scenario& scenario, Execution execution = Execution::Parallel);

/// Throws SolverError naming the row if a spectrum invariant is violated.
void check_row_invariants(const SweepRow& row, Scheme scheme);

/// Columns available for `outputs`, in emission order.
std::vector<std::string> all_columns(const SweepResult& result);
std::string to_csv(const SweepResult& result, const std::vector<std::string>& outputs = {});

/// 17 significant digits; "" for missing values.
std::string format_number(double value);

/// Evaluates the config and writes the CSV; nothing is written on failure.
/// Returns 0, 2 (validation) or 3 (solver); the message goes to `error`.
struct RunOverrides {
  std::optional<Solver> solver;
  std::optional<int> n_harm;
};
int run_scenario(const std::filesystem::path& config, const std::filesystem::path& out,
                 const RunOverrides& overrides, std::string& error);

/// Gamma_meas / Gamma_meas^lc for a measurement scheme, linear cavity with equal kappa and A0.
double measurement_enhancement(const PhysParams& params, const DriveConfig& drives,
                               const SolverConfig& solver, bool* converged = nullptr);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace optosqueeze
