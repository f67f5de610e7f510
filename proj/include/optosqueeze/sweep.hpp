#pragma once

// Grids and sweep drivers. Parallel execution splits the index range across
// OpenMP threads; every point is a pure function of its inputs, so results
// are bit-identical to the serial path and independent of thread count.

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "optosqueeze/floquet.hpp"
#include "optosqueeze/linres.hpp"

namespace optosqueeze {

enum class Execution { Serial, Parallel };

/// Calls body(i) for i in [0, count). The exception thrown at the lowest index
/// is rethrown after all points have finished.
void for_each_index(std::size_t count, Execution execution,
                    const std::function<void(std::size_t)>& body);

/// `points` values from lo to hi inclusive; endpoints are exact.
std::vector<double> linear_grid(double lo, double hi, std::size_t points);
/// Logarithmically spaced, lo and hi > 0; endpoints are exact.
std::vector<double> log_grid(double lo, double hi, std::size_t points);
/// -log_grid(...) reversed, 0, log_grid(...): resolves structure on many scales around 0.
std::vector<double> symmetric_log_grid(double min_abs, double max_abs, std::size_t per_side);

enum class Solver { Rwa, Floquet };
std::string_view to_string(Solver solver);
Solver parse_solver(std::string_view text);

struct SolverConfig {
  Solver kind = Solver::Rwa;
  int n_harm = kDefaultHarmonics;
};

struct SweepRow {
  SpectrumPoint point;
  Solver solver = Solver::Rwa;
  /// False when the Floquet truncation did not settle; point then holds the last iterate.
  bool converged = true;
};

std::vector<SpectrumPoint> spectrum_sweep(const LtiModel& model, const std::vector<double>& omegas,
                                          Execution execution = Execution::Parallel);

std::vector<SweepRow> floquet_sweep(const FloquetModel& fm, const std::vector<double>& omegas,
                                    Execution execution = Execution::Parallel);

/// One Floquet point; non-convergence is reported in the row instead of thrown.
SweepRow floquet_row(const FloquetModel& fm, double omega);

}  // namespace optosqueeze
