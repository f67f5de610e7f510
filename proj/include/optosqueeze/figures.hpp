#pragma once

// Plot data for the figure set. Each target produces one or more CSV files;
// spectra use the scenario schema, the sweeps their own wide or long tables.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "optosqueeze/model.hpp"
#include "optosqueeze/sweep.hpp"

namespace optosqueeze::figures {

struct FigureFile {
  std::string name;  // file name inside the output directory
  std::string csv;
};

struct FigureOptions {
  /// Overrides the per-series default solver where a figure has a choice.
  std::optional<Solver> solver;
  int n_harm = kDefaultHarmonics;
  Execution execution = Execution::Parallel;
};

/// Shared parameters of the spectra figures: kappa = 1, Gamma_M = 2e-5,
/// n_th = 10, C = 1e5, Omega = 10 (kappa / Omega = 1/10 for the ponderomotive scheme).
PhysParams spectra_params();
inline constexpr double kSpectraCooperativity = 1e5;

/// Measurement-map parameters in units of Omega: kappa = 0.05, Gamma_M = 2e-6, n_th = 10.
PhysParams measurement_params();

/// Strong-coupling spectrum: kappa = 1, Gamma_M = 0.1, n_th = 10, r = 5 and
/// effective coupling 1/2, i.e. G- = cosh(5)/2 and G+ = sinh(5)/2.
PhysParams strong_coupling_params();
DriveConfig strong_coupling_drives();

std::vector<FigureFile> fig2a(const FigureOptions& options = {});
std::vector<FigureFile> fig2b(const FigureOptions& options = {});
std::vector<FigureFile> fig2c(const FigureOptions& options = {});
std::vector<FigureFile> fig3(const FigureOptions& options = {});
std::vector<FigureFile> fig4(const FigureOptions& options = {});
std::vector<FigureFile> fig5(const FigureOptions& options = {});

/// Dispatches on "2a", "2b", "2c", "3", "4" or "5".
std::vector<FigureFile> figure(std::string_view target, const FigureOptions& options = {});

/// Computes every file first, then writes them into dir (created if missing).
std::vector<std::filesystem::path> write_figure(std::string_view target,
                                                const std::filesystem::path& dir,
                                                const FigureOptions& options = {});

}  // namespace optosqueeze::figures
