#pragma once

#include <cstddef>
#include <functional>

#include "optosqueeze/floquet.hpp"
#include "optosqueeze/linres.hpp"
#include "optosqueeze/model.hpp"
#include "optosqueeze/sweep.hpp"

namespace optosqueeze {

using SpectrumFn = std::function<SpectrumPoint(double)>;

/// Spectrum evaluator for a model under the chosen solver. Floquet
/// non-convergence is raised as ConvergenceError.
SpectrumFn spectrum_function(const LtiModel& model, const PhysParams& params,
                             const DriveConfig& drives, const SolverConfig& solver);

struct BandMinimum {
  double omega;
  double value;  // selected quadrature spectrum at omega
  SpectrumPoint point;
};

/// Gridded minimum of the selected quadrature over [lo, hi], refined by
/// Brent's method to a relative tolerance of about 1e-9 in omega.
BandMinimum band_minimum(const SpectrumFn& spectrum, Quadrature quadrature, double lo, double hi,
                         std::size_t grid_points = 401);

/// Squeezed quadrature searched by band_minimum: s_opt for the ponderomotive
/// scheme, s_u1 otherwise.
Quadrature squeezing_quadrature(Scheme scheme);

/// Half-width of the sideband search window in units of gamma_m.
inline constexpr double kSidebandWindow = 20.0;

enum class ThresholdMetric {
  Resonance,  // spectrum at omega = 0
  Sideband,   // band minimum over [Omega - 20 Gamma_M, Omega + 20 Gamma_M]
};

struct ThresholdProblem {
  PhysParams params;
  Scheme scheme = Scheme::Dissipative;
  ThresholdMetric metric = ThresholdMetric::Resonance;
  SolverConfig solver;
  double c_lo = 1.0;
  double c_hi = 1e8;
};

/// Drives at cooperativity c: the red coupling from c and, for dissipative
/// schemes, the impedance-matched blue coupling.
DriveConfig drives_at_cooperativity(const ThresholdProblem& problem, double c);

/// S / S_SN of the problem's metric at cooperativity c.
double threshold_metric(const ThresholdProblem& problem, double c);

struct ThresholdResult {
  double cooperativity;
  double ratio;  // metric at the returned cooperativity
};

/// Smallest cooperativity whose metric reaches target_ratio (in (0, 1)), by
/// bisection in log C. The metric must decrease monotonically over the bracket.
ThresholdResult threshold_cooperativity(const ThresholdProblem& problem, double target_ratio);

/// 10^(-dB/10): the noise ratio corresponding to a squeezing level in dB.
double ratio_from_db(double db);

}  // namespace optosqueeze
