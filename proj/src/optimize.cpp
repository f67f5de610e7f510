#include "optosqueeze/optimize.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "optosqueeze/error.hpp"

namespace optosqueeze {
namespace {

constexpr int kBrentBits = 30;
constexpr double kThresholdTol = 1e-6;
constexpr int kMonotonicitySamples = 25;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

SpectrumFn spectrum_function(const LtiModel& model, const PhysParams& params,
                             const DriveConfig& drives, const SolverConfig& solver) {
  if (solver.kind == Solver::Rwa) {
    return [model](double omega) { return spectrum_point(model, omega); };
  }
  LiftOptions options;
  options.n_harm = solver.n_harm;
  const FloquetModel fm = lift(model, params, drives, options);
  return [fm](double omega) { return floquet_spectrum(fm, omega); };
}

Quadrature squeezing_quadrature(Scheme scheme) {
  return scheme == Scheme::Ponderomotive ? Quadrature::Optimal : Quadrature::U1;
}

BandMinimum band_minimum(const SpectrumFn& spectrum, Quadrature quadrature, double lo, double hi,
                         std::size_t grid_points) {
  const auto grid = linear_grid(lo, hi, grid_points);
  std::size_t best = 0;
  SpectrumPoint best_point = spectrum(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    SpectrumPoint p = spectrum(grid[i]);
    if (select(p, quadrature) < select(best_point, quadrature)) {
      best = i;
      best_point = p;
    }
  }
  const double a = grid[best == 0 ? 0 : best - 1];
  const double b = grid[best + 1 == grid.size() ? best : best + 1];
  BandMinimum out{grid[best], select(best_point, quadrature), best_point};
  if (a == b) return out;

  std::uintmax_t max_iter = 200;
  const auto refined = boost::math::tools::brent_find_minima(
      [&](double w) { return select(spectrum(w), quadrature); }, a, b, kBrentBits, max_iter);
  // Keep the grid point when Brent cannot improve on it (e.g. an exact minimum at a node).
  if (refined.second < out.value) {
    out.omega = refined.first;
    out.point = spectrum(refined.first);
    out.value = select(out.point, quadrature);
  }
  return out;
}

DriveConfig drives_at_cooperativity(const ThresholdProblem& problem, double c) {
  DriveConfig d;
  d.scheme = problem.scheme;
  d.g_minus = coupling_for_cooperativity(problem.params, c);
  if (problem.scheme != Scheme::Ponderomotive) {
    const DriveConfig m = matched_drives(problem.params, d.g_minus);
    d.g_minus = m.g_minus;
    d.g_plus = m.g_plus;
  }
  return d;
}

double threshold_metric(const ThresholdProblem& problem, double c) {
  const DriveConfig drives = drives_at_cooperativity(problem, c);
  const LtiModel model = build_model(problem.params, drives);
  const SpectrumFn f = spectrum_function(model, problem.params, drives, problem.solver);
  const Quadrature q = squeezing_quadrature(problem.scheme);
  if (problem.metric == ThresholdMetric::Resonance) return select(f(0.0), q) / kShotNoise;
  const double omega = problem.params.omega_m;
  const double half = kSidebandWindow * problem.params.gamma_m;
  return band_minimum(f, q, omega - half, omega + half).value / kShotNoise;
}

ThresholdResult threshold_cooperativity(const ThresholdProblem& problem, double target_ratio) {
  if (!(target_ratio > 0.0 && target_ratio < 1.0))
    throw ValidationError("threshold: target ratio must lie in (0, 1), got " + fmt(target_ratio));
  if (!(problem.c_lo > 0.0 && problem.c_lo < problem.c_hi))
    throw ValidationError("threshold: cooperativity bracket must satisfy 0 < c_lo < c_hi");

  const double x_lo = std::log10(problem.c_lo);
  const double x_hi = std::log10(problem.c_hi);
  auto f = [&](double x) { return threshold_metric(problem, std::pow(10.0, x)) - target_ratio; };

  const double f_lo = f(x_lo);
  const double f_hi = f(x_hi);
  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    throw SolverError("threshold: bracket [" + fmt(problem.c_lo) + ", " + fmt(problem.c_hi) +
                      "] does not enclose the target; S/S_SN - target = " + fmt(f_lo) + " and " +
                      fmt(f_hi));
  }
  double previous = f_lo;
  for (int i = 1; i < kMonotonicitySamples; ++i) {
    const double x = x_lo + (x_hi - x_lo) * i / kMonotonicitySamples;
    const double v = f(x);
    if (v > previous + 1e-12 * (std::abs(previous) + target_ratio)) {
      throw SolverError("threshold: metric is not monotone in C near C = " +
                        fmt(std::pow(10.0, x)));
    }
    previous = v;
  }

  std::uintmax_t max_iter = 200;
  const auto bracket = boost::math::tools::bisect(
      f, x_lo, x_hi,
      [](double a, double b) { return std::abs(b - a) <= 1e-14 * std::max(1.0, std::abs(a)); },
      max_iter);
  const double c = std::pow(10.0, 0.5 * (bracket.first + bracket.second));
  const double ratio = threshold_metric(problem, c);
  if (!(std::abs(ratio - target_ratio) < kThresholdTol)) {
    throw SolverError("threshold: bisection ended at C = " + fmt(c) + " with S/S_SN = " +
                      fmt(ratio) + ", target " + fmt(target_ratio));
  }
  return {c, ratio};
}

double ratio_from_db(double db) {
  if (!(db > 0.0) || !std::isfinite(db))
    throw ValidationError("squeezing level in dB must be positive, got " + fmt(db));
  return std::pow(10.0, -db / 10.0);
}

}  // namespace optosqueeze
