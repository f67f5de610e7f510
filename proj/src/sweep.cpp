#include "optosqueeze/sweep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <exception>
#include <string>

#include "optosqueeze/error.hpp"

namespace optosqueeze {
namespace {

void check_points(std::size_t points) {
  if (points < 2) throw ValidationError("grid needs at least 2 points");
}

}  // namespace

void for_each_index(std::size_t count, Execution execution,
                    const std::function<void(std::size_t)>& body) {
  if (execution == Execution::Serial) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  check_points(points);
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw ValidationError("linear grid needs finite lo < hi");
  std::vector<double> out(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  check_points(points);
  if (!(lo > 0.0) || !std::isfinite(hi) || !(lo < hi))
    throw ValidationError("log grid needs 0 < lo < hi");
  std::vector<double> out(points);
  const double a = std::log10(lo);
  const double step = (std::log10(hi) - a) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) out[i] = std::pow(10.0, a + step * static_cast<double>(i));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> symmetric_log_grid(double min_abs, double max_abs, std::size_t per_side) {
  const auto side = log_grid(min_abs, max_abs, per_side);
  std::vector<double> out;
  out.reserve(2 * per_side + 1);
  for (auto it = side.rbegin(); it != side.rend(); ++it) out.push_back(-*it);
  out.push_back(0.0);
  out.insert(out.end(), side.begin(), side.end());
  return out;
}

std::string_view to_string(Solver solver) {
  return solver == Solver::Rwa ? "rwa" : "floquet";
}

Solver parse_solver(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "rwa") return Solver::Rwa;
  if (s == "floquet") return Solver::Floquet;
  throw ValidationError("solver: expected rwa or floquet, got '" + std::string(text) + "'");
}

std::vector<SpectrumPoint> spectrum_sweep(const LtiModel& model, const std::vector<double>& omegas,
                                          Execution execution) {
  std::vector<SpectrumPoint> out(omegas.size());
  for_each_index(omegas.size(), execution,
                 [&](std::size_t i) { out[i] = spectrum_point(model, omegas[i]); });
  return out;
}

SweepRow floquet_row(const FloquetModel& fm, double omega) {
  try {
    return {floquet_spectrum(fm, omega), Solver::Floquet, true};
  } catch (const ConvergenceError&) {
    return {floquet_spectrum_at(fm, omega, kMaxHarmonics), Solver::Floquet, false};
  }
}

std::vector<SweepRow> floquet_sweep(const FloquetModel& fm, const std::vector<double>& omegas,
                                    Execution execution) {
  std::vector<SweepRow> out(omegas.size());
  for_each_index(omegas.size(), execution,
                 [&](std::size_t i) { out[i] = floquet_row(fm, omegas[i]); });
  return out;
}

}  // namespace optosqueeze
