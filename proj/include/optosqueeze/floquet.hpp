#pragma once

// Harmonic-balance solver for the time-periodic Langevin systems that appear
// once the counter-rotating terms are kept. The drift is
//   A(t) = sum_n A_n exp(-i n Omega t),   n in {-2, ..., 2},
// and a frequency component x[w] couples to x[w - n Omega] through A_n. The
// frequency-coupled system is truncated to sidebands |m| <= n_harm.

#include <map>

#include <Eigen/Dense>

#include "optosqueeze/linres.hpp"
#include "optosqueeze/model.hpp"

namespace optosqueeze {

using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

inline constexpr int kDefaultHarmonics = 4;
inline constexpr int kMaxHarmonics = 8;
inline constexpr double kConvergenceTol = 1e-6;

/// Basis change from ladder (d, d^+, b, b^+) to quadrature (U1, U2, X1, X2) components.
const Matrix4c& ladder_to_quadrature();
/// P A P^{-1} for a ladder-basis block A.
Matrix4c to_quadrature_basis(const Matrix4c& ladder_block);
Matrix4c to_ladder_basis(const Matrix4c& quadrature_block);

struct LiftOptions {
  /// H_CR: -d^+(G+ b e^{-2i Omega t} + G- b^+ e^{2i Omega t}) + h.c.
  bool counter_rotating = true;
  /// -2 G0 (X1 cos Omega t + X2 sin Omega t) U2.
  bool measurement_tone = true;
  /// z-proportional sideband drives with A_+- = A0 G_+- / G0.
  bool sideband_dispersive = true;
  int n_harm = kDefaultHarmonics;
};

class FloquetModel {
 public:
  FloquetModel(const LtiModel& base, double base_freq, std::map<int, Matrix4c> ladder_blocks,
               std::map<int, Vector4c> drive_harmonics, int n_harm);

  double base_freq() const { return base_freq_; }
  int n_harm() const { return n_harm_; }
  /// Ladder-basis blocks, only nonzero harmonics are stored.
  const std::map<int, Matrix4c>& blocks() const { return blocks_; }
  const std::map<int, Matrix4c>& quadrature_blocks() const { return quad_blocks_; }
  /// Ladder-basis force per unit signal z at each harmonic.
  const std::map<int, Vector4c>& drive_harmonics() const { return drives_; }
  const LtiModel& base() const { return base_; }
  /// Largest |n| with a nonzero block.
  int max_offset() const;

  FloquetModel with_harmonics(int n_harm) const;

 private:
  LtiModel base_;
  double base_freq_;
  std::map<int, Matrix4c> blocks_;
  std::map<int, Matrix4c> quad_blocks_;
  std::map<int, Vector4c> drives_;
  int n_harm_;
};

/// Adds the counter-rotating (and measurement-tone) harmonics to `model`.
FloquetModel lift(const LtiModel& model, const PhysParams& params, const DriveConfig& drives,
                  const LiftOptions& options = {});

/// Largest real part of the truncated Floquet generator at order n_harm.
double truncated_abscissa(const FloquetModel& fm, int n_harm);

/// Time-averaged spectrum at a fixed truncation order, no escalation.
SpectrumPoint floquet_spectrum_at(const FloquetModel& fm, double omega, int n_harm);

/// Time-averaged spectrum; escalates the truncation from fm.n_harm() until two
/// successive orders agree to kConvergenceTol, failing past kMaxHarmonics.
SpectrumPoint floquet_spectrum(const FloquetModel& fm, double omega);

enum class Quadrature { U1, U2, Optimal };

struct ConvergenceReport {
  int n_harm = 0;
  SpectrumPoint lower;  // at n_harm
  SpectrumPoint upper;  // at n_harm + 1
  double lower_value = 0.0;
  double upper_value = 0.0;
  double rel_diff = 0.0;
};

ConvergenceReport check_convergence(const FloquetModel& fm, double omega,
                                    Quadrature quadrature = Quadrature::U1);

/// Harmonic-0 steady-state slope d<I>/dz at a fixed truncation order.
double floquet_mean_response_at(const FloquetModel& fm, int n_harm);
/// As above with the same escalation rule as floquet_spectrum.
double floquet_mean_response(const FloquetModel& fm);

double select(const SpectrumPoint& p, Quadrature q);

}  // namespace optosqueeze
