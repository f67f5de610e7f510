#pragma once

#include <array>
#include <optional>

#include <Eigen/Dense>

#include "optosqueeze/model.hpp"

namespace optosqueeze {

/// Shot-noise level of any output quadrature.
inline constexpr double kShotNoise = 0.5;

/// Response of one output quadrature to every input channel at frequency omega
/// (rotating frame; omega = 0 is the cavity resonance).
struct TransferRow {
  double omega = 0.0;
  Eigen::RowVectorXcd coeffs;
};

struct SpectrumPoint {
  double omega = 0.0;
  double s_u1 = kShotNoise;
  double s_u2 = kShotNoise;
  /// Symmetrized cross-spectrum (S_U1U2 + S_U2U1)/2.
  double s_u12 = 0.0;
  double s_opt = kShotNoise;
  double phi_opt = 0.0;
  /// Only defined where the cross-spectrum vanishes.
  std::optional<double> n_eff;
};

struct QuadratureOptimum {
  double s_opt;
  double phi_opt;
};

/// Minimum over phi of s1 cos^2 phi + s2 sin^2 phi + s12 sin 2phi, phi in (-pi/2, pi/2].
QuadratureOptimum optimal_quadrature(double s1, double s2, double s12);

/// Spectrum record from the three quadrature spectra; fills s_opt, phi_opt and n_eff.
SpectrumPoint make_spectrum_point(double omega, double s1, double s2, double s12);

/// (-i omega - drift)^{-1} in_map: internal state response to every channel.
Eigen::Matrix<Complex, 4, Eigen::Dynamic> state_response(const LtiModel& model, double omega);

/// Output rows (U1_out, U2_out), input feedthrough included.
std::array<TransferRow, 2> transfer(const LtiModel& model, double omega);

SpectrumPoint spectrum_point(const LtiModel& model, double omega);

/// Static slope d<I>/dz of the homodyne current I = sqrt(kappa_out) U1_out.
double mean_response(const LtiModel& model, const MeasurementDrive& drive);

/// Gamma_meas = chi^2 / (2 S_II[0]) with the symmetrized homodyne spectrum S_II.
double measurement_rate(double chi_meas, double s_ii_zero);

/// S_II = 2 kappa_out S_U1_out.
double homodyne_spectrum(const LtiModel& model, double s_u1);

}  // namespace optosqueeze
