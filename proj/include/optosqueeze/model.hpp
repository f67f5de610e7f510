#pragma once

// Linear(ized) Langevin models of a two-tone driven optomechanical cavity.
//
// All state vectors use the quadrature basis (U1, U2, X1, X2):
//   U1 = (d + d^+)/sqrt2,  U2 = -i(d - d^+)/sqrt2   (cavity, rotating at w_cav)
//   X1 = (b + b^+)/sqrt2,  X2 =  i(b^+ - b)/sqrt2   (mechanics)
// with [U1, U2] = [X1, X2] = i. Inputs enter as +sqrt(rate) * channel and the
// observed output is U_out = sqrt(kappa_out) U - U_in, so the own-port
// reflection coefficient is kappa * chi_cav - 1.

#include <array>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace optosqueeze {

using Complex = std::complex<double>;
using Matrix4d = Eigen::Matrix4d;
using Vector4d = Eigen::Vector4d;
using OutputRows = Eigen::Matrix<double, 2, 4>;
using InputMap = Eigen::Matrix<double, 4, Eigen::Dynamic>;
using Feedthrough = Eigen::Matrix<double, 2, Eigen::Dynamic>;

inline constexpr int kU1 = 0;
inline constexpr int kU2 = 1;
inline constexpr int kX1 = 2;
inline constexpr int kX2 = 3;
inline constexpr std::array<std::string_view, 4> kBasisLabels = {"U1", "U2", "X1", "X2"};

/// Drift eigenvalues with real part above -kStabilityEps count as marginal.
inline constexpr double kStabilityEps = 1e-10;

enum class Scheme {
  Dissipative,
  Ponderomotive,
  Measurement,
  DissipativeLossy,
  DissipativePhaseNoise,
};

std::string_view to_string(Scheme scheme);
/// Accepts the enumerator names case-insensitively (and snake_case variants).
Scheme parse_scheme(std::string_view text);

/// Physical rates in one reference unit (usually kappa_total or omega_m).
struct PhysParams {
  double omega_m = 1.0;
  double kappa_out = 1.0;
  double kappa_int = 0.0;
  double gamma_m = 1e-3;
  double g0 = 0.0;
  double n_th = 0.0;
  double gamma_l = 0.0;

  double kappa_total() const { return kappa_out + kappa_int; }
  /// Throws ValidationError naming the first offending field.
  void validate() const;
};

struct DriveConfig {
  double g_minus = 0.0;
  double g_plus = 0.0;
  double g_zero = 0.0;
  double a_zero = 0.0;
  Scheme scheme = Scheme::Dissipative;
};

struct MeasurementSignal {
  double z = 0.0;
};

/// Static force on the state produced by the dispersive signal coupling.
struct MeasurementDrive {
  Vector4d per_unit_signal = Vector4d::Zero();
  double z = 0.0;

  Vector4d force() const { return per_unit_signal * z; }
};

/// Time-invariant linear Langevin system  dx/dt = drift x + in_map xi,
/// y = out_rows x + feedthrough xi, with <xi_j(t) xi_k(t')> = N_jk delta(t - t').
class LtiModel {
 public:
  LtiModel(Scheme scheme, Matrix4d drift, InputMap in_map, std::vector<double> channel_rates,
           std::vector<std::string> channel_labels, Eigen::MatrixXcd noise_corr,
           OutputRows out_rows, Feedthrough feedthrough, double output_rate);

  Scheme scheme() const { return scheme_; }
  const Matrix4d& drift() const { return drift_; }
  const InputMap& in_map() const { return in_map_; }
  const std::vector<double>& channel_rates() const { return channel_rates_; }
  const std::vector<std::string>& channel_labels() const { return channel_labels_; }
  const Eigen::MatrixXcd& noise_corr() const { return noise_corr_; }
  const OutputRows& out_rows() const { return out_rows_; }
  const Feedthrough& feedthrough() const { return feedthrough_; }
  /// Decay rate through the observed port (kappa_out).
  double output_rate() const { return output_rate_; }
  int channel_count() const { return static_cast<int>(in_map_.cols()); }
  /// Index of the channel with the given label, or -1.
  int channel_index(std::string_view label) const;

 private:
  Scheme scheme_;
  Matrix4d drift_;
  InputMap in_map_;
  std::vector<double> channel_rates_;
  std::vector<std::string> channel_labels_;
  Eigen::MatrixXcd noise_corr_;
  OutputRows out_rows_;
  Feedthrough feedthrough_;
  double output_rate_;
};

LtiModel build_dissipative(const PhysParams& params, const DriveConfig& drives);
LtiModel build_ponderomotive(const PhysParams& params, const DriveConfig& drives);
LtiModel build_lossy(const PhysParams& params, const DriveConfig& drives);
LtiModel build_phase_noise(const PhysParams& params, const DriveConfig& drives);

struct MeasurementModel {
  LtiModel model;
  MeasurementDrive drive;
};
MeasurementModel build_measurement(const PhysParams& params, const DriveConfig& drives,
                                   MeasurementSignal signal);

/// Dispatches on drives.scheme. Measurement models are returned without their drive.
LtiModel build_model(const PhysParams& params, const DriveConfig& drives);

/// Blue-sideband coupling that makes kappa_tilde[0] equal kappa_total.
double impedance_match(const PhysParams& params, double g_minus);
/// Matched pair near g_minus. At large cooperativity G+ alone cannot hit the match
/// to better than C * eps, so g_minus is nudged (relative shift of order C * eps)
/// until (G- - G+)(G- + G+) equals kappa_total gamma_m / 4 to rounding.
/// Only g_minus and g_plus are set.
DriveConfig matched_drives(const PhysParams& params, double g_minus);

struct SqueezeParameter {
  double r;
  /// (g_minus - g_plus) / (g_minus + g_plus), exact even where exp(2r) overflows.
  double exp_minus_2r;
};
SqueezeParameter squeeze_parameter(double g_plus, double g_minus);

double cooperativity(const PhysParams& params, double g);
/// Inverse of cooperativity(): the coupling g with 4 g^2 = C kappa_total gamma_m.
double coupling_for_cooperativity(const PhysParams& params, double c);

enum class Stability { Stable, Marginal, Unstable };
std::string_view to_string(Stability stability);
Stability stability_check(const LtiModel& model);
/// Largest real part among the drift eigenvalues.
double spectral_abscissa(const Matrix4d& drift);

}  // namespace optosqueeze
