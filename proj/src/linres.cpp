#include "optosqueeze/linres.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "optosqueeze/error.hpp"

namespace optosqueeze {
namespace {

// Anything this ill-conditioned is a pole on (or numerically at) the real axis.
constexpr double kSingularRcond = 1e-13;

Eigen::Matrix4cd resolvent_lhs(const Matrix4d& drift, double omega) {
  Eigen::Matrix4cd lhs = -drift.cast<Complex>();
  lhs.diagonal().array() += Complex(0.0, -omega);
  return lhs;
}

void require_stable(const LtiModel& model) {
  const double top = spectral_abscissa(model.drift());
  if (top >= -kStabilityEps) {
    std::ostringstream os;
    os.precision(17);
    os << "model is not stable (largest drift eigenvalue real part " << top << ")";
    throw SolverError(os.str());
  }
}

Eigen::Matrix<Complex, 2, Eigen::Dynamic> output_response(const LtiModel& model, double omega) {
  return model.out_rows().cast<Complex>() * state_response(model, omega) +
         model.feedthrough().cast<Complex>();
}

}  // namespace

QuadratureOptimum optimal_quadrature(double s1, double s2, double s12) {
  const double root = std::sqrt((s1 - s2) * (s1 - s2) + 4.0 * s12 * s12);
  const double denom = s1 + s2 + root;
  // Product form is free of the cancellation in (s1 + s2)/2 - root/2.
  const double s_opt = denom > 0.0 ? (2.0 * s1 * s2 - 2.0 * s12 * s12) / denom : 0.0;
  double phi = 0.5 * std::atan2(-2.0 * s12, s2 - s1);
  if (phi <= -0.5 * std::numbers::pi) phi += std::numbers::pi;
  if (phi == 0.0) phi = 0.0;  // drop a negative zero
  return {s_opt, phi};
}

SpectrumPoint make_spectrum_point(double omega, double s1, double s2, double s12) {
  SpectrumPoint p;
  p.omega = omega;
  p.s_u1 = s1;
  p.s_u2 = s2;
  p.s_u12 = s12;
  const auto opt = optimal_quadrature(s1, s2, s12);
  p.s_opt = opt.s_opt;
  p.phi_opt = opt.phi_opt;
  if (std::abs(s12) <= 1e-12 * std::max(std::abs(s1), std::abs(s2))) {
    const double product = 4.0 * s1 * s2;
    p.n_eff = 0.5 * (std::sqrt(std::max(product, 0.0)) - 1.0);
  }
  return p;
}

Eigen::Matrix<Complex, 4, Eigen::Dynamic> state_response(const LtiModel& model, double omega) {
  if (!std::isfinite(omega)) throw ValidationError("omega must be finite");
  require_stable(model);
  const Eigen::PartialPivLU<Eigen::Matrix4cd> lu(resolvent_lhs(model.drift(), omega));
  if (!(lu.rcond() > kSingularRcond)) {
    std::ostringstream os;
    os.precision(17);
    os << "singular response at omega = " << omega;
    throw SolverError(os.str());
  }
  return lu.solve(model.in_map().cast<Complex>());
}

std::array<TransferRow, 2> transfer(const LtiModel& model, double omega) {
  const auto t = output_response(model, omega);
  return {TransferRow{omega, t.row(0)}, TransferRow{omega, t.row(1)}};
}

SpectrumPoint spectrum_point(const LtiModel& model, double omega) {
  const auto tp = output_response(model, omega);
  const auto tm = output_response(model, -omega);
  const Eigen::MatrixXcd& n = model.noise_corr();
  // S_AB[w] = sum_jk T^A_j[w] N_jk T^B_k[-w]
  const Eigen::Matrix2cd s = tp * n * tm.transpose();
  return make_spectrum_point(omega, s(0, 0).real(), s(1, 1).real(),
                             0.5 * (s(0, 1) + s(1, 0)).real());
}

double mean_response(const LtiModel& model, const MeasurementDrive& drive) {
  require_stable(model);
  const Eigen::PartialPivLU<Eigen::Matrix4d> lu(-model.drift());
  if (!(lu.rcond() > kSingularRcond)) throw SolverError("singular drift at omega = 0");
  const Vector4d x = lu.solve(drive.per_unit_signal);
  // <I> = sqrt(kappa) <U1_out> = sqrt(kappa) * sqrt(kappa) <U1>; input means vanish.
  const double rate = model.output_rate();
  return std::sqrt(rate) * model.out_rows().row(0).dot(x);
}

double measurement_rate(double chi_meas, double s_ii_zero) {
  if (!(s_ii_zero > 0.0)) {
    std::ostringstream os;
    os << "measurement_rate: homodyne spectrum must be positive, got " << s_ii_zero;
    throw ValidationError(os.str());
  }
  return chi_meas * chi_meas / (2.0 * s_ii_zero);
}

double homodyne_spectrum(const LtiModel& model, double s_u1) {
  return 2.0 * model.output_rate() * s_u1;
}

}  // namespace optosqueeze
