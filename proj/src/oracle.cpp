#include "optosqueeze/oracle.hpp"

#include <cmath>

#include "optosqueeze/error.hpp"

namespace optosqueeze::oracle {

Complex chi_m(double omega, const PhysParams& params) {
  const double w2 = params.omega_m * params.omega_m;
  return 1.0 / Complex(w2 - omega * omega, -omega * params.gamma_m);
}

double effective_coupling_sq(const DriveConfig& drives) {
  return (drives.g_minus - drives.g_plus) * (drives.g_minus + drives.g_plus);
}

SelfEnergy self_energy(double omega, const PhysParams& params, const DriveConfig& drives) {
  const Complex sigma =
      Complex(0.0, -effective_coupling_sq(drives)) / Complex(0.5 * params.gamma_m, -omega);
  return {sigma, sigma.real(), -2.0 * sigma.imag()};
}

Complex chi_cav(double omega, const PhysParams& params, const DriveConfig& drives) {
  const Complex sigma = self_energy(omega, params, drives).sigma;
  return 1.0 / (Complex(0.5 * params.kappa_total(), -omega) + Complex(0.0, 1.0) * sigma);
}

double s_u1_resonance_e(double kappa, double kappa_tilde, double n_th, double exp_minus_2r) {
  const double total = kappa + kappa_tilde;
  if (total == 0.0) throw ValidationError("s_u1_resonance: kappa + kappa_tilde = 0");
  const double mismatch = kappa - kappa_tilde;
  return (4.0 * kappa * kappa_tilde * (1.0 + 2.0 * n_th) * exp_minus_2r + mismatch * mismatch) /
         (total * total);
}

double s_u1_resonance(double kappa, double kappa_tilde, double n_th, double r) {
  return s_u1_resonance_e(kappa, kappa_tilde, n_th, std::exp(-2.0 * r));
}

Flagged<double> ps_asymptote_resonance(double g, double kappa, double omega_m) {
  const double deficit = 16.0 * g * g / (kappa * omega_m);
  return {1.0 - deficit, kappa <= 0.1 * omega_m && deficit < 0.5};
}

double dissipative_cmin(double n_th) { return 0.5 * (1.0 + 2.0 * n_th); }

double ps_cmin(double omega_m, double gamma_m, double n_th) {
  return 0.25 * (dissipative_cmin(n_th) + omega_m / (std::sqrt(2.0) * gamma_m));
}

StrongCoupling strong_coupling(const PhysParams& params, double g) {
  const double kappa = params.kappa_total();
  const double gamma = params.gamma_m;
  const double radicand = 8.0 * g * g - kappa * kappa - gamma * gamma;
  StrongCoupling out{};
  out.condition = radicand >= 0.0;
  if (!out.condition) return out;
  out.omega_plus = std::sqrt(radicand) / (2.0 * std::sqrt(2.0));
  const double sum = gamma + kappa;
  const double diff = gamma - kappa;
  const double g16 = 16.0 * g * g;
  out.s_min = diff * diff * (sum * sum - g16) / (sum * sum * (diff * diff - g16));
  out.s_min_valid = std::isfinite(out.s_min) && out.s_min >= 0.0 && out.s_min <= 1.0;
  return out;
}

double lossy_resonance_e(double kappa_o, double kappa_i, double n_th, double exp_minus_2r) {
  const double total = kappa_o + kappa_i;
  if (total == 0.0) throw ValidationError("lossy_resonance: kappa_total = 0");
  return kappa_i / total + kappa_o / total * (1.0 + 2.0 * n_th) * exp_minus_2r;
}

double lossy_resonance(double kappa_o, double kappa_i, double n_th, double r) {
  return lossy_resonance_e(kappa_o, kappa_i, n_th, std::exp(-2.0 * r));
}

double phase_noise_resonance_e(double n_th, double exp_minus_2r, double gamma_m, double gamma_l,
                               double g0) {
  if (gamma_l > 0.0 && g0 == 0.0)
    throw ValidationError("phase_noise_resonance: g0 = 0 with gamma_l > 0");
  const double heating = gamma_l > 0.0 ? gamma_m * gamma_l / (g0 * g0) : 0.0;
  return (1.0 + 2.0 * n_th + heating) * exp_minus_2r;
}

double phase_noise_resonance(double n_th, double r, double gamma_m, double gamma_l, double g0) {
  return phase_noise_resonance_e(n_th, std::exp(-2.0 * r), gamma_m, gamma_l, g0);
}

Flagged<double> bad_cavity_floor(double kappa, double omega_m) {
  return {kappa * kappa / (32.0 * omega_m * omega_m), kappa <= 0.1 * omega_m};
}

double measurement_enhancement(double n_th, double r) {
  return std::exp(2.0 * r) / (4.0 * (1.0 + 2.0 * n_th));
}

Flagged<double> measurement_enhancement_approx(double n_th, double c) {
  return {c / (1.0 + 2.0 * n_th), c >= 100.0};
}

double measurement_enhancement_ceiling(double kappa, double omega_m) {
  return 8.0 * omega_m * omega_m / (kappa * kappa);
}

double matched_exp_minus_2r(double c) {
  if (!(c >= 1.0)) throw ValidationError("matched_exp_minus_2r: cooperativity below 1");
  // (1 - s)/(1 + s) with s = sqrt(1 - 1/C), written without the 1 - s cancellation.
  const double s = std::sqrt(1.0 - 1.0 / c);
  return (1.0 / c) / ((1.0 + s) * (1.0 + s));
}

}  // namespace optosqueeze::oracle
