#pragma once

// Closed-form expressions for the squeezing schemes. They are independent of
// the linear solvers and serve as their test oracles. Approximate results
// carry a regime flag and refuse (in_regime = false) instead of extrapolating.

#include <complex>

#include "optosqueeze/model.hpp"

namespace optosqueeze::oracle {

template <typename T>
struct Flagged {
  T value;
  bool in_regime;
};

/// 1 / (Omega^2 - w^2 - i w Gamma_M)
Complex chi_m(double omega, const PhysParams& params);

/// Effective coupling squared, G-^2 - G+^2, in cancellation-free form.
double effective_coupling_sq(const DriveConfig& drives);

struct SelfEnergy {
  Complex sigma;
  double re_sigma;
  double kappa_tilde;
};
/// Sigma = -i (G-^2 - G+^2) / (-i w + Gamma_M/2) = Re Sigma - i kappa_tilde / 2.
SelfEnergy self_energy(double omega, const PhysParams& params, const DriveConfig& drives);

/// Dressed cavity susceptibility 1 / (-i w + kappa/2 + i Sigma), kappa = kappa_total.
Complex chi_cav(double omega, const PhysParams& params, const DriveConfig& drives);

/// U1 output noise at resonance relative to shot noise, RWA, any kappa_tilde.
double s_u1_resonance(double kappa, double kappa_tilde, double n_th, double r);
/// Same with e^{-2r} supplied directly.
double s_u1_resonance_e(double kappa, double kappa_tilde, double n_th, double exp_minus_2r);

/// 1 - 16 G^2 / (kappa Omega); regime: kappa <= Omega / 10 and the deficit below 1/2.
Flagged<double> ps_asymptote_resonance(double g, double kappa, double omega_m);

/// Lower bound on the ponderomotive cooperativity for 3 dB near the sideband.
double ps_cmin(double omega_m, double gamma_m, double n_th);
/// Same bound for the dissipative scheme, (1 + 2 n_th) / 2.
double dissipative_cmin(double n_th);

struct StrongCoupling {
  bool condition;     // 8 g^2 >= kappa^2 + Gamma_M^2
  double omega_plus;  // location of the positive-frequency minimum
  double s_min;       // r -> infinity limit of S_U1 / S_SN at omega_+-
  bool s_min_valid;   // s_min in [0, 1]
};
/// g is the effective coupling sqrt(G-^2 - G+^2).
StrongCoupling strong_coupling(const PhysParams& params, double g);

double lossy_resonance(double kappa_o, double kappa_i, double n_th, double r);
double lossy_resonance_e(double kappa_o, double kappa_i, double n_th, double exp_minus_2r);

/// (1 + 2 n_th + Gamma_M Gamma_L / g0^2) e^{-2r}
double phase_noise_resonance(double n_th, double r, double gamma_m, double gamma_l, double g0);
double phase_noise_resonance_e(double n_th, double exp_minus_2r, double gamma_m, double gamma_l,
                               double g0);

/// kappa^2 / (32 Omega^2); regime: kappa <= Omega / 10.
Flagged<double> bad_cavity_floor(double kappa, double omega_m);

/// Gamma_meas / Gamma_meas^lc = e^{2r} / (4 (1 + 2 n_th)).
double measurement_enhancement(double n_th, double r);
/// Large-C form C / (1 + 2 n_th); regime: C >= 100.
Flagged<double> measurement_enhancement_approx(double n_th, double c);
/// Bad-cavity saturation of the enhancement, 8 Omega^2 / kappa^2.
double measurement_enhancement_ceiling(double kappa, double omega_m);

/// e^{-2r} under impedance matching at cooperativity C >= 1.
double matched_exp_minus_2r(double c);

}  // namespace optosqueeze::oracle
