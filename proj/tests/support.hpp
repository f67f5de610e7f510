#pragma once

#include <cmath>

#include "optosqueeze/model.hpp"

namespace support {

using namespace optosqueeze;

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// Matched dissipative drives at cooperativity c.
inline DriveConfig matched(const PhysParams& p, double c, Scheme scheme = Scheme::Dissipative) {
  DriveConfig d = matched_drives(p, coupling_for_cooperativity(p, c));
  d.scheme = scheme;
  return d;
}

/// Drives with effective coupling g and squeeze parameter r: G- = g cosh r, G+ = g sinh r.
/// G+ is formed as G- - g e^{-r} so that the difference G- - G+ carries no cancellation.
inline DriveConfig squeezed(double g, double r, Scheme scheme = Scheme::Dissipative) {
  DriveConfig d;
  d.scheme = scheme;
  d.g_minus = g * std::cosh(r);
  d.g_plus = r == 0.0 ? 0.0 : d.g_minus - g * std::exp(-r);
  return d;
}

/// Drives with kappa_tilde[0] = ratio * kappa_total and squeeze parameter r.
inline DriveConfig with_kappa_tilde(const PhysParams& p, double ratio, double r,
                                    Scheme scheme = Scheme::Dissipative) {
  const double g = std::sqrt(ratio * p.kappa_total() * p.gamma_m / 4.0);
  return squeezed(g, r, scheme);
}

}  // namespace support
