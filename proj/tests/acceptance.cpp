// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "optosqueeze/error.hpp"
#include "optosqueeze/floquet.hpp"
#include "optosqueeze/linres.hpp"
#include "optosqueeze/model.hpp"
#include "optosqueeze/optimize.hpp"
#include "optosqueeze/oracle.hpp"
#include "optosqueeze/scenario.hpp"
#include "optosqueeze/sweep.hpp"
#include "support.hpp"

namespace os = optosqueeze;
using support::rel_diff;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (detail.tellp() > 0) detail << "; ";
    detail << (ok ? "" : "FAILED ") << what;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome out;
  try {
    body(out);
  } catch (const std::exception& e) {
    out.check(false, std::string("exception: ") + e.what());
  }
  if (!out.pass) ++failures;
  std::printf("%s [%2d] %s: %s\n", out.pass ? "PASS" : "FAIL", id, title.c_str(),
              out.detail.str().c_str());
  std::fflush(stdout);
}

os::PhysParams good_cavity(double n_th) {
  os::PhysParams p;
  p.kappa_out = 1.0;
  p.omega_m = 10.0;
  p.gamma_m = 2e-5;
  p.n_th = n_th;
  return p;
}

os::SolverConfig floquet_solver() {
  os::SolverConfig s;
  s.kind = os::Solver::Floquet;
  return s;
}

void shot_noise_baseline(Outcome& out) {
  os::PhysParams p;
  p.omega_m = 1.0;
  p.kappa_out = 0.3;
  p.gamma_m = 1e-2;
  p.n_th = 10.0;
  p.g0 = 1e-3;
  p.gamma_l = 0.5;
  const auto omegas = os::linear_grid(-5.0 * p.omega_m, 5.0 * p.omega_m, 200);

  double worst = 0.0;
  auto scan = [&](const std::function<os::SpectrumPoint(double)>& f) {
    for (double w : omegas) {
      const auto s = f(w);
      worst = std::max({worst, std::abs(s.s_u1 - 0.5), std::abs(s.s_u2 - 0.5), std::abs(s.s_u12)});
    }
  };
  os::DriveConfig zero;
  for (os::Scheme scheme : {os::Scheme::Dissipative, os::Scheme::DissipativePhaseNoise,
                            os::Scheme::Measurement}) {
    zero.scheme = scheme;
    const os::LtiModel m = os::build_model(p, zero);
    scan([&](double w) { return os::spectrum_point(m, w); });
    if (scheme == os::Scheme::DissipativePhaseNoise) continue;
    const os::FloquetModel fm = os::lift(m, p, zero);
    scan([&](double w) { return os::floquet_spectrum(fm, w); });
  }
  os::PhysParams lossy = p;
  lossy.kappa_out = 0.2;
  lossy.kappa_int = 0.1;
  zero.scheme = os::Scheme::DissipativeLossy;
  const os::LtiModel m = os::build_lossy(lossy, zero);
  scan([&](double w) { return os::spectrum_point(m, w); });
  out.check(worst <= 1e-12, "max |S - S_SN|, |S_U1U2| over 4 schemes, RWA and Floquet = " +
                                fmt(worst) + " (tol 1e-12)");
}

void resonance_equivalence(Outcome& out) {
  double worst = 0.0;
  int cases = 0;
  for (double ratio : {0.25, 0.5, 1.0, 2.0, 4.0})
    for (double r : {0.0, 1.0, 3.0})
      for (double n_th : {0.0, 10.0}) {
        os::PhysParams p = good_cavity(n_th);
        p.gamma_m = 1e-3;
        const os::DriveConfig d = support::with_kappa_tilde(p, ratio, r);
        const double kt = os::oracle::self_energy(0.0, p, d).kappa_tilde;
        const double expected =
            os::oracle::s_u1_resonance(p.kappa_total(), kt, n_th, r);
        const double got = os::spectrum_point(os::build_dissipative(p, d), 0.0).s_u1 / os::kShotNoise;
        worst = std::max(worst, rel_diff(got, expected));
        ++cases;
      }
  out.check(worst < 1e-9, std::to_string(cases) + " cases, max rel diff " + fmt(worst) +
                              " (tol 1e-9)");
}

void matched_squeezing(Outcome& out) {
  const os::PhysParams p = good_cavity(10.0);
  const os::DriveConfig d = support::matched(p, 1e5);
  const double e2r = os::squeeze_parameter(d.g_plus, d.g_minus).exp_minus_2r;
  const double ratio = os::spectrum_point(os::build_dissipative(p, d), 0.0).s_u1 / os::kShotNoise;
  const double expected = 21.0 * e2r;
  out.check(std::abs(ratio / expected - 1.0) <= 1e-3,
            "S_U1[0]/S_SN = " + fmt(ratio) + ", 21 e^{-2r} = " + fmt(expected) + " (rel tol 1e-3)");
  out.check(std::abs(ratio / 5.25e-5 - 1.0) <= 1e-3, "vs 5.25e-5");
}

void purity(Outcome& out) {
  const os::PhysParams p = good_cavity(10.0);
  const auto pt = os::spectrum_point(os::build_dissipative(p, support::matched(p, 1e5)), 0.0);
  out.check(pt.n_eff.has_value(), "n_eff defined at omega = 0");
  if (pt.n_eff) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "n_eff[0] = %.12f (abs tol 1e-9)", *pt.n_eff);
    out.check(std::abs(*pt.n_eff - 10.0) <= 1e-9, buf);
  }
}

void strong_coupling(Outcome& out) {
  os::PhysParams p;
  p.kappa_out = 1.0;
  p.gamma_m = 0.1;
  p.omega_m = 100.0;
  const auto oracle = os::oracle::strong_coupling(p, 0.5);
  for (double r : {5.0, 8.0}) {
    for (double n_th : {0.0, 10.0}) {
      p.n_th = n_th;
      const os::LtiModel m = os::build_dissipative(p, support::squeezed(0.5, r));
      auto f = [&](double w) { return os::spectrum_point(m, w); };
      const auto pos = os::band_minimum(f, os::Quadrature::U1, 0.05, 1.5);
      const auto neg = os::band_minimum(f, os::Quadrature::U1, -1.5, -0.05);
      const bool ok = std::abs(pos.omega - 0.351781) <= 1e-4 && std::abs(neg.omega + 0.351781) <= 1e-4;
      out.check(ok, "r=" + fmt(r) + " n_th=" + fmt(n_th) + " minima at " + fmt(neg.omega) + ", " +
                        fmt(pos.omega));
      if (r == 8.0 && n_th == 0.0) {
        const double s_min = pos.value / os::kShotNoise;
        out.check(std::abs(s_min / 0.585508 - 1.0) <= 0.01,
                  "S_min(r=8)/S_SN = " + fmt(s_min) + " vs 0.585508 (1%), closed form " +
                      fmt(oracle.s_min));
      }
    }
  }
  out.check(std::abs(oracle.omega_plus - 0.351781) <= 1e-4, "closed-form omega_+ " + fmt(oracle.omega_plus));

  os::PhysParams q;
  q.kappa_out = 1.0;
  q.gamma_m = 1.0;
  q.omega_m = 100.0;
  q.n_th = 0.0;
  const os::LtiModel m = os::build_dissipative(q, support::squeezed(1.0, 8.0));
  const auto best = os::band_minimum([&](double w) { return os::spectrum_point(m, w); },
                                     os::Quadrature::U1, 0.0, 3.0);
  const double s = best.value / os::kShotNoise;
  out.check(s < 1e-6, "Gamma_M = kappa, g = 1, n_th = 0, r = 8: S_min/S_SN = " + fmt(s) + " at " +
                          fmt(best.omega) + " (< 1e-6)");
}

void ponderomotive(Outcome& out) {
  os::PhysParams p;
  p.kappa_out = 1.0;
  p.omega_m = 10.0;
  p.gamma_m = 1e-4;
  p.n_th = 0.0;
  os::DriveConfig d;
  d.scheme = os::Scheme::Ponderomotive;
  d.g_minus = 0.1;
  const os::LtiModel m = os::build_ponderomotive(p, d);

  std::vector<double> omegas = os::linear_grid(-2.0 * p.omega_m, 2.0 * p.omega_m, 2001);
  for (double w : os::linear_grid(p.omega_m - 50 * p.gamma_m, p.omega_m + 50 * p.gamma_m, 1001)) {
    omegas.push_back(w);
    omegas.push_back(-w);
  }
  double dev = 0.0, peak = 0.0;
  for (double w : omegas) {
    const auto s = os::spectrum_point(m, w);
    dev = std::max(dev, std::abs(s.s_u1 - 0.5));
    peak = std::max(peak, std::abs(s.s_u12));
  }
  out.check(dev <= 1e-12, "max |S_U1 - 1/2| = " + fmt(dev));
  const double at_plus = std::abs(os::spectrum_point(m, p.omega_m).s_u12);
  const double at_minus = std::abs(os::spectrum_point(m, -p.omega_m).s_u12);
  out.check(std::max(at_plus, at_minus) <= 1e-10 * peak,
            "|S_U1U2[+-Omega]|/peak = " + fmt(std::max(at_plus, at_minus) / peak));
  const double deficit = 1.0 - os::spectrum_point(m, 0.0).s_opt / os::kShotNoise;
  const double expected = 16.0 * 0.1 * 0.1 / (1.0 * 10.0);
  out.check(std::abs(deficit / expected - 1.0) <= 0.1,
            "deficit " + fmt(deficit) + " vs 16G^2/(kappa Omega) = " + fmt(expected) + " (10%)");
}

void floquet_limits(Outcome& out) {
  {
    os::PhysParams p = good_cavity(10.0);
    p.omega_m = 1e3;
    const double c = 1e3;
    const os::DriveConfig d = support::matched(p, c);
    const os::LtiModel m = os::build_dissipative(p, d);
    const double rwa = os::spectrum_point(m, 0.0).s_u1;
    const double fl = os::floquet_spectrum(os::lift(m, p, d), 0.0).s_u1;
    const double diff = rel_diff(fl, rwa);
    out.check(diff < 1e-4, "kappa/Omega = 1e-3, C = 1e3: rel diff " + fmt(diff) + " (tol 1e-4)");
  }
  {
    os::PhysParams p = good_cavity(10.0);
    p.omega_m = 20.0;
    const os::DriveConfig d = support::matched(p, 1e7);
    const os::LtiModel m = os::build_dissipative(p, d);
    const double fl = os::floquet_spectrum(os::lift(m, p, d), 0.0).s_u1 / os::kShotNoise;
    const double floor = os::oracle::bad_cavity_floor(1.0, 20.0).value;
    out.check(std::abs(fl / floor - 1.0) <= 0.25,
              "kappa/Omega = 0.05, C = 1e7: S_U1[0]/S_SN = " + fmt(fl) + " vs " + fmt(floor) +
                  " (25%)");
  }
}

os::DriveConfig measurement_drives(const os::PhysParams& p, double c, double c0) {
  os::DriveConfig d = support::matched(p, c, os::Scheme::Measurement);
  d.g_zero = os::coupling_for_cooperativity(p, c0);
  d.a_zero = 1.0;
  return d;
}

void measurement(Outcome& out) {
  const os::PhysParams p = [] {
    os::PhysParams q;
    q.omega_m = 1.0;
    q.kappa_out = 0.05;
    q.gamma_m = 2e-6;
    q.n_th = 10.0;
    return q;
  }();
  double worst = 0.0;
  for (double c : {1e2, 1e3, 1e4}) {
    const os::DriveConfig d = measurement_drives(p, c, 1e-3);
    const double got = os::measurement_enhancement(p, d, os::SolverConfig{});
    const double r = os::squeeze_parameter(d.g_plus, d.g_minus).r;
    worst = std::max(worst, rel_diff(got, std::exp(2.0 * r) / 84.0));
  }
  out.check(worst <= 1e-6, "RWA vs e^{2r}/84 at C = 1e2, 1e3, 1e4: max rel diff " + fmt(worst));

  bool converged = true;
  const double e6 = os::measurement_enhancement(p, measurement_drives(p, 1e6, 1e-3), floquet_solver(),
                                                &converged);
  const double ceiling = os::oracle::measurement_enhancement_ceiling(0.05, 1.0);
  out.check(converged && e6 >= ceiling / 2.0 && e6 <= ceiling * 2.0,
            "Floquet C = 1e6, C0 = 1e-3: " + fmt(e6) + " vs 8 Omega^2/kappa^2 = " + fmt(ceiling) +
                " (factor 2)");

  const auto cs = os::log_grid(1.0, 1e7, 29);
  std::vector<double> values(cs.size());
  os::for_each_index(cs.size(), os::Execution::Parallel, [&](std::size_t i) {
    values[i] = os::measurement_enhancement(p, measurement_drives(p, cs[i], 1.0), floquet_solver());
  });
  const auto top = std::max_element(values.begin(), values.end());
  const auto k = static_cast<std::size_t>(top - values.begin());
  const bool interior = k > 0 && k + 1 < values.size() && *top > values.front() && *top > values.back();
  out.check(interior, "C0 = 1: maximum " + fmt(*top) + " at C = " + fmt(cs[k]) + ", ends " +
                          fmt(values.front()) + " / " + fmt(values.back()));
}

void lossy(Outcome& out) {
  double worst = 0.0, worst_r8 = 0.0;
  for (double ki : {0.0, 0.25, 0.5, 1.0})
    for (double r : {0.0, 2.0, 8.0})
      for (double n_th : {0.0, 10.0}) {
        os::PhysParams p = good_cavity(n_th);
        p.kappa_out = 1.0 - ki;
        p.kappa_int = ki;
        os::DriveConfig d = support::with_kappa_tilde(p, 1.0, r, os::Scheme::DissipativeLossy);
        const double got = os::spectrum_point(os::build_lossy(p, d), 0.0).s_u1 / os::kShotNoise;
        const double expected = os::oracle::lossy_resonance(p.kappa_out, ki, n_th, r);
        worst = std::max(worst, rel_diff(got, expected));
        if (r == 8.0 && n_th == 0.0)
          worst_r8 = std::max(worst_r8, std::abs(got - (ki + (1.0 - ki) * 1.12e-7)));
      }
  out.check(worst < 1e-9, "24 cases, max rel diff " + fmt(worst) + " (tol 1e-9)");
  out.check(worst_r8 <= 1e-6, "r = 8, n_th = 0 vs kappa_I/kappa + (kappa_O/kappa) 1.12e-7: max abs diff " +
                                  fmt(worst_r8));
}

void phase_noise(Outcome& out) {
  double worst = 0.0;
  int cases = 0;
  for (double x : {0.0, 1.0, 21.0})
    for (double n_th : {0.0, 10.0})
      for (double r : {0.0, 2.0}) {
        os::PhysParams p = good_cavity(n_th);
        p.g0 = 1e-3;
        p.gamma_l = x * p.g0 * p.g0 / p.gamma_m;
        const os::DriveConfig d =
            support::with_kappa_tilde(p, 1.0, r, os::Scheme::DissipativePhaseNoise);
        const double got =
            os::spectrum_point(os::build_phase_noise(p, d), 0.0).s_u1 / os::kShotNoise;
        const double expected =
            os::oracle::phase_noise_resonance(n_th, r, p.gamma_m, p.gamma_l, p.g0);
        worst = std::max(worst, rel_diff(got, expected));
        ++cases;
      }
  out.check(worst < 1e-9, std::to_string(cases) + " cases, max rel diff " + fmt(worst) +
                              " (tol 1e-9)");
}

void thresholds(Outcome& out) {
  os::ThresholdProblem diss;
  diss.params = good_cavity(10.0);
  const auto t = os::threshold_cooperativity(diss, 0.5);
  out.check(std::abs(t.cooperativity - 11.006) <= 0.01,
            "dissipative 3 dB: C = " + fmt(t.cooperativity) + " (11.006 +- 0.01, bound " +
                fmt(os::oracle::dissipative_cmin(10.0)) + ")");

  os::ThresholdProblem ps = diss;
  ps.scheme = os::Scheme::Ponderomotive;
  ps.metric = os::ThresholdMetric::Sideband;
  const double bound = os::oracle::ps_cmin(10.0, 2e-5, 10.0);
  const auto near = os::threshold_cooperativity(ps, 0.5);
  ps.metric = os::ThresholdMetric::Resonance;
  std::string resonance_note;
  try {
    resonance_note = fmt(os::threshold_cooperativity(ps, 0.5).cooperativity);
  } catch (const std::exception& e) {
    resonance_note = std::string("n/a (") + e.what() + ")";
  }
  const double factor = near.cooperativity / bound;
  out.check(factor >= 0.5 && factor <= 2.0,
            "ponderomotive near-sideband 3 dB: C = " + fmt(near.cooperativity) + " vs ps_cmin " +
                fmt(bound) + " (factor " + fmt(factor) + ", need within 2); at omega = 0: C = " +
                resonance_note);
}

}  // namespace

int main() {
  criterion(1, "shot-noise baseline", shot_noise_baseline);
  criterion(2, "resonance formula equivalence", resonance_equivalence);
  criterion(3, "matched squeezing", matched_squeezing);
  criterion(4, "output purity", purity);
  criterion(5, "strong coupling", strong_coupling);
  criterion(6, "ponderomotive squeezing", ponderomotive);
  criterion(7, "Floquet RWA limit and bad-cavity floor", floquet_limits);
  criterion(8, "measurement enhancement", measurement);
  criterion(9, "internal cavity loss", lossy);
  criterion(10, "laser phase noise", phase_noise);
  criterion(11, "squeezing thresholds", thresholds);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
