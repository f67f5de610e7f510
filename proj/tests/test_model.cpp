#include <doctest.h>

#include <cmath>
#include <random>

#include "optosqueeze/error.hpp"
#include "optosqueeze/linres.hpp"
#include "optosqueeze/model.hpp"
#include "support.hpp"

using namespace optosqueeze;

namespace {

PhysParams base() {
  PhysParams p;
  p.kappa_out = 1.0;
  p.gamma_m = 0.1;
  p.omega_m = 10.0;
  return p;
}

}  // namespace

TEST_CASE("uncoupled drift decays at kappa/2 and gamma_m/2") {
  const LtiModel m = build_dissipative(base(), DriveConfig{});
  const Eigen::Vector4cd ev = m.drift().eigenvalues();
  std::vector<double> re;
  for (int i = 0; i < 4; ++i) {
    re.push_back(ev[i].real());
    CHECK(std::abs(ev[i].imag()) < 1e-15);
  }
  std::sort(re.begin(), re.end());
  CHECK(re[0] == doctest::Approx(-0.5));
  CHECK(re[1] == doctest::Approx(-0.5));
  CHECK(re[2] == doctest::Approx(-0.05));
  CHECK(re[3] == doctest::Approx(-0.05));
  CHECK(m.drift()(kU1, kX1) == 0.0);
  CHECK(m.drift()(kX2, kU2) == 0.0);
}

TEST_CASE("equal sideband couplings leave U1 undriven by the mechanics") {
  DriveConfig d;
  d.g_minus = d.g_plus = 0.3;
  const LtiModel m = build_dissipative(base(), d);
  CHECK(m.drift()(kU1, kX1) == 0.0);
  CHECK(m.drift()(kU1, kX2) == 0.0);
  CHECK(m.drift()(kX1, kU2) == 0.0);
  CHECK(m.drift()(kX2, kU2) == 0.0);
  CHECK(m.drift()(kX2, kU1) == doctest::Approx(0.6));
  CHECK(stability_check(m) == Stability::Stable);
}

TEST_CASE("matched example couplings give kappa_tilde = kappa") {
  const PhysParams p = base();
  DriveConfig d;
  d.g_minus = 0.5;
  d.g_plus = std::sqrt(0.25 - 0.025);
  CHECK(4.0 * (d.g_minus * d.g_minus - d.g_plus * d.g_plus) / p.gamma_m == doctest::Approx(1.0));
  CHECK(impedance_match(p, 0.5) == doctest::Approx(0.474341649).epsilon(1e-9));
}

TEST_CASE("matched pairs reproduce the match to rounding") {
  PhysParams p;
  p.kappa_out = 1.0;
  p.gamma_m = 2e-5;
  for (double c : {1.0, 1.5, 11.0, 1e3, 1e5, 1e7, 1e9}) {
    const double g = coupling_for_cooperativity(p, c);
    const DriveConfig d = matched_drives(p, g);
    const double ratio =
        4.0 * (d.g_minus - d.g_plus) * (d.g_minus + d.g_plus) / (p.kappa_total() * p.gamma_m);
    CHECK(std::abs(ratio - 1.0) < 1e-14);
    CHECK(std::abs(d.g_minus / g - 1.0) < 1e-15 * c + 1e-15);
    CHECK(d.g_plus <= d.g_minus);
  }
}

TEST_CASE("impedance_match") {
  PhysParams p;
  p.kappa_out = 1.0;
  p.gamma_m = 2e-5;
  SUBCASE("boundary C = 1") {
    const double g = coupling_for_cooperativity(p, 1.0);
    CHECK(impedance_match(p, g) == 0.0);
    CHECK(squeeze_parameter(0.0, g).r == 0.0);
  }
  SUBCASE("kappa gamma / 4 = 1, g- = 2") {
    PhysParams q;
    q.kappa_out = 4.0;
    q.gamma_m = 1.0;
    CHECK(impedance_match(q, 2.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  }
  SUBCASE("figure parameters") {
    const double g = coupling_for_cooperativity(p, 1e5);
    CHECK(g == doctest::Approx(0.7071067811865476).epsilon(1e-14));
    CHECK(impedance_match(p, g) == doctest::Approx(g * std::sqrt(1.0 - 1e-5)).epsilon(1e-14));
  }
  SUBCASE("C below 1 is unmatchable and reports the minimal coupling") {
    const double g = coupling_for_cooperativity(p, 0.5);
    try {
      impedance_match(p, g);
      FAIL("expected UnmatchableError");
    } catch (const UnmatchableError& e) {
      CHECK(e.minimal_g_minus() == doctest::Approx(coupling_for_cooperativity(p, 1.0)));
    }
  }
}

TEST_CASE("squeeze_parameter") {
  CHECK(squeeze_parameter(0.0, 1.0).r == 0.0);
  CHECK(squeeze_parameter(std::tanh(1.0), 1.0).r == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(squeeze_parameter(1.0 - 9e-5, 1.0).r == doctest::Approx(5.0).epsilon(1e-3));
  const auto sq = squeeze_parameter(0.3, 0.7);
  CHECK(sq.exp_minus_2r == doctest::Approx(std::exp(-2.0 * sq.r)).epsilon(1e-14));
  CHECK_THROWS_AS(squeeze_parameter(1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(squeeze_parameter(2.0, 1.0), ValidationError);
}

TEST_CASE("cooperativity and its inverse") {
  const PhysParams p = base();
  CHECK(cooperativity(p, 0.0) == 0.0);
  CHECK(cooperativity(p, 0.5) == doctest::Approx(10.0));
  PhysParams q;
  q.kappa_out = 1.0;
  q.gamma_m = 2e-5;
  CHECK(cooperativity(q, coupling_for_cooperativity(q, 10.5)) == doctest::Approx(10.5).epsilon(1e-14));
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> exponent(-3.0, 8.0);
  for (int i = 0; i < 50; ++i) {
    const double c = std::pow(10.0, exponent(rng));
    CHECK(cooperativity(q, coupling_for_cooperativity(q, c)) == doctest::Approx(c).epsilon(1e-13));
  }
}

TEST_CASE("stability classification") {
  const PhysParams p = base();
  DriveConfig d;
  d.g_minus = 0.4;
  d.g_plus = 0.2;
  CHECK(stability_check(build_dissipative(p, d)) == Stability::Stable);
  d.g_plus = 0.4;
  CHECK(stability_check(build_dissipative(p, d)) == Stability::Stable);
  CHECK(spectral_abscissa(build_dissipative(p, d).drift()) == doctest::Approx(-0.05));
  d.g_plus = 0.5;
  CHECK_THROWS_AS(build_dissipative(p, d), ValidationError);

  SUBCASE("hand-built drift with a growing mode") {
    const LtiModel good = build_dissipative(p, DriveConfig{});
    Matrix4d drift = good.drift();
    drift(kX1, kX1) = 0.2;
    const LtiModel bad(good.scheme(), drift, good.in_map(), good.channel_rates(),
                       good.channel_labels(), good.noise_corr(), good.out_rows(),
                       good.feedthrough(), good.output_rate());
    CHECK(stability_check(bad) == Stability::Unstable);
    drift(kX1, kX1) = 0.0;
    drift(kX2, kX2) = 0.0;
    const LtiModel marginal(good.scheme(), drift, good.in_map(), good.channel_rates(),
                            good.channel_labels(), good.noise_corr(), good.out_rows(),
                            good.feedthrough(), good.output_rate());
    CHECK(stability_check(marginal) == Stability::Marginal);
  }
}

TEST_CASE("random matched couplings are stable") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    PhysParams p;
    p.kappa_out = std::pow(10.0, -1.0 + 2.0 * u(rng));
    p.gamma_m = std::pow(10.0, -6.0 + 5.0 * u(rng));
    p.omega_m = 10.0;
    p.n_th = 20.0 * u(rng);
    const double c = std::pow(10.0, 7.0 * u(rng));
    const DriveConfig d = support::matched(p, c);
    CHECK(stability_check(build_dissipative(p, d)) == Stability::Stable);
  }
}

TEST_CASE("parameter validation names the field") {
  PhysParams p = base();
  p.gamma_m = -1.0;
  try {
    p.validate();
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("gamma_m") != std::string::npos);
  }
  p = base();
  p.kappa_out = std::nan("");
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = base();
  p.n_th = -0.1;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = base();
  p.kappa_int = 0.1;
  CHECK_THROWS_AS(build_dissipative(p, DriveConfig{}), ValidationError);

  DriveConfig d;
  d.g_minus = -0.1;
  CHECK_THROWS_AS(build_dissipative(base(), d), ValidationError);
  d.g_minus = 0.0;
  CHECK_THROWS_AS(build_ponderomotive(base(), d), ValidationError);
  p = base();
  p.gamma_l = 1.0;
  CHECK_THROWS_AS(build_phase_noise(p, DriveConfig{}), ValidationError);
}

TEST_CASE("scheme names round-trip") {
  for (Scheme s : {Scheme::Dissipative, Scheme::Ponderomotive, Scheme::Measurement,
                   Scheme::DissipativeLossy, Scheme::DissipativePhaseNoise})
    CHECK(parse_scheme(to_string(s)) == s);
  CHECK_THROWS_AS(parse_scheme("kerr"), ValidationError);
}

TEST_CASE("lossy builder without internal loss reduces to the dissipative model") {
  PhysParams p = base();
  p.n_th = 3.0;
  DriveConfig d = support::squeezed(0.2, 1.5);
  const LtiModel a = build_dissipative(p, d);
  d.scheme = Scheme::DissipativeLossy;
  const LtiModel b = build_lossy(p, d);
  CHECK((a.drift() - b.drift()).norm() == 0.0);
  for (double w : {-1.0, 0.0, 0.3, 10.0}) {
    const auto sa = spectrum_point(a, w);
    const auto sb = spectrum_point(b, w);
    CHECK(sa.s_u1 == doctest::Approx(sb.s_u1).epsilon(1e-13));
    CHECK(sa.s_u2 == doctest::Approx(sb.s_u2).epsilon(1e-13));
  }
}

TEST_CASE("lossy builder with a closed output port sees pure vacuum") {
  PhysParams p = base();
  p.kappa_out = 0.0;
  p.kappa_int = 1.0;
  p.n_th = 10.0;
  DriveConfig d = support::squeezed(0.2, 2.0, Scheme::DissipativeLossy);
  const LtiModel m = build_lossy(p, d);
  for (double w : {-2.0, 0.0, 0.05, 1.0}) {
    const auto s = spectrum_point(m, w);
    CHECK(s.s_u1 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(s.s_u2 == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("phase-noise builder without laser noise matches the dissipative model") {
  PhysParams p = base();
  p.n_th = 2.0;
  p.g0 = 1e-3;
  DriveConfig d = support::squeezed(0.2, 1.0);
  const LtiModel a = build_dissipative(p, d);
  d.scheme = Scheme::DissipativePhaseNoise;
  const LtiModel b = build_phase_noise(p, d);
  for (double w : {-0.5, 0.0, 0.2}) {
    CHECK(spectrum_point(a, w).s_u1 == doctest::Approx(spectrum_point(b, w).s_u1).epsilon(1e-13));
  }
}

TEST_CASE("measurement drive") {
  PhysParams p = base();
  DriveConfig d = support::squeezed(0.1, 1.0, Scheme::Measurement);
  d.g_zero = 0.01;
  d.a_zero = 0.0;
  const MeasurementModel none = build_measurement(p, d, MeasurementSignal{1.0});
  CHECK(none.drive.force().norm() == 0.0);
  d.a_zero = 0.3;
  const MeasurementModel off = build_measurement(p, d, MeasurementSignal{0.0});
  CHECK(off.drive.force().norm() == 0.0);

  d.a_zero = 0.0;
  DriveConfig plain = d;
  plain.scheme = Scheme::Dissipative;
  plain.g_zero = 0.0;
  const auto a = spectrum_point(build_dissipative(p, plain), 0.1);
  const auto b = spectrum_point(none.model, 0.1);
  CHECK(a.s_u1 == doctest::Approx(b.s_u1).epsilon(1e-13));
}

TEST_CASE("noise correlators are Hermitian positive semidefinite") {
  PhysParams p = base();
  p.n_th = 5.0;
  p.g0 = 1e-2;
  p.gamma_l = 0.3;
  DriveConfig d = support::squeezed(0.2, 0.5, Scheme::DissipativePhaseNoise);
  const LtiModel m = build_phase_noise(p, d);
  const Eigen::MatrixXcd& n = m.noise_corr();
  CHECK((n - n.adjoint()).norm() < 1e-14);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(n);
  CHECK(es.eigenvalues().minCoeff() > -1e-14);
  CHECK(m.channel_count() == static_cast<int>(m.channel_labels().size()));
}
