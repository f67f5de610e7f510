#include "optosqueeze/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>

#include "optosqueeze/error.hpp"

namespace optosqueeze {
namespace {

std::string describe(const char* field, double value, const char* requirement) {
  std::ostringstream os;
  os.precision(17);
  os << field << " = " << value << " " << requirement;
  return os.str();
}

bool finite(double x) { return std::isfinite(x); }

// Input channels collected while building a model. Quantum channels come in
// conjugate quadrature pairs with the 2x2 correlator [[s, i/2], [-i/2, s]].
class ChannelSet {
 public:
  void add_pair(std::string_view first, std::string_view second, int first_target,
                int second_target, double rate, double symmetric_part, bool observed) {
    const int j = static_cast<int>(entries_.size());
    entries_.push_back({std::string(first), first_target, rate, observed});
    entries_.push_back({std::string(second), second_target, rate, observed});
    corr_.push_back({j, j, Complex(symmetric_part, 0.0)});
    corr_.push_back({j + 1, j + 1, Complex(symmetric_part, 0.0)});
    corr_.push_back({j, j + 1, Complex(0.0, 0.5)});
    corr_.push_back({j + 1, j, Complex(0.0, -0.5)});
  }

  // Classical white force with power spectral density `psd` on one state component.
  void add_classical(std::string_view label, int target, double psd) {
    const int j = static_cast<int>(entries_.size());
    entries_.push_back({std::string(label), target, psd, false});
    corr_.push_back({j, j, Complex(1.0, 0.0)});
  }

  LtiModel finish(Scheme scheme, const Matrix4d& drift, double output_rate) const {
    const int n = static_cast<int>(entries_.size());
    InputMap in_map = InputMap::Zero(4, n);
    Feedthrough feed = Feedthrough::Zero(2, n);
    std::vector<double> rates;
    std::vector<std::string> labels;
    for (int j = 0; j < n; ++j) {
      const Entry& e = entries_[j];
      in_map(e.target, j) = std::sqrt(e.rate);
      // U_out = sqrt(kappa_out) U - U_in on the observed port only.
      if (e.observed) feed(e.target == kU1 ? 0 : 1, j) = -1.0;
      rates.push_back(e.rate);
      labels.push_back(e.label);
    }
    Eigen::MatrixXcd noise = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& c : corr_) noise(c.row, c.col) = c.value;

    OutputRows out = OutputRows::Zero();
    out(0, kU1) = std::sqrt(output_rate);
    out(1, kU2) = std::sqrt(output_rate);
    return LtiModel(scheme, drift, std::move(in_map), std::move(rates), std::move(labels),
                    std::move(noise), out, std::move(feed), output_rate);
  }

 private:
  struct Entry {
    std::string label;
    int target;
    double rate;
    bool observed;
  };
  struct Corr {
    int row;
    int col;
    Complex value;
  };
  std::vector<Entry> entries_;
  std::vector<Corr> corr_;
};

void require_scheme(const DriveConfig& drives, std::initializer_list<Scheme> allowed,
                    std::string_view builder) {
  if (std::find(allowed.begin(), allowed.end(), drives.scheme) == allowed.end()) {
    throw ValidationError(std::string(builder) + ": scheme " +
                          std::string(to_string(drives.scheme)) + " not accepted");
  }
}

void validate_sideband_drives(const DriveConfig& drives) {
  if (!finite(drives.g_minus) || drives.g_minus < 0.0)
    throw ValidationError(describe("g_minus", drives.g_minus, "must be finite and >= 0"));
  if (!finite(drives.g_plus) || drives.g_plus < 0.0)
    throw ValidationError(describe("g_plus", drives.g_plus, "must be finite and >= 0"));
  if (drives.g_plus > drives.g_minus) {
    std::ostringstream os;
    os.precision(17);
    os << "unstable drives: g_plus = " << drives.g_plus << " exceeds g_minus = "
       << drives.g_minus;
    throw ValidationError(os.str());
  }
}

// RWA drift of the squeezing Hamiltonian H_S with cavity decay `kappa`.
Matrix4d dissipative_drift(double kappa, double gamma_m, double g_minus, double g_plus) {
  const double diff = g_minus - g_plus;
  const double sum = g_minus + g_plus;
  Matrix4d a = Matrix4d::Zero();
  a(kU1, kU1) = -0.5 * kappa;
  a(kU1, kX2) = -diff;
  a(kX2, kU1) = sum;
  a(kX2, kX2) = -0.5 * gamma_m;
  a(kU2, kU2) = -0.5 * kappa;
  a(kU2, kX1) = sum;
  a(kX1, kU2) = -diff;
  a(kX1, kX1) = -0.5 * gamma_m;
  return a;
}

ChannelSet dissipative_channels(const PhysParams& p, bool split_internal) {
  ChannelSet channels;
  const double observed = split_internal ? p.kappa_out : p.kappa_total();
  channels.add_pair("U1_in", "U2_in", kU1, kU2, observed, 0.5, true);
  if (split_internal) channels.add_pair("U1_int", "U2_int", kU1, kU2, p.kappa_int, 0.5, false);
  channels.add_pair("X1_in", "X2_in", kX1, kX2, p.gamma_m, 0.5 * (1.0 + 2.0 * p.n_th), false);
  return channels;
}

void validate_dissipative(const PhysParams& params, const DriveConfig& drives) {
  params.validate();
  validate_sideband_drives(drives);
}

}  // namespace

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Dissipative: return "Dissipative";
    case Scheme::Ponderomotive: return "Ponderomotive";
    case Scheme::Measurement: return "Measurement";
    case Scheme::DissipativeLossy: return "DissipativeLossy";
    case Scheme::DissipativePhaseNoise: return "DissipativePhaseNoise";
  }
  return "?";
}

Scheme parse_scheme(std::string_view text) {
  std::string key;
  for (char c : text)
    if (c != '_' && c != '-') key.push_back(static_cast<char>(std::tolower(c)));
  if (key == "dissipative") return Scheme::Dissipative;
  if (key == "ponderomotive" || key == "ps") return Scheme::Ponderomotive;
  if (key == "measurement") return Scheme::Measurement;
  if (key == "dissipativelossy" || key == "lossy") return Scheme::DissipativeLossy;
  if (key == "dissipativephasenoise" || key == "phasenoise") return Scheme::DissipativePhaseNoise;
  throw ValidationError("unknown scheme '" + std::string(text) + "'");
}

void PhysParams::validate() const {
  if (!finite(omega_m) || omega_m <= 0.0)
    throw ValidationError(describe("omega_m", omega_m, "must be > 0"));
  if (!finite(kappa_out) || kappa_out < 0.0)
    throw ValidationError(describe("kappa_out", kappa_out, "must be >= 0"));
  if (!finite(kappa_int) || kappa_int < 0.0)
    throw ValidationError(describe("kappa_int", kappa_int, "must be >= 0"));
  if (kappa_total() <= 0.0)
    throw ValidationError(describe("kappa_out + kappa_int", kappa_total(), "must be > 0"));
  if (!finite(gamma_m) || gamma_m <= 0.0)
    throw ValidationError(describe("gamma_m", gamma_m, "must be > 0"));
  if (!finite(g0) || g0 < 0.0) throw ValidationError(describe("g0", g0, "must be >= 0"));
  if (!finite(n_th) || n_th < 0.0) throw ValidationError(describe("n_th", n_th, "must be >= 0"));
  if (!finite(gamma_l) || gamma_l < 0.0)
    throw ValidationError(describe("gamma_l", gamma_l, "must be >= 0"));
}

LtiModel::LtiModel(Scheme scheme, Matrix4d drift, InputMap in_map,
                   std::vector<double> channel_rates, std::vector<std::string> channel_labels,
                   Eigen::MatrixXcd noise_corr, OutputRows out_rows, Feedthrough feedthrough,
                   double output_rate)
    : scheme_(scheme),
      drift_(std::move(drift)),
      in_map_(std::move(in_map)),
      channel_rates_(std::move(channel_rates)),
      channel_labels_(std::move(channel_labels)),
      noise_corr_(std::move(noise_corr)),
      out_rows_(std::move(out_rows)),
      feedthrough_(std::move(feedthrough)),
      output_rate_(output_rate) {
  const auto k = in_map_.cols();
  if (noise_corr_.rows() != k || noise_corr_.cols() != k || feedthrough_.cols() != k ||
      static_cast<Eigen::Index>(channel_rates_.size()) != k ||
      static_cast<Eigen::Index>(channel_labels_.size()) != k) {
    throw ValidationError("LtiModel: inconsistent channel dimensions");
  }
  if (!drift_.allFinite() || !in_map_.allFinite() || !noise_corr_.allFinite())
    throw ValidationError("LtiModel: non-finite entries");
  if (k > 0) {
    const double scale = std::max(1.0, noise_corr_.cwiseAbs().maxCoeff());
    if ((noise_corr_ - noise_corr_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw ValidationError("LtiModel: noise correlator is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(noise_corr_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-12 * scale)
      throw ValidationError("LtiModel: noise correlator is not positive semidefinite");
  }
}

int LtiModel::channel_index(std::string_view label) const {
  for (std::size_t j = 0; j < channel_labels_.size(); ++j)
    if (channel_labels_[j] == label) return static_cast<int>(j);
  return -1;
}

LtiModel build_dissipative(const PhysParams& params, const DriveConfig& drives) {
  require_scheme(drives, {Scheme::Dissipative}, "build_dissipative");
  validate_dissipative(params, drives);
  if (params.kappa_int > 0.0)
    throw ValidationError("build_dissipative: kappa_int > 0 needs the DissipativeLossy scheme");
  const Matrix4d a =
      dissipative_drift(params.kappa_total(), params.gamma_m, drives.g_minus, drives.g_plus);
  return dissipative_channels(params, false).finish(drives.scheme, a, params.kappa_out);
}

LtiModel build_ponderomotive(const PhysParams& params, const DriveConfig& drives) {
  require_scheme(drives, {Scheme::Ponderomotive}, "build_ponderomotive");
  params.validate();
  const double g = drives.g_minus;
  if (!finite(g) || g <= 0.0) throw ValidationError(describe("g_minus", g, "must be > 0"));
  if (drives.g_plus != 0.0 || drives.g_zero != 0.0)
    throw ValidationError("build_ponderomotive: g_plus and g_zero must be 0");
  if (params.kappa_int > 0.0)
    throw ValidationError("build_ponderomotive: kappa_int must be 0");
  if (params.gamma_m >= 2.0 * params.omega_m)
    throw ValidationError("build_ponderomotive: gamma_m must be below 2 omega_m");

  // Rotation at sqrt(Omega^2 - Gamma^2/4) puts the damped poles at the roots of
  // Omega^2 - w^2 - i w Gamma, i.e. the response is proportional to chi_M.
  const double rot = std::sqrt((params.omega_m - 0.5 * params.gamma_m) *
                               (params.omega_m + 0.5 * params.gamma_m));
  const double kappa = params.kappa_total();
  Matrix4d a = Matrix4d::Zero();
  a(kU1, kU1) = -0.5 * kappa;
  a(kU2, kU2) = -0.5 * kappa;
  a(kU2, kX1) = 2.0 * g;
  a(kX1, kX1) = -0.5 * params.gamma_m;
  a(kX1, kX2) = rot;
  a(kX2, kX1) = -rot;
  a(kX2, kX2) = -0.5 * params.gamma_m;
  a(kX2, kU1) = 2.0 * g;
  return dissipative_channels(params, false).finish(drives.scheme, a, params.kappa_out);
}

LtiModel build_lossy(const PhysParams& params, const DriveConfig& drives) {
  require_scheme(drives, {Scheme::DissipativeLossy}, "build_lossy");
  validate_dissipative(params, drives);
  const Matrix4d a =
      dissipative_drift(params.kappa_total(), params.gamma_m, drives.g_minus, drives.g_plus);
  return dissipative_channels(params, true).finish(drives.scheme, a, params.kappa_out);
}

LtiModel build_phase_noise(const PhysParams& params, const DriveConfig& drives) {
  require_scheme(drives, {Scheme::DissipativePhaseNoise}, "build_phase_noise");
  validate_dissipative(params, drives);
  if (params.kappa_int > 0.0)
    throw ValidationError("build_phase_noise: kappa_int must be 0");
  if (params.gamma_l > 0.0 && params.g0 <= 0.0)
    throw ValidationError(describe("g0", params.g0, "must be > 0 when gamma_l > 0"));

  const Matrix4d a =
      dissipative_drift(params.kappa_total(), params.gamma_m, drives.g_minus, drives.g_plus);
  ChannelSet channels = dissipative_channels(params, false);
  if (params.gamma_l > 0.0) {
    // Demodulated laser frequency noise: force (sqrt2/g0)(G- -+ G+) phidot on U1/U2,
    // phidot white with PSD 2 Gamma_L, <sin^2> = <cos^2> = 1/2 and <sin cos> = 0.
    const double diff = drives.g_minus - drives.g_plus;
    const double sum = drives.g_minus + drives.g_plus;
    const double scale = 2.0 * params.gamma_l / (params.g0 * params.g0);
    channels.add_classical("U1_phase", kU1, scale * diff * diff);
    channels.add_classical("U2_phase", kU2, scale * sum * sum);
  }
  return channels.finish(drives.scheme, a, params.kappa_out);
}

MeasurementModel build_measurement(const PhysParams& params, const DriveConfig& drives,
                                   MeasurementSignal signal) {
  require_scheme(drives, {Scheme::Measurement}, "build_measurement");
  validate_dissipative(params, drives);
  if (params.kappa_int > 0.0)
    throw ValidationError("build_measurement: kappa_int must be 0");
  if (!finite(drives.g_zero) || drives.g_zero < 0.0)
    throw ValidationError(describe("g_zero", drives.g_zero, "must be finite and >= 0"));
  if (!finite(drives.a_zero)) throw ValidationError("a_zero must be finite");
  if (!finite(signal.z)) throw ValidationError("signal z must be finite");

  const Matrix4d a =
      dissipative_drift(params.kappa_total(), params.gamma_m, drives.g_minus, drives.g_plus);
  MeasurementDrive drive;
  // i[-sqrt2 A0 U2 z, U1] = -sqrt2 A0 z
  drive.per_unit_signal(kU1) = -std::sqrt(2.0) * drives.a_zero;
  drive.z = signal.z;
  return {dissipative_channels(params, false).finish(drives.scheme, a, params.kappa_out), drive};
}

LtiModel build_model(const PhysParams& params, const DriveConfig& drives) {
  switch (drives.scheme) {
    case Scheme::Dissipative: return build_dissipative(params, drives);
    case Scheme::Ponderomotive: return build_ponderomotive(params, drives);
    case Scheme::Measurement: return build_measurement(params, drives, {}).model;
    case Scheme::DissipativeLossy: return build_lossy(params, drives);
    case Scheme::DissipativePhaseNoise: return build_phase_noise(params, drives);
  }
  throw ValidationError("unknown scheme");
}

double impedance_match(const PhysParams& params, double g_minus) {
  params.validate();
  const double half = 0.5 * std::sqrt(params.kappa_total() * params.gamma_m);
  if (!finite(g_minus) || g_minus < half) {
    // Rounding at exactly C = 1.
    if (finite(g_minus) && g_minus >= half * (1.0 - 1e-12)) return 0.0;
    std::ostringstream os;
    os.precision(17);
    os << "unmatchable: cooperativity " << cooperativity(params, g_minus)
       << " < 1; g_minus must be at least " << half;
    throw UnmatchableError(os.str(), half);
  }
  return std::sqrt((g_minus - half) * (g_minus + half));
}

DriveConfig matched_drives(const PhysParams& params, double g_minus) {
  DriveConfig d;
  d.g_minus = g_minus;
  d.g_plus = impedance_match(params, g_minus);
  const double diff = d.g_minus - d.g_plus;
  if (d.g_plus < 0.5 * d.g_minus || diff <= 0.0) return d;
  // diff is exact here; rebuild the sum around it and keep the pair only if
  // the difference survives the round trip.
  const double target = 0.25 * params.kappa_total() * params.gamma_m;
  const double g_new = 0.5 * (target / diff + diff);
  const double gp_new = g_new - diff;
  if (g_new - gp_new == diff && gp_new >= 0.0) {
    d.g_minus = g_new;
    d.g_plus = gp_new;
  }
  return d;
}

SqueezeParameter squeeze_parameter(double g_plus, double g_minus) {
  if (!(g_minus > 0.0) || !(g_plus >= 0.0) || !(g_plus < g_minus) || !finite(g_minus)) {
    std::ostringstream os;
    os.precision(17);
    os << "squeeze_parameter: need 0 <= g_plus < g_minus, got g_plus = " << g_plus
       << ", g_minus = " << g_minus;
    throw ValidationError(os.str());
  }
  return {std::atanh(g_plus / g_minus), (g_minus - g_plus) / (g_minus + g_plus)};
}

double cooperativity(const PhysParams& params, double g) {
  return 4.0 * g * g / (params.kappa_total() * params.gamma_m);
}

double coupling_for_cooperativity(const PhysParams& params, double c) {
  if (!finite(c) || c < 0.0) throw ValidationError(describe("cooperativity", c, "must be >= 0"));
  return 0.5 * std::sqrt(c * params.kappa_total() * params.gamma_m);
}

std::string_view to_string(Stability stability) {
  switch (stability) {
    case Stability::Stable: return "stable";
    case Stability::Marginal: return "marginal";
    case Stability::Unstable: return "unstable";
  }
  return "?";
}

double spectral_abscissa(const Matrix4d& drift) {
  Eigen::EigenSolver<Matrix4d> es(drift, false);
  return es.eigenvalues().real().maxCoeff();
}

Stability stability_check(const LtiModel& model) {
  const double top = spectral_abscissa(model.drift());
  if (top < -kStabilityEps) return Stability::Stable;
  if (top <= kStabilityEps) return Stability::Marginal;
  return Stability::Unstable;
}

}  // namespace optosqueeze
