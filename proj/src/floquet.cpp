#include "optosqueeze/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "optosqueeze/error.hpp"

namespace optosqueeze {
namespace {

constexpr int kD = 0;
constexpr int kDd = 1;
constexpr int kB = 2;
constexpr int kBd = 3;
const Complex kI(0.0, 1.0);

using CoefficientSeries = std::map<int, Complex>;

Complex coefficient(const CoefficientSeries& c, int n) {
  const auto it = c.find(n);
  return it == c.end() ? Complex(0.0) : it->second;
}

Matrix4c& block(std::map<int, Matrix4c>& blocks, int n) {
  auto [it, inserted] = blocks.try_emplace(n, Matrix4c::Zero());
  return it->second;
}

std::set<int> offsets(const CoefficientSeries& c) {
  std::set<int> out;
  for (const auto& [n, v] : c) {
    out.insert(n);
    out.insert(-n);
  }
  return out;
}

// H = -(c(t) d^+ b + c*(t) b^+ d), c(t) = sum_n c_n e^{-i n Omega t}.
void add_beam_splitter(std::map<int, Matrix4c>& blocks, const CoefficientSeries& c) {
  for (int n : offsets(c)) {
    const Complex cn = coefficient(c, n);
    const Complex cbar = std::conj(coefficient(c, -n));
    Matrix4c& a = block(blocks, n);
    a(kD, kB) += kI * cn;
    a(kB, kD) += kI * cbar;
    a(kDd, kBd) += -kI * cbar;
    a(kBd, kDd) += -kI * cn;
  }
}

// H = -(c(t) d^+ b^+ + c*(t) d b).
void add_two_mode_squeezer(std::map<int, Matrix4c>& blocks, const CoefficientSeries& c) {
  for (int n : offsets(c)) {
    const Complex cn = coefficient(c, n);
    const Complex cbar = std::conj(coefficient(c, -n));
    Matrix4c& a = block(blocks, n);
    a(kD, kBd) += kI * cn;
    a(kB, kDd) += kI * cn;
    a(kDd, kB) += -kI * cbar;
    a(kBd, kD) += -kI * cbar;
  }
}

void drop_zero_blocks(std::map<int, Matrix4c>& blocks) {
  std::erase_if(blocks, [](const auto& kv) { return kv.second.isZero(0.0); });
}

struct Truncation {
  int n_harm;
  int dim;
};

Truncation truncation(const FloquetModel& fm, int n_harm) {
  // Blocks only at n = 0 never couple sidebands; solve the base problem alone.
  const int n = fm.max_offset() == 0 ? 0 : n_harm;
  return {n, 4 * (2 * n + 1)};
}

// Truncated generator L with L_{m,m'} = A_{m-m'} + i m Omega delta_{mm'}.
Eigen::MatrixXcd generator(const FloquetModel& fm, const Truncation& t) {
  Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(t.dim, t.dim);
  const int n = t.n_harm;
  for (int m = -n; m <= n; ++m) {
    const int row = 4 * (m + n);
    for (const auto& [offset, a] : fm.quadrature_blocks()) {
      const int mp = m - offset;
      if (mp < -n || mp > n) continue;
      big.block<4, 4>(row, 4 * (mp + n)) += a;
    }
    big.block<4, 4>(row, row).diagonal().array() += kI * (m * fm.base_freq());
  }
  return big;
}

void require_stable(const FloquetModel& fm, const Truncation& t) {
  const double top = truncated_abscissa(fm, t.n_harm);
  if (top >= -kStabilityEps) {
    std::ostringstream os;
    os.precision(17);
    os << "truncated Floquet system (n_harm = " << t.n_harm
       << ") is not stable: largest real part " << top;
    throw SolverError(os.str());
  }
}

Eigen::PartialPivLU<Eigen::MatrixXcd> factor(const Eigen::MatrixXcd& generator_matrix,
                                             double omega) {
  Eigen::MatrixXcd lhs = -generator_matrix;
  lhs.diagonal().array() += Complex(0.0, -omega);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(lhs);
  if (!(lu.rcond() > 1e-14)) {
    std::ostringstream os;
    os.precision(17);
    os << "singular Floquet system at omega = " << omega;
    throw SolverError(os.str());
  }
  return lu;
}

// Rows: output quadrature; columns: channel k at sideband m' (block-major in m').
Eigen::MatrixXcd sideband_transfer(const FloquetModel& fm, const Eigen::MatrixXcd& gen,
                                   const Truncation& t, double omega) {
  const LtiModel& base = fm.base();
  const int k = base.channel_count();
  const int n = t.n_harm;
  const auto lu = factor(gen, omega);

  // Block row 0 of M^{-1}, contracted with the output rows: W^T = C (M^{-1})_{0,:}.
  Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(t.dim, 2);
  rhs.block(4 * n, 0, 4, 2) = base.out_rows().transpose().cast<Complex>();
  const Eigen::MatrixXcd w = lu.transpose().solve(rhs);

  const Eigen::MatrixXcd b = base.in_map().cast<Complex>();
  Eigen::MatrixXcd out(2, k * (2 * n + 1));
  for (int mp = -n; mp <= n; ++mp) {
    out.block(0, k * (mp + n), 2, k) = w.block(4 * (mp + n), 0, 4, 2).transpose() * b;
  }
  out.block(0, k * n, 2, k) += base.feedthrough().cast<Complex>();
  return out;
}

double relative_change(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

double spectrum_change(const SpectrumPoint& a, const SpectrumPoint& b) {
  const double cross_scale = std::sqrt(std::abs(b.s_u1 * b.s_u2));
  const double cross =
      cross_scale == 0.0 ? 0.0 : std::abs(a.s_u12 - b.s_u12) / cross_scale;
  return std::max({relative_change(a.s_u1, b.s_u1), relative_change(a.s_u2, b.s_u2), cross});
}

}  // namespace

const Matrix4c& ladder_to_quadrature() {
  static const Matrix4c p = [] {
    Matrix4c m = Matrix4c::Zero();
    const double s = 1.0 / std::sqrt(2.0);
    m(kU1, kD) = s;
    m(kU1, kDd) = s;
    m(kU2, kD) = -kI * s;
    m(kU2, kDd) = kI * s;
    m(kX1, kB) = s;
    m(kX1, kBd) = s;
    m(kX2, kB) = -kI * s;
    m(kX2, kBd) = kI * s;
    return m;
  }();
  return p;
}

Matrix4c to_quadrature_basis(const Matrix4c& ladder_block) {
  const Matrix4c& p = ladder_to_quadrature();
  return p * ladder_block * p.adjoint();  // P is unitary
}

Matrix4c to_ladder_basis(const Matrix4c& quadrature_block) {
  const Matrix4c& p = ladder_to_quadrature();
  return p.adjoint() * quadrature_block * p;
}

FloquetModel::FloquetModel(const LtiModel& base, double base_freq,
                           std::map<int, Matrix4c> ladder_blocks,
                           std::map<int, Vector4c> drive_harmonics, int n_harm)
    : base_(base),
      base_freq_(base_freq),
      blocks_(std::move(ladder_blocks)),
      drives_(std::move(drive_harmonics)),
      n_harm_(n_harm) {
  if (!(base_freq_ > 0.0) || !std::isfinite(base_freq_))
    throw ValidationError("Floquet base frequency must be > 0");
  for (const auto& [n, a] : blocks_) {
    const auto it = blocks_.find(-n);
    const Matrix4c partner = it == blocks_.end() ? Matrix4c::Zero() : it->second;
    // Real quadrature dynamics: A_{-n} = conj(A_n) in the quadrature basis.
    const Matrix4c mismatch =
        to_quadrature_basis(partner) - to_quadrature_basis(a).conjugate();
    if (mismatch.cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff()))
      throw ValidationError("Floquet blocks +n and -n are not conjugate partners");
    quad_blocks_.emplace(n, to_quadrature_basis(a));
  }
  if (max_offset() > 0 && n_harm_ < 2)
    throw ValidationError("n_harm must be >= 2 when sideband blocks are present");
  if (n_harm_ < 0 || n_harm_ > kMaxHarmonics)
    throw ValidationError("n_harm out of range");
}

int FloquetModel::max_offset() const {
  int top = 0;
  for (const auto& [n, a] : blocks_) top = std::max(top, std::abs(n));
  return top;
}

FloquetModel FloquetModel::with_harmonics(int n_harm) const {
  return FloquetModel(base_, base_freq_, blocks_, drives_, n_harm);
}

FloquetModel lift(const LtiModel& model, const PhysParams& params, const DriveConfig& drives,
                  const LiftOptions& options) {
  params.validate();
  std::map<int, Matrix4c> blocks;
  std::map<int, Vector4c> drive_harmonics;

  switch (model.scheme()) {
    case Scheme::Ponderomotive:
      // Already written without a rotating-wave approximation.
      blocks.emplace(0, to_ladder_basis(model.drift().cast<Complex>()));
      break;
    case Scheme::DissipativePhaseNoise:
      throw ValidationError("lift: phase-noise models are handled in the RWA only");
    case Scheme::Dissipative:
    case Scheme::DissipativeLossy:
    case Scheme::Measurement: {
      Matrix4c& damping = block(blocks, 0);
      damping(kD, kD) = damping(kDd, kDd) = -0.5 * params.kappa_total();
      damping(kB, kB) = damping(kBd, kBd) = -0.5 * params.gamma_m;
      add_beam_splitter(blocks, {{0, drives.g_minus}});
      add_two_mode_squeezer(blocks, {{0, drives.g_plus}});
      if (options.counter_rotating) {
        add_beam_splitter(blocks, {{2, drives.g_plus}});
        add_two_mode_squeezer(blocks, {{-2, drives.g_minus}});
      }
      const bool measurement = model.scheme() == Scheme::Measurement;
      if (measurement && options.measurement_tone && drives.g_zero > 0.0) {
        add_beam_splitter(blocks, {{1, kI * drives.g_zero}});
        add_two_mode_squeezer(blocks, {{-1, kI * drives.g_zero}});
      }
      if (measurement) {
        const Complex a0 = drives.a_zero;
        drive_harmonics[0] = Vector4c(-a0, -a0, 0.0, 0.0);
        if (options.sideband_dispersive && drives.g_zero > 0.0) {
          const Complex a_plus = drives.a_zero * drives.g_plus / drives.g_zero;
          const Complex a_minus = drives.a_zero * drives.g_minus / drives.g_zero;
          drive_harmonics[1] = Vector4c(kI * a_plus, -kI * a_minus, 0.0, 0.0);
          drive_harmonics[-1] = Vector4c(kI * a_minus, -kI * a_plus, 0.0, 0.0);
        }
      }
      // The resonant part must reproduce the RWA model it extends.
      const Matrix4c rwa = to_quadrature_basis(blocks.at(0));
      if ((rwa - model.drift().cast<Complex>()).cwiseAbs().maxCoeff() >
          1e-12 * std::max(1.0, model.drift().cwiseAbs().maxCoeff())) {
        throw ValidationError("lift: drives do not match the model being lifted");
      }
      break;
    }
  }
  drop_zero_blocks(blocks);
  int n_harm = options.n_harm;
  const int top = std::max_element(blocks.begin(), blocks.end(), [](auto& a, auto& b) {
                    return std::abs(a.first) < std::abs(b.first);
                  })->first;
  if (top == 0) n_harm = 0;
  return FloquetModel(model, params.omega_m, std::move(blocks), std::move(drive_harmonics),
                      n_harm);
}

double truncated_abscissa(const FloquetModel& fm, int n_harm) {
  const Truncation t = truncation(fm, n_harm);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(generator(fm, t), false);
  return es.eigenvalues().real().maxCoeff();
}

SpectrumPoint floquet_spectrum_at(const FloquetModel& fm, double omega, int n_harm) {
  if (!std::isfinite(omega)) throw ValidationError("omega must be finite");
  const Truncation t = truncation(fm, n_harm);
  require_stable(fm, t);
  const Eigen::MatrixXcd gen = generator(fm, t);
  const Eigen::MatrixXcd tp = sideband_transfer(fm, gen, t, omega);
  const Eigen::MatrixXcd tm = sideband_transfer(fm, gen, t, -omega);

  const int k = fm.base().channel_count();
  const int n = t.n_harm;
  const Eigen::MatrixXcd& noise = fm.base().noise_corr();
  // Stationary part: noise at w + m Omega pairs only with -w - m Omega.
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  for (int m = -n; m <= n; ++m) {
    s += tp.block(0, k * (m + n), 2, k) * noise * tm.block(0, k * (-m + n), 2, k).transpose();
  }
  return make_spectrum_point(omega, s(0, 0).real(), s(1, 1).real(),
                             0.5 * (s(0, 1) + s(1, 0)).real());
}

SpectrumPoint floquet_spectrum(const FloquetModel& fm, double omega) {
  if (fm.max_offset() == 0) return floquet_spectrum_at(fm, omega, 0);
  int n = fm.n_harm();
  SpectrumPoint previous = floquet_spectrum_at(fm, omega, n);
  while (true) {
    const SpectrumPoint next = floquet_spectrum_at(fm, omega, n + 1);
    if (spectrum_change(previous, next) < kConvergenceTol) return next;
    if (n + 1 >= kMaxHarmonics) {
      std::ostringstream os;
      os.precision(17);
      os << "Floquet spectrum at omega = " << omega << " not converged by n_harm = "
         << n + 1 << ": s_u1 " << previous.s_u1 << " -> " << next.s_u1;
      throw ConvergenceError(os.str(), previous.s_u1, next.s_u1);
    }
    previous = next;
    ++n;
  }
}

double select(const SpectrumPoint& p, Quadrature q) {
  switch (q) {
    case Quadrature::U1: return p.s_u1;
    case Quadrature::U2: return p.s_u2;
    case Quadrature::Optimal: return p.s_opt;
  }
  return p.s_u1;
}

ConvergenceReport check_convergence(const FloquetModel& fm, double omega, Quadrature quadrature) {
  ConvergenceReport r;
  r.n_harm = fm.n_harm();
  r.lower = floquet_spectrum_at(fm, omega, r.n_harm);
  r.upper = floquet_spectrum_at(fm, omega, r.n_harm + 1);
  r.lower_value = select(r.lower, quadrature);
  r.upper_value = select(r.upper, quadrature);
  r.rel_diff = relative_change(r.lower_value, r.upper_value);
  return r;
}

double floquet_mean_response_at(const FloquetModel& fm, int n_harm) {
  const Truncation t = truncation(fm, n_harm);
  require_stable(fm, t);
  const int n = t.n_harm;
  Eigen::VectorXcd force = Eigen::VectorXcd::Zero(t.dim);
  for (const auto& [m, f] : fm.drive_harmonics()) {
    if (m < -n || m > n) continue;
    force.segment<4>(4 * (m + n)) = ladder_to_quadrature() * f;
  }
  const auto lu = factor(generator(fm, t), 0.0);
  const Eigen::VectorXcd x = lu.solve(force);
  const LtiModel& base = fm.base();
  const Complex u1_out = base.out_rows().row(0).cast<Complex>() * x.segment<4>(4 * n);
  return std::sqrt(base.output_rate()) * u1_out.real();
}

double floquet_mean_response(const FloquetModel& fm) {
  if (fm.max_offset() == 0) return floquet_mean_response_at(fm, 0);
  int n = fm.n_harm();
  double previous = floquet_mean_response_at(fm, n);
  while (true) {
    const double next = floquet_mean_response_at(fm, n + 1);
    if (relative_change(previous, next) < kConvergenceTol) return next;
    if (n + 1 >= kMaxHarmonics) {
      std::ostringstream os;
      os.precision(17);
      os << "Floquet mean response not converged by n_harm = " << n + 1;
      throw ConvergenceError(os.str(), previous, next);
    }
    previous = next;
    ++n;
  }
}

}  // namespace optosqueeze
