#include "qcs/oscillator.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qcs/errors.hpp"

namespace qcs {

namespace {

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

void require_interior(const OscillatorConfig& cfg, const char* where) {
  if (cfg.alpha == 0.0 || cfg.beta == 0.0) {
    throw DomainError(std::string(where) + ": alpha = 0 or beta = 0 is a limit case; use limit_frames");
  }
}

}  // namespace

void validate(const OscillatorConfig& cfg) {
  if (!positive_finite(cfg.mass)) throw DomainError("oscillator: mass must be > 0");
  if (!positive_finite(cfg.omega)) throw DomainError("oscillator: omega must be > 0");
  if (!positive_finite(cfg.hbar)) throw DomainError("oscillator: hbar must be > 0");
  if (!(cfg.alpha >= 0.0) || !std::isfinite(cfg.alpha)) throw DomainError("oscillator: alpha must be >= 0");
  if (!(cfg.beta >= 0.0) || !std::isfinite(cfg.beta)) throw DomainError("oscillator: beta must be >= 0");
  if (cfg.alpha == 0.0 && cfg.beta == 0.0) {
    throw DomainError("oscillator: alpha = beta = 0 is the undeformed oscillator");
  }
}

DeformedFrame frame_from_alphabeta(const OscillatorConfig& cfg) {
  validate(cfg);
  require_interior(cfg, "frame_from_alphabeta");
  const double s = cfg.hbar * std::sqrt(cfg.alpha * cfg.beta);
  if (!(s < 1.0)) {
    throw DomainError("frame_from_alphabeta: hbar sqrt(alpha beta) = " + std::to_string(s) +
                      " >= 1 gives no finite q");
  }
  const QParam qp = QParam::from_excess(2.0 * s / (1.0 - s));
  DeformedFrame f;
  f.kind = FrameKind::interior;
  f.qp = qp;
  f.L = std::sqrt(qp.qm1() / (4.0 * cfg.alpha));
  f.K = std::sqrt(qp.qm1() / (4.0 * cfg.beta));
  const double shrink = std::sqrt(qp.qm1() / qp.q());
  f.dx0 = f.L * shrink;
  f.dp0 = f.K * shrink;
  return f;
}

DeformedFrame limit_frames(const OscillatorConfig& cfg) {
  validate(cfg);
  if (cfg.alpha > 0.0 && cfg.beta > 0.0) {
    throw DomainError("limit_frames: exactly one of alpha, beta must be zero");
  }
  DeformedFrame f;
  f.qp = QParam::from_excess(kLimitSentinelExcess);
  const double q = f.qp.q();
  if (cfg.alpha == 0.0) {
    f.kind = FrameKind::alpha_zero;
    f.K = 0.5 * std::sqrt(f.qp.qm1() / cfg.beta);
    f.L = cfg.hbar * (1.0 + q) / (4.0 * f.K);
    f.dx0 = cfg.hbar * std::sqrt(cfg.beta);
    f.dp0 = 0.0;
  } else {
    f.kind = FrameKind::beta_zero;
    f.L = 0.5 * std::sqrt(f.qp.qm1() / cfg.alpha);
    f.K = cfg.hbar * (1.0 + q) / (4.0 * f.L);
    f.dx0 = 0.0;
    f.dp0 = cfg.hbar * std::sqrt(cfg.alpha);
  }
  return f;
}

DeformedFrame make_frame(const OscillatorConfig& cfg) {
  validate(cfg);
  if (cfg.alpha > 0.0 && cfg.beta > 0.0) return frame_from_alphabeta(cfg);
  return limit_frames(cfg);
}

XpStatistics xp_statistics(std::complex<double> z, const DeformedFrame& frame) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("xp_statistics: non-finite label");
  const double growth = 1.0 + frame.qp.qm1() * std::norm(z);
  return {2.0 * frame.L * z.real(), 2.0 * frame.K * z.imag(), frame.L * frame.L * growth,
          frame.K * frame.K * growth};
}

XpStatistics xp_statistics_matrix(std::complex<double> z, const DeformedFrame& frame, const FockSpace& fs) {
  if (!(fs.qparam() == frame.qp)) throw DomainError("xp_statistics_matrix: Fock space q differs from the frame q");
  const TruncatedState s = coherent_vector(fs, z);
  const OperatorMatrix x = build_position(fs, frame.L);
  const OperatorMatrix p = build_momentum(fs, frame.K);
  const auto moments = [&](const OperatorMatrix& op) {
    const double mean = expectation(op, s.vector).real();
    const double square = expectation({op.label, op.entries * op.entries}, s.vector).real();
    return std::pair{mean, square - mean * mean};
  };
  const auto [mx, vx] = moments(x);
  const auto [mp, vp] = moments(p);
  return {mx, mp, vx, vp};
}

double gur_residual(std::complex<double> z, const DeformedFrame& frame, const OscillatorConfig& cfg) {
  validate(cfg);
  require_interior(cfg, "gur_residual");
  if (frame.kind != FrameKind::interior) throw DomainError("gur_residual: needs an interior frame");
  const XpStatistics s = xp_statistics(z, frame);
  const double lhs = std::sqrt(s.var_x * s.var_p);
  const double rhs = 0.5 * cfg.hbar *
                     (1.0 + cfg.alpha * (s.var_x + s.mean_x * s.mean_x) + cfg.beta * (s.var_p + s.mean_p * s.mean_p));
  return std::abs(lhs - rhs) / rhs;
}

OscillatorCondition oscillator_condition(const OscillatorConfig& cfg) {
  validate(cfg);
  if (cfg.beta == 0.0) throw DomainError("oscillator_condition: omega0 is undefined for beta = 0");
  const double target = cfg.mass * cfg.mass * cfg.omega * cfg.omega * cfg.beta;
  const bool matched = std::abs(cfg.alpha - target) <= 1e-12 * std::max(cfg.alpha, target);
  return {matched, std::sqrt(cfg.alpha / cfg.beta) / cfg.mass};
}

double spectrum(int n, const QParam& qp, double hbar_omega) {
  if (n < 0) throw DomainError("spectrum: n must be >= 0");
  return 0.25 * (1.0 + qp.q()) * (q_number(n, qp) + q_number(n + 1, qp)) * hbar_omega;
}

double spectrum_forms_residual(int n, const QParam& qp) {
  if (n < 0) throw DomainError("spectrum_forms_residual: n must be >= 0");
  const double sum = q_number(n, qp) + q_number(n + 1, qp);
  const double factored = (1.0 + qp.q()) * q_number(n, qp) + 1.0;
  return std::abs(sum - factored) / sum;
}

double classical_spectrum(int n, double hbar_omega) {
  if (n < 0) throw DomainError("classical_spectrum: n must be >= 0");
  return (n + 0.5) * hbar_omega;
}

HamiltonianCoefficients hamiltonian_coefficients(const OscillatorConfig& cfg, const DeformedFrame& frame) {
  validate(cfg);
  const double kinetic = frame.K * frame.K / (2.0 * cfg.mass);
  const double potential = 0.5 * cfg.mass * cfg.omega * cfg.omega * frame.L * frame.L;
  return {potential - kinetic, potential + kinetic};
}

double pair_coefficient_residual(const OscillatorConfig& cfg, const DeformedFrame& frame) {
  const HamiltonianCoefficients c = hamiltonian_coefficients(cfg, frame);
  return std::abs(c.pair) / (frame.K * frame.K / (2.0 * cfg.mass));
}

double hamiltonian_identity_residual(const OscillatorConfig& cfg, const DeformedFrame& frame, int dim) {
  validate(cfg);
  const FockSpace fs(dim, frame.qp);
  const Eigen::MatrixXcd x = build_position(fs, frame.L).entries;
  const Eigen::MatrixXcd p = build_momentum(fs, frame.K).entries;
  const Eigen::MatrixXcd h_xp = p * p / (2.0 * cfg.mass) + 0.5 * cfg.mass * cfg.omega * cfg.omega * (x * x);
  const Eigen::MatrixXcd h = build_hamiltonian(fs, cfg.hbar * cfg.omega).entries;
  const int block = dim - 2;
  const double scale = h.topLeftCorner(block, block).cwiseAbs().maxCoeff();
  return (h_xp - h).topLeftCorner(block, block).cwiseAbs().maxCoeff() / scale;
}

double matrix_spectrum_residual(const QParam& qp, double hbar_omega, int dim) {
  if (dim < 11) throw DimensionError("matrix_spectrum_residual: dimension must be >= 11");
  const FockSpace fs(dim, qp);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(build_hamiltonian(fs, hbar_omega).entries,
                                                               Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("matrix_spectrum_residual: eigensolver failed");
  const Eigen::VectorXd& eig = solver.eigenvalues();
  double worst = 0.0;
  for (int n = 0; n <= dim - 10; ++n) {
    const double e = spectrum(n, qp, hbar_omega);
    double nearest = std::abs(eig(0) - e);
    for (Eigen::Index k = 1; k < eig.size(); ++k) nearest = std::min(nearest, std::abs(eig(k) - e));
    worst = std::max(worst, nearest / e);
  }
  return worst;
}

}  // namespace qcs
