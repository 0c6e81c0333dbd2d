#pragma once

// Deformed Heisenberg algebra [x, p] = i hbar (1 + alpha x^2 + beta p^2)
// realised on the q-boson Fock space, and the statistics of |z>_q in it.

#include <complex>

#include "qcs/fock.hpp"
#include "qcs/qmath.hpp"

namespace qcs {

struct OscillatorConfig {
  double mass = 1.0;   ///< mass units
  double omega = 1.0;  ///< frequency units
  double hbar = 1.0;   ///< action units
  double alpha = 0.0;  ///< 1/length^2
  double beta = 0.0;   ///< 1/momentum^2
};

/// Throws DomainError unless m, omega, hbar > 0, alpha, beta >= 0 (finite)
/// and not both alpha and beta vanish.
void validate(const OscillatorConfig& cfg);

enum class FrameKind {
  interior,    ///< alpha > 0 and beta > 0
  alpha_zero,  ///< no minimal momentum uncertainty
  beta_zero,   ///< no minimal position uncertainty
};

/// q used by limit frames in place of the excluded q = 1.
inline constexpr double kLimitSentinelExcess = 1e-12;

struct DeformedFrame {
  FrameKind kind = FrameKind::interior;
  QParam qp = QParam::from_excess(kLimitSentinelExcess);
  double L = 0.0;    ///< length
  double K = 0.0;    ///< momentum
  double dx0 = 0.0;  ///< length
  double dp0 = 0.0;  ///< momentum
};

/// q = (1 + hbar sqrt(alpha beta)) / (1 - hbar sqrt(alpha beta)),
/// L = sqrt((q-1)/(4 alpha)), K = sqrt((q-1)/(4 beta)).
/// Throws DomainError when hbar sqrt(alpha beta) >= 1 or when alpha or beta
/// is zero (see limit_frames).
DeformedFrame frame_from_alphabeta(const OscillatorConfig& cfg);

/// Exactly one of alpha, beta zero. alpha = 0: dx0 = hbar sqrt(beta), dp0 = 0,
/// K = sqrt((q-1)/beta)/2 at the sentinel q and L from 4KL = hbar(1+q);
/// beta = 0 mirrors this.
DeformedFrame limit_frames(const OscillatorConfig& cfg);

/// Dispatches to frame_from_alphabeta or limit_frames.
DeformedFrame make_frame(const OscillatorConfig& cfg);

struct XpStatistics {
  double mean_x = 0.0;
  double mean_p = 0.0;
  double var_x = 0.0;
  double var_p = 0.0;
};

/// (2L Re z, 2K Im z, L^2 [1 + (q-1)|z|^2], K^2 [1 + (q-1)|z|^2]).
XpStatistics xp_statistics(std::complex<double> z, const DeformedFrame& frame);

/// Same four numbers as expectations of x = L(b^dag + b), p = iK(b^dag - b)
/// on the truncated state. fs must carry the frame's q.
XpStatistics xp_statistics_matrix(std::complex<double> z, const DeformedFrame& frame, const FockSpace& fs);

/// |dx dp - RHS| / RHS with RHS = hbar/2 {1 + alpha [(dx)^2 + <x>^2] + beta [(dp)^2 + <p>^2]}.
/// Requires an interior frame and alpha, beta > 0.
double gur_residual(std::complex<double> z, const DeformedFrame& frame, const OscillatorConfig& cfg);

struct OscillatorCondition {
  bool matched = false;
  double omega0 = 0.0;
};

/// matched iff |alpha - m^2 omega^2 beta| <= 1e-12 max(alpha, m^2 omega^2 beta);
/// omega0 = sqrt(alpha/beta)/m. Throws DomainError for beta = 0.
OscillatorCondition oscillator_condition(const OscillatorConfig& cfg);

/// E_n(q) = 1/4 (1+q) ([n]_q + [n+1]_q) hbar omega.
double spectrum(int n, const QParam& qp, double hbar_omega);

/// |([n] + [n+1]) - ((1+q)[n] + 1)| / ([n] + [n+1]).
double spectrum_forms_residual(int n, const QParam& qp);

/// (n + 1/2) hbar omega.
double classical_spectrum(int n, double hbar_omega);

/// Coefficients of H = p^2/2m + m omega^2 x^2/2 after substituting the
/// frame's x and p: pair * (b^dag^2 + b^2) + number * (b^dag b + b b^dag).
struct HamiltonianCoefficients {
  double pair = 0.0;    ///< -K^2/2m + m omega^2 L^2/2
  double number = 0.0;  ///<  K^2/2m + m omega^2 L^2/2
};

HamiltonianCoefficients hamiltonian_coefficients(const OscillatorConfig& cfg, const DeformedFrame& frame);

/// |pair| / (K^2/2m).
double pair_coefficient_residual(const OscillatorConfig& cfg, const DeformedFrame& frame);

/// Largest entry of p^2/2m + m omega^2 x^2/2 - H (fock) over the block that
/// avoids the two top states, relative to the largest |H| entry there.
double hamiltonian_identity_residual(const OscillatorConfig& cfg, const DeformedFrame& frame, int dim);

/// Diagonalises H from fock (dimension dim) with a self-adjoint eigensolver
/// and returns max_{n <= dim-10} |E_n - nearest eigenvalue| / E_n.
double matrix_spectrum_residual(const QParam& qp, double hbar_omega, int dim);

}  // namespace qcs
