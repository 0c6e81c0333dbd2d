#pragma once

// Maths-type q-deformed coherent states |z>_q (q > 1): construction,
// kernel and weight function, the S^(p,r) expectation series and the
// quantum-optics observables built on them.
//
// Every observable here is computed from log-domain series. The matching
// Fock-matrix route lives in fock_oracle.hpp.

#include <complex>
#include <vector>

#include "qcs/fock.hpp"
#include "qcs/qmath.hpp"

namespace qcs {

/// Omitted probability allowed when choosing the amplitude ladder length.
inline constexpr double kTailMassTarget = 1e-14;
inline constexpr int kGuardTerms = 10;

class CoherentState {
 public:
  /// Throws DomainError for non-finite z.
  CoherentState(std::complex<double> z, const QParam& qp);

  std::complex<double> z() const noexcept { return z_; }
  double t() const noexcept { return t_; }
  const QParam& qparam() const noexcept { return qp_; }

  /// Number of retained amplitudes, n = 0 .. n_max()-1.
  int n_max() const noexcept { return static_cast<int>(amp_ln_.size()); }

  /// ln |z^n / sqrt([n]_q!)| (unnormalised); phase is n * phase().
  const std::vector<LogValue>& amp_ln() const noexcept { return amp_ln_; }
  double phase() const noexcept { return phase_; }

  /// ln E_q(|z|^2).
  double norm_ln() const noexcept { return norm_ln_; }

  /// Bound on the probability carried by n >= n_max().
  double tail_mass() const noexcept { return tail_mass_; }

  /// p_n for n < n_max().
  std::vector<double> photon_distribution() const;

  /// Normalised amplitudes <n|z>_q for n < dim (computed beyond n_max if needed).
  Eigen::VectorXcd fock_vector(int dim) const;

 private:
  std::complex<double> z_;
  double t_;
  QParam qp_;
  std::vector<LogValue> amp_ln_;
  double phase_;
  double norm_ln_;
  double tail_mass_;
};

inline CoherentState make_state(std::complex<double> z, const QParam& qp) { return CoherentState(z, qp); }

/// ||(b - z)|z>|| on the truncation fs. Throws DimensionError if
/// fs.dim() < cs.n_max().
double eigenstate_residual(const CoherentState& cs, const FockSpace& fs);

/// <z2|z1>_q = [E_q(|z1|^2) E_q(|z2|^2)]^{-1/2} E_q(conj(z2) z1).
std::complex<double> overlap(std::complex<double> z1, std::complex<double> z2, const QParam& qp);

/// || |z+dz> - |z> ||^2 = 2 (1 - Re <z|z+dz>).
double label_continuity_modulus(std::complex<double> z, std::complex<double> dz, const QParam& qp);

/// W~_q(t) = (q-1)/ln q / E_q(qt), t >= 0.
double weight_tilde(double t, const QParam& qp);
double weight_tilde_ln(double t, const QParam& qp);

/// W_q(t) = W~_q(t) E_q(t) / pi.
double weight_full(double t, const QParam& qp);

/// S^(p,r)_q(t) = E_q(t)^{-1} sum_n sqrt((n+p)!(n+r)! / ([n+p]_q! [n+r]_q!)) t^n/n!.
/// Requires t >= 0 and 0 <= p, r <= 4.
double s_coefficient(int p, int r, double t, const QParam& qp);

/// <N> = t S^(1,1)(t).
double mean_photon(double t, const QParam& qp);

/// <N^2> = sum_n n^2 p_n.
double mean_photon_squared(double t, const QParam& qp);

/// omega_q(t) = d<N>/dt = Var(N)/t, from the term-wise derivative
/// sum_{n>=1} n^2 t^{n-1}/[n]_q! / E_q(t) - t (S^(1,1))^2. Equals 1 at t = 0.
double metric_factor(double t, const QParam& qp);

/// Mandel Q from the photon-distribution sums. Throws DomainError at t = 0
/// (0/0; the limit from the right is 0^-).
double mandel_q(double t, const QParam& qp);

/// Same quantity through <N^2> = t^2 S^(2,2) + t S^(1,1).
double mandel_q_operator_identity(double t, const QParam& qp);

struct QuadratureVariances {
  double var_x = 0.0;
  double var_p = 0.0;
};

QuadratureVariances quadrature_variances(std::complex<double> z, const QParam& qp);

/// <X> = sqrt(2) Re z S^(1,0)(t), <P> = sqrt(2) Im z S^(1,0)(t).
std::complex<double> quadrature_means(std::complex<double> z, const QParam& qp);

/// R_q(t) = 2 (Delta X)^2 at z = sqrt(t).
double squeeze_ratio(double t, const QParam& qp);

struct SnrReport {
  double sigma = 0.0;               ///< <X>^2 / (Delta X)^2 at z = sqrt(t)
  double coherent_reference = 0.0;  ///< 4 <N>
  double squeezed_reference = 0.0;  ///< 4 <N> (<N> + 1)
};

SnrReport snr(double t, const QParam& qp);

/// psi_z(xi) = E_q(|z|^2)^{-1/2} E_q(z xi).
std::complex<double> bargmann_eval(std::complex<double> z, std::complex<double> xi, const QParam& qp);

/// |D_q psi_z(xi) - z psi_z(xi)| / |z psi_z(xi)| (absolute when z = 0).
double bargmann_eigen_residual(std::complex<double> z, std::complex<double> xi, const QParam& qp);

}  // namespace qcs
