#pragma once

// Truncated Fock-space realization of the q-boson operators as dense
// matrices. This is the brute-force oracle for every series observable.
//
// Basis |0>, ..., |D-1>. Relations that involve the top state are broken by
// truncation, so every residual here skips rows/columns touching |D-1>.

#include <Eigen/Dense>
#include <complex>
#include <string_view>

#include "qcs/qmath.hpp"

namespace qcs {

enum class OperatorLabel {
  b,       ///< q-deformed annihilation
  b_dag,   ///< q-deformed creation
  N,       ///< number operator
  Nq,      ///< [N]_q
  a,       ///< undeformed annihilation
  a_dag,   ///< undeformed creation
  X,       ///< (a + a^dag)/sqrt(2)
  P,       ///< (a - a^dag)/(i sqrt(2))
  x,       ///< L (b^dag + b)
  p,       ///< i K (b^dag - b)
  H,       ///< oscillator Hamiltonian
};

std::string_view to_string(OperatorLabel label);

struct OperatorMatrix {
  OperatorLabel label;
  Eigen::MatrixXcd entries;

  Eigen::Index dim() const { return entries.rows(); }
};

class FockSpace {
 public:
  /// Throws DomainError for dim < 2.
  FockSpace(int dim, const QParam& qp);

  int dim() const noexcept { return dim_; }
  const QParam& qparam() const noexcept { return qp_; }

 private:
  int dim_;
  QParam qp_;
};

inline constexpr int kDefaultFockDim = 80;

struct Ladder {
  OperatorMatrix b;
  OperatorMatrix b_dag;
};

/// b_{n-1,n} = sqrt([n]_q), b^dag its adjoint.
Ladder build_ladder(const FockSpace& fs);

/// Same operators through the boson map b = a sqrt([N]_q / N); the n = 0
/// entry of sqrt([N]_q / N) is taken as 0.
Ladder boson_realization(const FockSpace& fs);

OperatorMatrix build_number(const FockSpace& fs);
OperatorMatrix build_q_number(const FockSpace& fs);
Ladder build_boson_ladder(const FockSpace& fs);  ///< a, a^dag with entries sqrt(n)
OperatorMatrix build_quadrature_x(const FockSpace& fs);
OperatorMatrix build_quadrature_p(const FockSpace& fs);
OperatorMatrix build_position(const FockSpace& fs, double length_scale);
OperatorMatrix build_momentum(const FockSpace& fs, double momentum_scale);

/// 1/4 (1+q) hbar omega (b b^dag + b^dag b).
OperatorMatrix build_hamiltonian(const FockSpace& fs, double hbar_omega);

/// b b^dag - q b^dag b - I over the full D x D matrix.
Eigen::MatrixXcd commutator_matrix(const FockSpace& fs);

/// Largest entry of b b^dag - q b^dag b - I over the leading (D-1) block,
/// each entry scaled by 1 + |(b b^dag)_ij| + q |(b^dag b)_ij|. With
/// include_edge the top state is kept (and the truncation defect shows up).
double commutator_residual(const FockSpace& fs, bool include_edge = false);

/// max_n |(b^dag b)_nn - [n]_q| + max_{n<D-1} |(b b^dag)_nn - [n+1]_q|, each
/// term relative to max(1, [.]_q).
double boson_map_residual(const FockSpace& fs);

/// max_{n<=D-2} |H_nn - E_n| / E_n with E_n = 1/4 (1+q) {(1+q)[n]_q + 1} hbar omega.
double spectrum_residual(const FockSpace& fs, double hbar_omega);

/// max |M - M^dag|.
double hermiticity_defect(const OperatorMatrix& op);

/// <state|op|state>. Throws DimensionError on size mismatch and DomainError
/// if the state is not normalised to 1e-10.
std::complex<double> expectation(const OperatorMatrix& op, const Eigen::VectorXcd& state);

struct TruncatedState {
  Eigen::VectorXcd vector;  ///< normalised on the truncation
  double tail_mass = 0.0;   ///< bound on probability beyond |D-1>
};

/// |z>_q built by repeated action of the b^dag matrix on the vacuum,
/// z^n/[n]_q! (b^dag)^n |0>, with [n]_q read off the b^dag b diagonal.
/// Shares no code with the log-domain amplitude ladder.
TruncatedState coherent_vector(const FockSpace& fs, std::complex<double> z);

/// The same sum before normalisation; its squared norm approximates E_q(|z|^2).
Eigen::VectorXcd coherent_vector_unnormalized(const FockSpace& fs, std::complex<double> z);

}  // namespace qcs
