#pragma once

// Matrix-route observables: every quantity is an expectation value on the
// truncated |z>_q built by coherent_vector. Used as the independent check of
// the series formulas in coherent.hpp.

#include <complex>

#include "qcs/coherent.hpp"
#include "qcs/fock.hpp"

namespace qcs::oracle {

struct OracleValue {
  double value = 0.0;
  double tail_mass = 0.0;  ///< probability beyond the truncation
};

OracleValue mean_photon(double t, const FockSpace& fs);
OracleValue mean_photon_squared(double t, const FockSpace& fs);

/// Throws DomainError at t = 0.
OracleValue mandel_q(double t, const FockSpace& fs);

/// Central difference of the matrix <N> in t, step 1e-5 max(1, t); one-sided
/// near t = 0.
OracleValue metric_factor(double t, const FockSpace& fs);

struct OracleVariances {
  QuadratureVariances variances;
  double tail_mass = 0.0;
};

/// <X^2> - <X>^2 and <P^2> - <P>^2 with undeformed quadratures.
OracleVariances quadrature_variances(std::complex<double> z, const FockSpace& fs);

OracleValue squeeze_ratio(double t, const FockSpace& fs);
OracleValue snr(double t, const FockSpace& fs);

/// (q-1)/ln q divided by the squared norm of the unnormalised truncated |sqrt(qt)>.
OracleValue weight_tilde(double t, const FockSpace& fs);

}  // namespace qcs::oracle
