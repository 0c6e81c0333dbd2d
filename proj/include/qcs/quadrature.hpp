#pragma once

// Adaptive Gauss-Kronrod (7/15) integration on [0, inf) for the rapidly
// decaying integrands of the power-moment problem.

#include <functional>

#include "qcs/qmath.hpp"

namespace qcs {

struct IntegralResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int subdivisions = 0;
  double tail_bound = 0.0;
  double cutoff = 0.0;  ///< upper limit T actually integrated to
};

using RealFunction = std::function<double(double)>;

/// Upper bound on the integral of |f| over [T, inf) as a function of T.
using TailBound = std::function<double(double)>;

inline constexpr double kDefaultRelTol = 1e-10;
inline constexpr double kDefaultAbsTol = 1e-14;
inline constexpr int kMaxSubdivisions = 20000;

/// Adaptive integral of f over [a, b].
IntegralResult integrate_finite(const RealFunction& f, double a, double b,
                                double rel_tol = kDefaultRelTol, double abs_tol = kDefaultAbsTol);

/// Integral of f over [0, inf).
///
/// The range is cut into dyadic panels [0,1], [1,2], [2,4], ... and the
/// cutoff T is doubled until tail(T) < abs_tol/10. Without an analytic
/// bound the last dyadic panel's magnitude is used as a tail estimate,
/// which is only meaningful for monotonically decaying integrands.
/// Panel contributions are summed in left-endpoint order, so results do
/// not depend on refinement order.
///
/// Throws ToleranceError (with the best estimate) when abs_error +
/// tail_bound cannot be brought under max(abs_tol, rel_tol |value|), and
/// DomainError if f returns a non-finite value.
IntegralResult integrate_semiinfinite(const RealFunction& f, double rel_tol = kDefaultRelTol,
                                      double abs_tol = kDefaultAbsTol, const TailBound& tail = {},
                                      double min_cutoff = 1.0);

/// t^n W~_q(t) / [n]_q!, i.e. the moment integrand scaled so its exact
/// integral is 1.
RealFunction normalized_moment_integrand(int n, const QParam& qp);

/// Bound on the tail of normalized_moment_integrand, from
/// E_q(qt) >= (qt)^m / [m]_q! with m = n + 40.
TailBound normalized_moment_tail(int n, const QParam& qp);

/// Integral of t^n W~_q(t) / [n]_q! over [0, inf).
IntegralResult moment_integral(int n, const QParam& qp, double rel_tol = kDefaultRelTol,
                               double min_cutoff = 1.0);

/// |int t^n W~_q(t) dt - [n]_q!| / [n]_q!.
double moment_check(int n, const QParam& qp, double rel_tol = kDefaultRelTol);

}  // namespace qcs
