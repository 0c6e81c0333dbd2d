#pragma once

// Scalar q-arithmetic for maths-type q-bosons with q > 1: q-numbers,
// log-domain q-factorials, the deformed exponential E_q and the
// q-difference operator.
//
// [n]_q! grows like q^{n(n-1)/2}, so anything that touches it is carried
// in the log domain.

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>

namespace qcs {

/// Deformation parameter q > 1 with cached ln q and q - 1.
class QParam {
 public:
  /// Throws DomainError unless q is finite and q > 1.
  explicit QParam(double q);

  /// Builds q = 1 + q_minus_one keeping q - 1 at full relative precision.
  /// Use this near the undeformed limit (q = 1 + 1e-9 and the like).
  static QParam from_excess(double q_minus_one);

  double q() const noexcept { return q_; }
  double ln_q() const noexcept { return ln_q_; }
  double qm1() const noexcept { return qm1_; }

  friend bool operator==(const QParam&, const QParam&) = default;

 private:
  QParam(double q, double qm1, double ln_q) noexcept : q_(q), ln_q_(ln_q), qm1_(qm1) {}

  double q_;
  double ln_q_;
  double qm1_;
};

/// sign * exp(ln_magnitude). sign == 0 means exactly zero.
struct LogValue {
  double ln_magnitude = 0.0;
  int sign = 0;

  static LogValue zero() noexcept { return {0.0, 0}; }
  static LogValue from_ln(double ln_magnitude) noexcept { return {ln_magnitude, 1}; }
  static LogValue from_value(double v) noexcept;

  /// exp-back to a double; may overflow to +-inf.
  double value() const noexcept;
  bool is_zero() const noexcept { return sign == 0; }

  friend LogValue operator*(LogValue a, LogValue b) noexcept;
  friend LogValue operator/(LogValue a, LogValue b);
};

/// Machine epsilon used by every series stopping rule (2^-52).
inline constexpr double kSeriesEpsilon = 2.220446049250313e-16;

/// Hard cap on series length; exceeding it raises ConvergenceError.
inline constexpr int kSeriesTermCap = 10000;

/// [n]_q = (q^n - 1)/(q - 1). Throws OverflowError when q^n leaves the
/// double range, DomainError for n < 0.
double q_number(int n, const QParam& qp);

/// ln [n]_q for n >= 1; valid far beyond the range of q_number.
double q_number_ln(int n, const QParam& qp);

/// ln [n]_q! as a LogValue (sign +1).
LogValue q_factorial_ln(int n, const QParam& qp);

/// ln Gamma_{1/q}(n+1) from the finite product prod_{k=1}^n (1 - q^-k)/(1 - q^-1).
double q_gamma_inverse_base_ln(int n, const QParam& qp);

/// Relative discrepancy between ln [n]_q! and
/// n(n-1)/2 ln q + ln Gamma_{1/q}(n+1), normalised by max(1, |ln [n]_q!|).
double q_gamma_consistency(int n, const QParam& qp);

/// Streams [k]_q and ln [k]_q! for k = 0, 1, 2, ... using the recurrence
/// [k+1]_q = 1 + q [k]_q while it stays finite.
class QFactorialLadder {
 public:
  explicit QFactorialLadder(const QParam& qp) noexcept : qp_(qp) {}

  /// Steps k -> k+1 and returns ln [k+1]_q.
  double advance();

  int index() const noexcept { return k_; }
  double ln_number() const noexcept { return ln_number_; }
  double ln_factorial() const noexcept { return ln_factorial_; }

 private:
  QParam qp_;
  int k_ = 0;
  double number_ = 0.0;
  double ln_number_ = -std::numeric_limits<double>::infinity();
  double ln_factorial_ = 0.0;
  bool log_mode_ = false;
};

/// ln E_q(t), E_q(t) = sum_n t^n / [n]_q!.
///
/// For t >= 0 the terms are accumulated as a streaming log-sum-exp and the
/// loop stops after two consecutive terms fall below 2^-52 times the
/// running sum. Negative t is summed directly (alternating series, with
/// compensated summation); the returned sign reflects the zeros of E_q on
/// the negative axis. Accuracy for t < 0 degrades with the cancellation
/// ratio E_q(|t|)/|E_q(t)|.
LogValue q_exp_ln(double t, const QParam& qp);

/// Complex value carried as exp(ln_scale) * mantissa.
struct ScaledComplex {
  double ln_scale = 0.0;
  std::complex<double> mantissa{0.0, 0.0};

  std::complex<double> value() const;
};

/// E_q(w) for complex w. ln_scale = ln E_q(|w|), so |mantissa| <= 1.
ScaledComplex q_exp(std::complex<double> w, const QParam& qp);

/// ln of Jackson's exponential sum_n b^{n(n-1)/2} x^n / (b; b)_n with base
/// 0 < b < 1 and x >= 0.
double jackson_exp_ln(double x, double base);

/// Relative residual of E^J_{1/q}[(q-1)t] = E_q(qt), both sides summed from
/// their own series.
double jackson_identity_residual(double t, const QParam& qp);

using ComplexFunction = std::function<std::complex<double>(std::complex<double>)>;

/// Step used by q_derivative at xi = 0.
inline constexpr double kOriginDerivativeStep = 1e-6;

/// D_q f(xi) = [f(xi) - f(q xi)] / [(1 - q) xi].
///
/// At xi = 0 the difference quotient is undefined; the limit f'(0) is
/// approximated by the central difference [f(h) - f(-h)]/(2h), h = 1e-6.
/// Throws DomainError if f throws or returns a non-finite value.
std::complex<double> q_derivative(const ComplexFunction& f, std::complex<double> xi, const QParam& qp);

/// Undeformed (q = 1) reference values. QParam cannot represent q = 1, so
/// tests and the figure sweeps use these for the classical curves.
namespace classical {
double exp(double t);
double factorial(int n);
double number(int n);
}  // namespace classical

}  // namespace qcs
