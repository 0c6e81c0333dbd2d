#include "qcs/qmath.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qcs/errors.hpp"
#include "qcs/series.hpp"

namespace qcs {

namespace {

using series::CompensatedSum;
using series::kLnEpsilon;
using series::LogSum;
using series::StoppingRule;

constexpr double kLnDoubleMax = 709.782712893384;
constexpr int kHornerLimit = 256;

void require_nonnegative(int n, const char* where) {
  if (n < 0) throw DomainError(std::string(where) + ": n must be >= 0, got " + std::to_string(n));
}

[[noreturn]] void throw_no_convergence(const char* what) {
  throw ConvergenceError(std::string(what) + ": series did not converge within " +
                         std::to_string(kSeriesTermCap) + " terms");
}

}  // namespace

QParam::QParam(double q) : q_(q), ln_q_(0.0), qm1_(0.0) {
  if (!std::isfinite(q) || !(q > 1.0)) {
    throw DomainError("QParam: q must be finite and > 1, got " + std::to_string(q));
  }
  qm1_ = q - 1.0;
  ln_q_ = std::log1p(qm1_);
}

QParam QParam::from_excess(double q_minus_one) {
  if (!std::isfinite(q_minus_one) || !(q_minus_one > 0.0)) {
    throw DomainError("QParam: q - 1 must be finite and > 0");
  }
  const double q = 1.0 + q_minus_one;
  if (!(q > 1.0)) throw DomainError("QParam: q - 1 below double resolution of q");
  return QParam(q, q_minus_one, std::log1p(q_minus_one));
}

LogValue LogValue::from_value(double v) noexcept {
  if (v == 0.0) return zero();
  return {std::log(std::abs(v)), v > 0.0 ? 1 : -1};
}

double LogValue::value() const noexcept {
  if (sign == 0) return 0.0;
  return sign * std::exp(ln_magnitude);
}

LogValue operator*(LogValue a, LogValue b) noexcept {
  if (a.sign == 0 || b.sign == 0) return LogValue::zero();
  return {a.ln_magnitude + b.ln_magnitude, a.sign * b.sign};
}

LogValue operator/(LogValue a, LogValue b) {
  if (b.sign == 0) throw DomainError("LogValue: division by zero");
  if (a.sign == 0) return LogValue::zero();
  return {a.ln_magnitude - b.ln_magnitude, a.sign * b.sign};
}

double q_number(int n, const QParam& qp) {
  require_nonnegative(n, "q_number");
  if (n == 0) return 0.0;
  if (n * qp.ln_q() > kLnDoubleMax) {
    throw OverflowError("q_number: q^" + std::to_string(n) + " exceeds double range; use q_number_ln");
  }
  if (n <= kHornerLimit) {
    double x = 1.0;
    for (int k = 1; k < n; ++k) x = 1.0 + qp.q() * x;
    return x;
  }
  return std::expm1(n * qp.ln_q()) / qp.qm1();
}

double q_number_ln(int n, const QParam& qp) {
  require_nonnegative(n, "q_number_ln");
  if (n == 0) return -std::numeric_limits<double>::infinity();
  const double x = n * qp.ln_q();
  if (x < 700.0) return std::log(q_number(n, qp));
  // ln((q^n - 1)/(q - 1)) = n ln q + ln(1 - q^-n) - ln(q - 1)
  return x + std::log(-std::expm1(-x)) - std::log(qp.qm1());
}

double QFactorialLadder::advance() {
  ++k_;
  if (!log_mode_) {
    number_ = (k_ == 1) ? 1.0 : 1.0 + qp_.q() * number_;
    if (number_ < 1e300) {
      ln_number_ = std::log(number_);
    } else {
      log_mode_ = true;
    }
  }
  if (log_mode_) ln_number_ = q_number_ln(k_, qp_);
  ln_factorial_ += ln_number_;
  return ln_number_;
}

LogValue q_factorial_ln(int n, const QParam& qp) {
  require_nonnegative(n, "q_factorial_ln");
  QFactorialLadder ladder(qp);
  while (ladder.index() < n) ladder.advance();
  return LogValue::from_ln(ladder.ln_factorial());
}

double q_gamma_inverse_base_ln(int n, const QParam& qp) {
  require_nonnegative(n, "q_gamma_inverse_base_ln");
  // base b = 1/q: (1 - b^k)/(1 - b)
  const double ln_one_minus_b = std::log(-std::expm1(-qp.ln_q()));
  double acc = 0.0;
  for (int k = 1; k <= n; ++k) {
    acc += std::log(-std::expm1(-k * qp.ln_q())) - ln_one_minus_b;
  }
  return acc;
}

double q_gamma_consistency(int n, const QParam& qp) {
  const double lhs = q_factorial_ln(n, qp).ln_magnitude;
  const double half_nn1 = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  const double rhs = half_nn1 * qp.ln_q() + q_gamma_inverse_base_ln(n, qp);
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

LogValue q_exp_ln(double t, const QParam& qp) {
  if (!std::isfinite(t)) throw DomainError("q_exp_ln: non-finite argument");
  if (t == 0.0) return LogValue::from_ln(0.0);

  if (t > 0.0) {
    const double ln_t = std::log(t);
    QFactorialLadder ladder(qp);
    LogSum sum;
    StoppingRule stop;
    sum.add(0.0);
    for (int n = 1; n <= kSeriesTermCap; ++n) {
      ladder.advance();
      const double ln_term = n * ln_t - ladder.ln_factorial();
      sum.add(ln_term);
      if (stop.negligible(ln_term, sum.ln_total())) return LogValue::from_ln(sum.ln_total());
    }
    throw_no_convergence("q_exp_ln");
  }

  // Alternating series, scaled by E_q(|t|) so every term is <= 1.
  const double ln_scale = q_exp_ln(-t, qp).ln_magnitude;
  const double ln_abs_t = std::log(-t);
  QFactorialLadder ladder(qp);
  CompensatedSum sum;
  sum.add(std::exp(-ln_scale));
  int below = 0;
  for (int n = 1; n <= kSeriesTermCap; ++n) {
    ladder.advance();
    const double ln_term = n * ln_abs_t - ladder.ln_factorial() - ln_scale;
    const double term = std::exp(ln_term);
    sum.add((n % 2 == 0) ? term : -term);
    const bool past_peak = ladder.ln_number() > ln_abs_t;
    below = (past_peak && ln_term < 2.0 * kLnEpsilon) ? below + 1 : 0;
    if (below >= 2) {
      LogValue out = LogValue::from_value(sum.total());
      if (out.sign != 0) out.ln_magnitude += ln_scale;
      return out;
    }
  }
  throw_no_convergence("q_exp_ln");
}

std::complex<double> ScaledComplex::value() const {
  return std::exp(ln_scale) * mantissa;
}

ScaledComplex q_exp(std::complex<double> w, const QParam& qp) {
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
    throw DomainError("q_exp: non-finite argument");
  }
  const double r = std::abs(w);
  if (r == 0.0) return {0.0, {1.0, 0.0}};
  if (w.imag() == 0.0) {
    const LogValue lv = q_exp_ln(w.real(), qp);
    const double ln_scale = q_exp_ln(r, qp).ln_magnitude;
    return {ln_scale, {lv.sign == 0 ? 0.0 : lv.sign * std::exp(lv.ln_magnitude - ln_scale), 0.0}};
  }

  const double ln_scale = q_exp_ln(r, qp).ln_magnitude;
  const double ln_r = std::log(r);
  const double theta = std::arg(w);
  QFactorialLadder ladder(qp);
  CompensatedSum re;
  CompensatedSum im;
  re.add(std::exp(-ln_scale));
  int below = 0;
  for (int n = 1; n <= kSeriesTermCap; ++n) {
    ladder.advance();
    const double ln_term = n * ln_r - ladder.ln_factorial() - ln_scale;
    const std::complex<double> term = std::polar(std::exp(ln_term), n * theta);
    re.add(term.real());
    im.add(term.imag());
    const bool past_peak = ladder.ln_number() > ln_r;
    below = (past_peak && ln_term < 2.0 * kLnEpsilon) ? below + 1 : 0;
    if (below >= 2) return {ln_scale, {re.total(), im.total()}};
  }
  throw_no_convergence("q_exp");
}

double jackson_exp_ln(double x, double base) {
  if (!(base > 0.0 && base < 1.0)) throw DomainError("jackson_exp_ln: base must lie in (0, 1)");
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("jackson_exp_ln: x must be finite and >= 0");
  if (x == 0.0) return 0.0;
  const double ln_x = std::log(x);
  const double ln_b = std::log(base);
  double ln_pochhammer = 0.0;  // ln (b; b)_n
  LogSum sum;
  StoppingRule stop;
  sum.add(0.0);
  for (int n = 1; n <= kSeriesTermCap; ++n) {
    ln_pochhammer += std::log(-std::expm1(n * ln_b));
    const double nn = static_cast<double>(n);
    const double ln_term = 0.5 * nn * (nn - 1.0) * ln_b + nn * ln_x - ln_pochhammer;
    sum.add(ln_term);
    if (stop.negligible(ln_term, sum.ln_total())) return sum.ln_total();
  }
  throw_no_convergence("jackson_exp_ln");
}

double jackson_identity_residual(double t, const QParam& qp) {
  if (!(t >= 0.0)) throw DomainError("jackson_identity_residual: t must be >= 0");
  const double lhs = jackson_exp_ln(qp.qm1() * t, 1.0 / qp.q());
  const double rhs = q_exp_ln(qp.q() * t, qp).ln_magnitude;
  return std::abs(std::expm1(lhs - rhs));
}

std::complex<double> q_derivative(const ComplexFunction& f, std::complex<double> xi, const QParam& qp) {
  auto eval = [&f](std::complex<double> x) {
    std::complex<double> v;
    try {
      v = f(x);
    } catch (const std::exception& e) {
      throw DomainError(std::string("q_derivative: function evaluation failed: ") + e.what());
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw DomainError("q_derivative: function returned a non-finite value");
    }
    return v;
  };
  if (xi == std::complex<double>(0.0, 0.0)) {
    const double h = kOriginDerivativeStep;
    return (eval({h, 0.0}) - eval({-h, 0.0})) / (2.0 * h);
  }
  return (eval(xi) - eval(qp.q() * xi)) / (-qp.qm1() * xi);
}

namespace classical {

double exp(double t) { return std::exp(t); }

double factorial(int n) {
  require_nonnegative(n, "classical::factorial");
  return std::tgamma(n + 1.0);
}

double number(int n) {
  require_nonnegative(n, "classical::number");
  return static_cast<double>(n);
}

}  // namespace classical

}  // namespace qcs
