#include "qcs/coherent.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qcs/errors.hpp"
#include "qcs/series.hpp"

namespace qcs {

namespace {

void require_finite(std::complex<double> z, const char* where) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError(std::string(where) + ": non-finite label");
  }
}

void require_nonnegative_t(double t, const char* where) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError(std::string(where) + ": t must be finite and >= 0, got " + std::to_string(t));
  }
}

// ln k! and ln [k]_q!, extended on demand.
class FactorialTables {
 public:
  explicit FactorialTables(const QParam& qp) : ladder_(qp) {}

  double ln_factorial(int k) {
    extend(k);
    return ln_fact_[k];
  }
  double ln_q_factorial(int k) {
    extend(k);
    return ln_qfact_[k];
  }

 private:
  void extend(int k) {
    while (static_cast<int>(ln_fact_.size()) <= k) {
      const int next = static_cast<int>(ln_fact_.size());
      ln_fact_.push_back(ln_fact_.back() + std::log(static_cast<double>(next)));
      ladder_.advance();
      ln_qfact_.push_back(ladder_.ln_factorial());
    }
  }

  QFactorialLadder ladder_;
  std::vector<double> ln_fact_{0.0};
  std::vector<double> ln_qfact_{0.0};
};

// ln sum_{n >= first} exp(coef(n) + (n - first) ln t) for t >= 0.
template <class Coefficient>
double log_series(double t, int first, Coefficient coef) {
  if (t == 0.0) return coef(first);
  const double ln_t = std::log(t);
  series::LogSum sum;
  series::StoppingRule stop;
  for (int n = first; n <= first + kSeriesTermCap; ++n) {
    const double ln_term = coef(n) + (n - first) * ln_t;
    sum.add(ln_term);
    if (stop.negligible(ln_term, sum.ln_total())) return sum.ln_total();
  }
  throw ConvergenceError("coherent: series did not converge within the term cap");
}

double ln_weight_prefactor(const QParam& qp) { return std::log(qp.qm1() / qp.ln_q()); }

// sum_{n>=1} n^power t^{n-1} / [n]_q!, as a logarithm.
double ln_number_moment_series(int power, double t, const QParam& qp) {
  FactorialTables tables(qp);
  return log_series(t, 1, [&](int n) { return power * std::log(static_cast<double>(n)) - tables.ln_q_factorial(n); });
}

}  // namespace

CoherentState::CoherentState(std::complex<double> z, const QParam& qp)
    : z_(z), t_(0.0), qp_(qp), phase_(0.0), norm_ln_(0.0), tail_mass_(0.0) {
  require_finite(z, "make_state");
  t_ = std::norm(z);
  phase_ = std::arg(z);
  norm_ln_ = q_exp_ln(t_, qp_).ln_magnitude;

  if (t_ == 0.0) {
    amp_ln_.push_back(LogValue::from_ln(0.0));
    for (int n = 1; n <= kGuardTerms; ++n) amp_ln_.push_back(LogValue::zero());
    return;
  }

  const double ln_abs_z = 0.5 * std::log(t_);
  const double ln_t = std::log(t_);
  QFactorialLadder ladder(qp_);
  amp_ln_.push_back(LogValue::from_ln(0.0));
  // Extend until the tail after the current index is certified below the
  // target, then add guard terms.
  int guard = -1;
  for (int n = 0; n < kSeriesTermCap; ++n) {
    const double ln_p = 2.0 * amp_ln_.back().ln_magnitude - norm_ln_;
    const double ln_next = ladder.advance();  // ln [n+1]_q
    const double ln_ratio = ln_t - ln_next;
    const double ratio = std::exp(ln_ratio);
    if (guard < 0 && ratio < 1.0 && std::exp(ln_p) * ratio / (1.0 - ratio) < kTailMassTarget) guard = 0;
    if (guard >= 0) {
      if (guard == kGuardTerms) {
        tail_mass_ = std::exp(ln_p) * ratio / (1.0 - ratio);
        return;
      }
      ++guard;
    }
    amp_ln_.push_back(LogValue::from_ln((n + 1) * ln_abs_z - 0.5 * ladder.ln_factorial()));
  }
  throw ConvergenceError("make_state: amplitude ladder did not reach the tail target");
}

std::vector<double> CoherentState::photon_distribution() const {
  std::vector<double> p;
  p.reserve(amp_ln_.size());
  for (const LogValue& a : amp_ln_) {
    p.push_back(a.is_zero() ? 0.0 : std::exp(2.0 * a.ln_magnitude - norm_ln_));
  }
  return p;
}

Eigen::VectorXcd CoherentState::fock_vector(int dim) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  if (dim <= 0) return v;
  if (t_ == 0.0) {
    v(0) = 1.0;
    return v;
  }
  const double ln_abs_z = 0.5 * std::log(t_);
  QFactorialLadder ladder(qp_);
  for (int n = 0; n < dim; ++n) {
    if (n > 0) ladder.advance();
    const double ln_mag = n * ln_abs_z - 0.5 * ladder.ln_factorial() - 0.5 * norm_ln_;
    v(n) = std::polar(std::exp(ln_mag), n * phase_);
  }
  return v;
}

double eigenstate_residual(const CoherentState& cs, const FockSpace& fs) {
  if (fs.dim() < cs.n_max()) {
    throw DimensionError("eigenstate_residual: Fock dimension " + std::to_string(fs.dim()) +
                         " is below the state's n_max " + std::to_string(cs.n_max()));
  }
  if (!(fs.qparam() == cs.qparam())) throw DomainError("eigenstate_residual: q mismatch");
  const Eigen::VectorXcd v = cs.fock_vector(fs.dim());
  const Ladder l = build_ladder(fs);
  return (l.b.entries * v - cs.z() * v).norm();
}

std::complex<double> overlap(std::complex<double> z1, std::complex<double> z2, const QParam& qp) {
  require_finite(z1, "overlap");
  require_finite(z2, "overlap");
  const ScaledComplex kernel = q_exp(std::conj(z2) * z1, qp);
  const double ln_norm = 0.5 * (q_exp_ln(std::norm(z1), qp).ln_magnitude + q_exp_ln(std::norm(z2), qp).ln_magnitude);
  return std::exp(kernel.ln_scale - ln_norm) * kernel.mantissa;
}

double label_continuity_modulus(std::complex<double> z, std::complex<double> dz, const QParam& qp) {
  return 2.0 * (1.0 - overlap(z + dz, z, qp).real());
}

double weight_tilde_ln(double t, const QParam& qp) {
  require_nonnegative_t(t, "weight_tilde");
  return ln_weight_prefactor(qp) - q_exp_ln(qp.q() * t, qp).ln_magnitude;
}

double weight_tilde(double t, const QParam& qp) { return std::exp(weight_tilde_ln(t, qp)); }

double weight_full(double t, const QParam& qp) {
  require_nonnegative_t(t, "weight_full");
  const double ln_w = ln_weight_prefactor(qp) + q_exp_ln(t, qp).ln_magnitude - q_exp_ln(qp.q() * t, qp).ln_magnitude;
  return std::exp(ln_w) / std::numbers::pi;
}

double s_coefficient(int p, int r, double t, const QParam& qp) {
  require_nonnegative_t(t, "s_coefficient");
  if (p < 0 || r < 0 || p > 4 || r > 4) {
    throw DomainError("s_coefficient: p and r must lie in [0, 4]");
  }
  FactorialTables tables(qp);
  const double ln_sum = log_series(t, 0, [&](int n) {
    return 0.5 * (tables.ln_factorial(n + p) + tables.ln_factorial(n + r) - tables.ln_q_factorial(n + p) -
                  tables.ln_q_factorial(n + r)) -
           tables.ln_factorial(n);
  });
  return std::exp(ln_sum - q_exp_ln(t, qp).ln_magnitude);
}

double mean_photon(double t, const QParam& qp) { return t * s_coefficient(1, 1, t, qp); }

double mean_photon_squared(double t, const QParam& qp) {
  require_nonnegative_t(t, "mean_photon_squared");
  if (t == 0.0) return 0.0;
  return t * std::exp(ln_number_moment_series(2, t, qp) - q_exp_ln(t, qp).ln_magnitude);
}

double metric_factor(double t, const QParam& qp) {
  require_nonnegative_t(t, "metric_factor");
  const double second = std::exp(ln_number_moment_series(2, t, qp) - q_exp_ln(t, qp).ln_magnitude);
  const double s11 = s_coefficient(1, 1, t, qp);
  return second - t * s11 * s11;
}

double mandel_q(double t, const QParam& qp) {
  require_nonnegative_t(t, "mandel_q");
  if (t == 0.0) throw DomainError("mandel_q: undefined at t = 0 (0/0; limit is 0 from below)");
  const double ln_norm = q_exp_ln(t, qp).ln_magnitude;
  const double mean = t * std::exp(ln_number_moment_series(1, t, qp) - ln_norm);
  const double second = t * std::exp(ln_number_moment_series(2, t, qp) - ln_norm);
  return (second - mean * mean - mean) / mean;
}

double mandel_q_operator_identity(double t, const QParam& qp) {
  require_nonnegative_t(t, "mandel_q_operator_identity");
  if (t == 0.0) throw DomainError("mandel_q_operator_identity: undefined at t = 0");
  const double mean = t * s_coefficient(1, 1, t, qp);
  const double second = t * t * s_coefficient(2, 2, t, qp) + mean;
  return (second - mean * mean - mean) / mean;
}

QuadratureVariances quadrature_variances(std::complex<double> z, const QParam& qp) {
  require_finite(z, "quadrature_variances");
  const double t = std::norm(z);
  const double s20 = s_coefficient(2, 0, t, qp);
  const double s10 = s_coefficient(1, 0, t, qp);
  const double s11 = s_coefficient(1, 1, t, qp);
  const double common = t * (s11 - s20) + 0.5;
  const double spread = s20 - s10 * s10;
  return {2.0 * z.real() * z.real() * spread + common, 2.0 * z.imag() * z.imag() * spread + common};
}

std::complex<double> quadrature_means(std::complex<double> z, const QParam& qp) {
  require_finite(z, "quadrature_means");
  const double s10 = s_coefficient(1, 0, std::norm(z), qp);
  return std::sqrt(2.0) * s10 * z;
}

double squeeze_ratio(double t, const QParam& qp) {
  require_nonnegative_t(t, "squeeze_ratio");
  return 2.0 * quadrature_variances({std::sqrt(t), 0.0}, qp).var_x;
}

SnrReport snr(double t, const QParam& qp) {
  require_nonnegative_t(t, "snr");
  const double s10 = s_coefficient(1, 0, t, qp);
  const double var_x = quadrature_variances({std::sqrt(t), 0.0}, qp).var_x;
  const double mean = mean_photon(t, qp);
  return {2.0 * t * s10 * s10 / var_x, 4.0 * mean, 4.0 * mean * (mean + 1.0)};
}

std::complex<double> bargmann_eval(std::complex<double> z, std::complex<double> xi, const QParam& qp) {
  require_finite(z, "bargmann_eval");
  require_finite(xi, "bargmann_eval");
  const ScaledComplex e = q_exp(z * xi, qp);
  return std::exp(e.ln_scale - 0.5 * q_exp_ln(std::norm(z), qp).ln_magnitude) * e.mantissa;
}

double bargmann_eigen_residual(std::complex<double> z, std::complex<double> xi, const QParam& qp) {
  const auto psi = [&](std::complex<double> x) { return bargmann_eval(z, x, qp); };
  const std::complex<double> dq = q_derivative(psi, xi, qp);
  const std::complex<double> expected = z * psi(xi);
  if (z == std::complex<double>(0.0, 0.0)) return std::abs(dq);
  return std::abs(dq - expected) / std::abs(expected);
}

}  // namespace qcs
