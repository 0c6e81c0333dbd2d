#include "qcs/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcs/errors.hpp"

namespace qcs::oracle {

namespace {

void require_t(double t, const char* where) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError(std::string(where) + ": t must be finite and >= 0");
}

struct Moments {
  double mean = 0.0;
  double second = 0.0;
  double tail_mass = 0.0;
};

Moments number_moments(double t, const FockSpace& fs) {
  require_t(t, "oracle");
  const TruncatedState s = coherent_vector(fs, {std::sqrt(t), 0.0});
  const OperatorMatrix n = build_number(fs);
  const OperatorMatrix n2{OperatorLabel::N, n.entries * n.entries};
  return {expectation(n, s.vector).real(), expectation(n2, s.vector).real(), s.tail_mass};
}

}  // namespace

OracleValue mean_photon(double t, const FockSpace& fs) {
  const Moments m = number_moments(t, fs);
  return {m.mean, m.tail_mass};
}

OracleValue mean_photon_squared(double t, const FockSpace& fs) {
  const Moments m = number_moments(t, fs);
  return {m.second, m.tail_mass};
}

OracleValue mandel_q(double t, const FockSpace& fs) {
  if (t == 0.0) throw DomainError("mandel_q: undefined at t = 0");
  const Moments m = number_moments(t, fs);
  return {(m.second - m.mean * m.mean - m.mean) / m.mean, m.tail_mass};
}

OracleValue metric_factor(double t, const FockSpace& fs) {
  require_t(t, "metric_factor");
  const double h = 1e-5 * std::max(1.0, t);
  const auto mean = [&](double s) { return number_moments(s, fs).mean; };
  const double tail = number_moments(t + 2.0 * h, fs).tail_mass;
  if (t < h) {
    return {(-3.0 * mean(t) + 4.0 * mean(t + h) - mean(t + 2.0 * h)) / (2.0 * h), tail};
  }
  return {(mean(t + h) - mean(t - h)) / (2.0 * h), tail};
}

OracleVariances quadrature_variances(std::complex<double> z, const FockSpace& fs) {
  const TruncatedState s = coherent_vector(fs, z);
  const OperatorMatrix x = build_quadrature_x(fs);
  const OperatorMatrix p = build_quadrature_p(fs);
  const auto variance = [&](const OperatorMatrix& op) {
    const double mean = expectation(op, s.vector).real();
    const double square = expectation({op.label, op.entries * op.entries}, s.vector).real();
    return square - mean * mean;
  };
  return {{variance(x), variance(p)}, s.tail_mass};
}

OracleValue squeeze_ratio(double t, const FockSpace& fs) {
  require_t(t, "squeeze_ratio");
  const OracleVariances v = quadrature_variances({std::sqrt(t), 0.0}, fs);
  return {2.0 * v.variances.var_x, v.tail_mass};
}

OracleValue snr(double t, const FockSpace& fs) {
  require_t(t, "snr");
  const TruncatedState s = coherent_vector(fs, {std::sqrt(t), 0.0});
  const OperatorMatrix x = build_quadrature_x(fs);
  const double mean = expectation(x, s.vector).real();
  const double square = expectation({x.label, x.entries * x.entries}, s.vector).real();
  return {mean * mean / (square - mean * mean), s.tail_mass};
}

OracleValue weight_tilde(double t, const FockSpace& fs) {
  require_t(t, "weight_tilde");
  const QParam& qp = fs.qparam();
  const double qt = qp.q() * t;
  const Eigen::VectorXcd v = coherent_vector_unnormalized(fs, {std::sqrt(qt), 0.0});
  const double norm2 = v.squaredNorm();
  double tail = 0.0;
  if (qt > 0.0) {
    const double ratio = std::exp(std::log(qt) - q_number_ln(fs.dim(), qp));
    tail = ratio < 1.0 ? std::norm(v(fs.dim() - 1)) / norm2 * ratio / (1.0 - ratio) : 1.0;
  }
  return {qp.qm1() / qp.ln_q() / norm2, tail};
}

}  // namespace qcs::oracle
