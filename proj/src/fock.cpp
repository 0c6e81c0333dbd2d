#include "qcs/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qcs/errors.hpp"

namespace qcs {

namespace {

using cd = std::complex<double>;

Eigen::MatrixXcd zeros(int dim) { return Eigen::MatrixXcd::Zero(dim, dim); }

}  // namespace

std::string_view to_string(OperatorLabel label) {
  switch (label) {
    case OperatorLabel::b: return "b";
    case OperatorLabel::b_dag: return "b_dag";
    case OperatorLabel::N: return "N";
    case OperatorLabel::Nq: return "[N]_q";
    case OperatorLabel::a: return "a";
    case OperatorLabel::a_dag: return "a_dag";
    case OperatorLabel::X: return "X";
    case OperatorLabel::P: return "P";
    case OperatorLabel::x: return "x";
    case OperatorLabel::p: return "p";
    case OperatorLabel::H: return "H";
  }
  return "?";
}

FockSpace::FockSpace(int dim, const QParam& qp) : dim_(dim), qp_(qp) {
  if (dim < 2) throw DomainError("FockSpace: dimension must be >= 2, got " + std::to_string(dim));
}

Ladder build_ladder(const FockSpace& fs) {
  const int d = fs.dim();
  Eigen::MatrixXcd b = zeros(d);
  for (int n = 1; n < d; ++n) b(n - 1, n) = std::sqrt(q_number(n, fs.qparam()));
  Eigen::MatrixXcd b_dag = b.adjoint();
  return {{OperatorLabel::b, std::move(b)}, {OperatorLabel::b_dag, std::move(b_dag)}};
}

Ladder build_boson_ladder(const FockSpace& fs) {
  const int d = fs.dim();
  Eigen::MatrixXcd a = zeros(d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  Eigen::MatrixXcd a_dag = a.adjoint();
  return {{OperatorLabel::a, std::move(a)}, {OperatorLabel::a_dag, std::move(a_dag)}};
}

Ladder boson_realization(const FockSpace& fs) {
  const int d = fs.dim();
  const Ladder bosons = build_boson_ladder(fs);
  Eigen::MatrixXcd ratio = zeros(d);  // sqrt([N]_q / N), zero on the vacuum
  for (int n = 1; n < d; ++n) ratio(n, n) = std::sqrt(q_number(n, fs.qparam()) / n);
  Eigen::MatrixXcd b = bosons.b.entries * ratio;
  Eigen::MatrixXcd b_dag = ratio * bosons.b_dag.entries;
  return {{OperatorLabel::b, std::move(b)}, {OperatorLabel::b_dag, std::move(b_dag)}};
}

OperatorMatrix build_number(const FockSpace& fs) {
  Eigen::MatrixXcd m = zeros(fs.dim());
  for (int n = 0; n < fs.dim(); ++n) m(n, n) = static_cast<double>(n);
  return {OperatorLabel::N, std::move(m)};
}

OperatorMatrix build_q_number(const FockSpace& fs) {
  Eigen::MatrixXcd m = zeros(fs.dim());
  for (int n = 0; n < fs.dim(); ++n) m(n, n) = q_number(n, fs.qparam());
  return {OperatorLabel::Nq, std::move(m)};
}

OperatorMatrix build_quadrature_x(const FockSpace& fs) {
  const Ladder a = build_boson_ladder(fs);
  return {OperatorLabel::X, (a.b.entries + a.b_dag.entries) / std::sqrt(2.0)};
}

OperatorMatrix build_quadrature_p(const FockSpace& fs) {
  const Ladder a = build_boson_ladder(fs);
  return {OperatorLabel::P, (a.b.entries - a.b_dag.entries) / (cd(0.0, 1.0) * std::sqrt(2.0))};
}

OperatorMatrix build_position(const FockSpace& fs, double length_scale) {
  const Ladder l = build_ladder(fs);
  return {OperatorLabel::x, length_scale * (l.b_dag.entries + l.b.entries)};
}

OperatorMatrix build_momentum(const FockSpace& fs, double momentum_scale) {
  const Ladder l = build_ladder(fs);
  return {OperatorLabel::p, cd(0.0, momentum_scale) * (l.b_dag.entries - l.b.entries)};
}

OperatorMatrix build_hamiltonian(const FockSpace& fs, double hbar_omega) {
  if (!(hbar_omega > 0.0)) throw DomainError("build_hamiltonian: hbar*omega must be > 0");
  const Ladder l = build_ladder(fs);
  const double prefactor = 0.25 * (1.0 + fs.qparam().q()) * hbar_omega;
  Eigen::MatrixXcd anticommutator = l.b.entries * l.b_dag.entries + l.b_dag.entries * l.b.entries;
  return {OperatorLabel::H, prefactor * anticommutator};
}

Eigen::MatrixXcd commutator_matrix(const FockSpace& fs) {
  const Ladder l = build_ladder(fs);
  const double q = fs.qparam().q();
  return l.b.entries * l.b_dag.entries - q * (l.b_dag.entries * l.b.entries) -
         Eigen::MatrixXcd::Identity(fs.dim(), fs.dim());
}

double commutator_residual(const FockSpace& fs, bool include_edge) {
  const Ladder l = build_ladder(fs);
  const double q = fs.qparam().q();
  const Eigen::MatrixXcd bbd = l.b.entries * l.b_dag.entries;
  const Eigen::MatrixXcd bdb = l.b_dag.entries * l.b.entries;
  const Eigen::MatrixXcd r = bbd - q * bdb - Eigen::MatrixXcd::Identity(fs.dim(), fs.dim());
  const int block = include_edge ? fs.dim() : fs.dim() - 1;
  double worst = 0.0;
  for (int i = 0; i < block; ++i) {
    for (int j = 0; j < block; ++j) {
      const double scale = 1.0 + std::abs(bbd(i, j)) + q * std::abs(bdb(i, j));
      worst = std::max(worst, std::abs(r(i, j)) / scale);
    }
  }
  return worst;
}

double boson_map_residual(const FockSpace& fs) {
  const Ladder l = build_ladder(fs);
  const Eigen::MatrixXcd bdb = l.b_dag.entries * l.b.entries;
  const Eigen::MatrixXcd bbd = l.b.entries * l.b_dag.entries;
  double worst_lower = 0.0;
  for (int n = 0; n < fs.dim(); ++n) {
    const double expected = q_number(n, fs.qparam());
    worst_lower = std::max(worst_lower, std::abs(bdb(n, n) - expected) / std::max(1.0, expected));
  }
  double worst_upper = 0.0;
  for (int n = 0; n < fs.dim() - 1; ++n) {
    const double expected = q_number(n + 1, fs.qparam());
    worst_upper = std::max(worst_upper, std::abs(bbd(n, n) - expected) / std::max(1.0, expected));
  }
  return worst_lower + worst_upper;
}

double spectrum_residual(const FockSpace& fs, double hbar_omega) {
  const OperatorMatrix h = build_hamiltonian(fs, hbar_omega);
  const double q = fs.qparam().q();
  double worst = 0.0;
  for (int n = 0; n <= fs.dim() - 2; ++n) {
    const double closed = 0.25 * (1.0 + q) * ((1.0 + q) * q_number(n, fs.qparam()) + 1.0) * hbar_omega;
    worst = std::max(worst, std::abs(h.entries(n, n) - closed) / closed);
  }
  return worst;
}

double hermiticity_defect(const OperatorMatrix& op) {
  return (op.entries - op.entries.adjoint()).cwiseAbs().maxCoeff();
}

std::complex<double> expectation(const OperatorMatrix& op, const Eigen::VectorXcd& state) {
  if (op.entries.rows() != state.size() || op.entries.cols() != state.size()) {
    throw DimensionError("expectation: operator is " + std::to_string(op.entries.rows()) + "x" +
                         std::to_string(op.entries.cols()) + ", state has " + std::to_string(state.size()) +
                         " components");
  }
  if (std::abs(state.squaredNorm() - 1.0) > 1e-10) {
    throw DomainError("expectation: state is not normalised");
  }
  return state.dot(op.entries * state);
}

Eigen::VectorXcd coherent_vector_unnormalized(const FockSpace& fs, std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("coherent_vector: non-finite label");
  }
  const int d = fs.dim();
  const Ladder l = build_ladder(fs);
  const Eigen::MatrixXcd bdb = l.b_dag.entries * l.b.entries;

  Eigen::VectorXcd term = Eigen::VectorXcd::Zero(d);
  term(0) = 1.0;
  Eigen::VectorXcd sum = term;
  for (int n = 1; n < d; ++n) {
    const double qn = bdb(n, n).real();
    term = (z / qn) * (l.b_dag.entries * term);
    sum += term;
  }
  return sum;
}

TruncatedState coherent_vector(const FockSpace& fs, std::complex<double> z) {
  const int d = fs.dim();
  const Eigen::VectorXcd sum = coherent_vector_unnormalized(fs, z);
  const double norm2 = sum.squaredNorm();
  TruncatedState out{sum / std::sqrt(norm2), 0.0};

  const double t = std::norm(z);
  if (t > 0.0) {
    const double p_last = std::norm(out.vector(d - 1));
    const double ratio = std::exp(std::log(t) - q_number_ln(d, fs.qparam()));
    out.tail_mass = ratio < 1.0 ? p_last * ratio / (1.0 - ratio) : std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace qcs
