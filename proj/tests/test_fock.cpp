#include <cmath>

#include "doctest.h"
#include "qcs/coherent.hpp"
#include "qcs/errors.hpp"
#include "qcs/fock.hpp"

using namespace qcs;
using cd = std::complex<double>;

namespace {

Eigen::VectorXcd vacuum(int dim) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(0) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("FockSpace validation") {
  CHECK_THROWS_AS(FockSpace(1, QParam(2.0)), DomainError);
  CHECK_THROWS_AS(FockSpace(-3, QParam(2.0)), DomainError);
  const FockSpace fs(2, QParam(2.0));
  CHECK(fs.dim() == 2);
}

TEST_CASE("ladder matrix entries") {
  const FockSpace fs(6, QParam(2.0));
  const Ladder l = build_ladder(fs);
  CHECK(l.b.label == OperatorLabel::b);
  CHECK(l.b_dag.label == OperatorLabel::b_dag);
  CHECK(std::abs(l.b.entries(0, 1) - cd(1.0, 0.0)) == 0.0);
  CHECK(std::abs(l.b.entries(2, 3) - cd(std::sqrt(7.0), 0.0)) < 1e-15);
  CHECK(std::abs(l.b_dag.entries(3, 2) - cd(std::sqrt(7.0), 0.0)) < 1e-15);
  CHECK(l.b.entries(3, 2) == cd(0.0, 0.0));
  CHECK(l.b.dim() == 6);
}

TEST_CASE("boson realization reproduces the ladder") {
  for (double q : {1.1, 2.5}) {
    const FockSpace fs(40, QParam(q));
    const Ladder direct = build_ladder(fs);
    const Ladder mapped = boson_realization(fs);
    const double scale = direct.b.entries.cwiseAbs().maxCoeff();
    CHECK((direct.b.entries - mapped.b.entries).cwiseAbs().maxCoeff() <= 1e-13 * scale);
    CHECK((direct.b_dag.entries - mapped.b_dag.entries).cwiseAbs().maxCoeff() <= 1e-13 * scale);
  }
}

TEST_CASE("algebra residuals") {
  for (double q : {1.1, 1.5, 2.0, 2.5}) {
    for (int dim : {2, 10, 30, 60}) {
      const FockSpace fs(dim, QParam(q));
      CHECK(commutator_residual(fs) <= 1e-12);
      CHECK(boson_map_residual(fs) <= 1e-12);
      CHECK(spectrum_residual(fs, 1.0) <= 1e-12);
      CHECK(spectrum_residual(fs, 0.3) <= 1e-12);
    }
  }
}

TEST_CASE("the truncation edge breaks the commutator") {
  const FockSpace fs(20, QParam(1.5));
  CHECK(commutator_residual(fs, true) > 0.1);
  const Eigen::MatrixXcd c = commutator_matrix(fs);
  CHECK(std::abs(c(5, 5)) < 1e-12 * q_number(6, fs.qparam()));
  CHECK(std::abs(c(19, 19)) > 1.0);
}

TEST_CASE("[N]_q is the b^dag b diagonal") {
  const FockSpace fs(50, QParam(2.0));
  const Ladder l = build_ladder(fs);
  const Eigen::MatrixXcd bdb = l.b_dag.entries * l.b.entries;
  const OperatorMatrix nq = build_q_number(fs);
  CHECK(nq.label == OperatorLabel::Nq);
  for (int n = 0; n < 50; ++n) CHECK(std::abs(bdb(n, n) - nq.entries(n, n)) <= 1e-15 * std::max(1.0, q_number(n, fs.qparam())));
}

TEST_CASE("hermiticity") {
  for (double q : {1.1, 2.5}) {
    const FockSpace fs(60, QParam(q));
    CHECK(hermiticity_defect(build_quadrature_x(fs)) <= 1e-14);
    CHECK(hermiticity_defect(build_quadrature_p(fs)) <= 1e-14);
    CHECK(hermiticity_defect(build_position(fs, 0.8)) <= 1e-14);
    CHECK(hermiticity_defect(build_momentum(fs, 1.3)) <= 1e-14);
    CHECK(hermiticity_defect(build_hamiltonian(fs, 1.0)) <= 1e-14);
    CHECK(hermiticity_defect(build_number(fs)) == 0.0);
  }
  CHECK_THROWS_AS(build_hamiltonian(FockSpace(5, QParam(2.0)), 0.0), DomainError);
}

TEST_CASE("expectation examples") {
  const FockSpace fs(20, QParam(1.5));
  const Eigen::VectorXcd v = vacuum(20);
  CHECK(std::abs(expectation(build_number(fs), v)) == 0.0);
  const OperatorMatrix x = build_quadrature_x(fs);
  CHECK(std::abs(expectation(x, v)) == 0.0);
  CHECK(std::abs(expectation({OperatorLabel::X, x.entries * x.entries}, v) - 0.5) <= 1e-15);
  const OperatorMatrix p = build_quadrature_p(fs);
  CHECK(std::abs(expectation({OperatorLabel::P, p.entries * p.entries}, v) - 0.5) <= 1e-15);

  const FockSpace fs40(40, QParam(1.5));
  const TruncatedState s = coherent_vector(fs40, {0.4, 0.0});
  const cd n = expectation(build_number(fs40), s.vector);
  CHECK(std::abs(n.imag()) <= 1e-12);
  CHECK(std::abs(n.real() - 0.16 * s_coefficient(1, 1, 0.16, QParam(1.5))) <= 1e-10);
}

TEST_CASE("expectation errors") {
  const FockSpace fs(10, QParam(1.5));
  CHECK_THROWS_AS(expectation(build_number(fs), vacuum(9)), DimensionError);
  Eigen::VectorXcd v = vacuum(10);
  v(1) = 0.5;
  CHECK_THROWS_AS(expectation(build_number(fs), v), DomainError);
}

TEST_CASE("coherent_vector matches the log-domain amplitudes") {
  for (double q : {1.1, 1.5, 2.5}) {
    const FockSpace fs(80, QParam(q));
    for (cd z : {cd(0.0, 0.0), cd(0.3, -0.2), cd(1.2, 1.5)}) {
      const TruncatedState s = coherent_vector(fs, z);
      const Eigen::VectorXcd reference = make_state(z, QParam(q)).fock_vector(80);
      CHECK((s.vector - reference).cwiseAbs().maxCoeff() <= 1e-14);
      CHECK(s.tail_mass <= 1e-30);
      CHECK(std::abs(s.vector.squaredNorm() - 1.0) <= 1e-14);
    }
  }
  CHECK_THROWS_AS(coherent_vector(FockSpace(10, QParam(2.0)), cd(NAN, 0.0)), DomainError);
}

TEST_CASE("operator labels") {
  CHECK(to_string(OperatorLabel::b_dag) == "b_dag");
  CHECK(to_string(OperatorLabel::H) == "H");
  CHECK(to_string(OperatorLabel::Nq) == "[N]_q");
}
