#include <cmath>

#include "doctest.h"
#include "qcs/errors.hpp"
#include "qcs/oscillator.hpp"

using namespace qcs;
using cd = std::complex<double>;

namespace {

OscillatorConfig config(double alpha, double beta, double hbar = 1.0, double mass = 1.0, double omega = 1.0) {
  return {mass, omega, hbar, alpha, beta};
}

// alpha, beta giving a chosen q with alpha/beta = ratio.
OscillatorConfig config_for_q(double q, double ratio, double hbar = 1.0) {
  const double s = (q - 1.0) / (q + 1.0) / hbar;
  return config(s * std::sqrt(ratio), s / std::sqrt(ratio), hbar);
}

}  // namespace

TEST_CASE("configuration validation") {
  CHECK_THROWS_AS(validate(config(0.0, 0.0)), DomainError);
  CHECK_THROWS_AS(validate(config(-0.1, 0.2)), DomainError);
  CHECK_THROWS_AS(validate(config(0.1, 0.2, 0.0)), DomainError);
  CHECK_THROWS_AS(validate(config(0.1, 0.2, 1.0, -1.0)), DomainError);
  CHECK_THROWS_AS(validate(config(0.1, 0.2, 1.0, 1.0, 0.0)), DomainError);
  CHECK_NOTHROW(validate(config(0.0, 0.2)));
}

TEST_CASE("frame from alpha and beta") {
  const DeformedFrame two = frame_from_alphabeta(config(1.0 / 3.0, 1.0 / 3.0));
  CHECK(two.qp.q() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(two.kind == FrameKind::interior);

  const DeformedFrame f = frame_from_alphabeta(config(0.01, 0.04));
  CHECK(f.qp.q() == doctest::Approx(51.0 / 49.0).epsilon(1e-15));
  CHECK(f.L == doctest::Approx(std::sqrt((51.0 / 49.0 - 1.0) / 0.04)).epsilon(1e-14));
  CHECK(std::abs(4.0 * f.K * f.L / (1.0 + f.qp.q()) - 1.0) <= 1e-12);

  const DeformedFrame tiny = frame_from_alphabeta(config(1e-10, 1e-10));
  CHECK(tiny.qp.qm1() == doctest::Approx(2e-10).epsilon(1e-9));

  CHECK_THROWS_AS(frame_from_alphabeta(config(1.0, 1.0)), DomainError);
  CHECK_THROWS_AS(frame_from_alphabeta(config(2.0, 3.0)), DomainError);
  CHECK_THROWS_AS(frame_from_alphabeta(config(0.0, 0.3)), DomainError);
  CHECK_THROWS_AS(frame_from_alphabeta(config(0.3, 0.0)), DomainError);
}

TEST_CASE("frame invariants") {
  for (double q : {1.001, 1.1, 1.5, 2.0, 3.0, 10.0}) {
    for (double ratio : {0.1, 1.0, 7.0}) {
      for (double hbar : {1.0, 0.25}) {
        const DeformedFrame f = frame_from_alphabeta(config_for_q(q, ratio, hbar));
        CHECK(f.qp.q() == doctest::Approx(q).epsilon(1e-13));
        CHECK(std::abs(4.0 * f.K * f.L / (hbar * (1.0 + f.qp.q())) - 1.0) <= 1e-12);
        const double shrink = std::sqrt(f.qp.qm1() / f.qp.q());
        CHECK(std::abs(f.dx0 - f.L * shrink) <= 1e-12 * f.dx0);
        CHECK(std::abs(f.dp0 - f.K * shrink) <= 1e-12 * f.dp0);
        const double product = hbar * (1.0 + f.qp.q()) * f.qp.qm1() / (4.0 * f.qp.q());
        CHECK(std::abs(f.dx0 * f.dp0 / product - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("limit frames") {
  const DeformedFrame a = limit_frames(config(0.0, 0.25));
  CHECK(a.kind == FrameKind::alpha_zero);
  CHECK(a.dx0 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(a.dp0 == 0.0);
  CHECK(a.qp.qm1() == kLimitSentinelExcess);

  const DeformedFrame b = limit_frames(config(0.09, 0.0));
  CHECK(b.kind == FrameKind::beta_zero);
  CHECK(b.dp0 == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(b.dx0 == 0.0);

  for (const DeformedFrame& f : {a, b}) CHECK(std::abs(4.0 * f.K * f.L / (1.0 + f.qp.q()) - 1.0) <= 1e-12);
  // The generic formula approaches the reported limit.
  CHECK(a.L * std::sqrt(a.qp.qm1() / a.qp.q()) == doctest::Approx(0.5).epsilon(1e-9));

  CHECK_THROWS_AS(limit_frames(config(0.0, 0.0)), DomainError);
  CHECK_THROWS_AS(limit_frames(config(0.1, 0.1)), DomainError);
  CHECK(make_frame(config(0.1, 0.1)).kind == FrameKind::interior);
  CHECK(make_frame(config(0.0, 0.1)).kind == FrameKind::alpha_zero);
}

TEST_CASE("xp statistics") {
  DeformedFrame f;
  f.qp = QParam(2.0);
  f.L = 1.0;
  f.K = 1.0;
  const XpStatistics vac = xp_statistics({0.0, 0.0}, f);
  CHECK(vac.mean_x == 0.0);
  CHECK(vac.mean_p == 0.0);
  CHECK(vac.var_x == 1.0);
  CHECK(vac.var_p == 1.0);
  CHECK(xp_statistics({0.5, 0.0}, f).var_x == doctest::Approx(1.25).epsilon(1e-15));

  const OscillatorConfig cfg = config_for_q(1.5, 2.0);
  const DeformedFrame g = frame_from_alphabeta(cfg);
  const FockSpace fs(80, g.qp);
  for (cd z : {cd(0.3, 0.4), cd(0.0, 0.0), cd(-1.2, 1.1), cd(2.0, -0.1)}) {
    const XpStatistics a = xp_statistics(z, g);
    const XpStatistics b = xp_statistics_matrix(z, g, fs);
    CHECK(std::abs(a.mean_x - b.mean_x) <= 1e-9);
    CHECK(std::abs(a.mean_p - b.mean_p) <= 1e-9);
    CHECK(std::abs(a.var_x - b.var_x) <= 1e-9);
    CHECK(std::abs(a.var_p - b.var_p) <= 1e-9);
  }
  CHECK_THROWS_AS(xp_statistics_matrix({0.1, 0.0}, g, FockSpace(20, QParam(2.0))), DomainError);
}

TEST_CASE("variances grow linearly in t") {
  const DeformedFrame f = frame_from_alphabeta(config_for_q(1.7, 0.5));
  double previous = xp_statistics({0.0, 0.0}, f).var_x;
  for (double r = 0.1; r <= 3.0; r += 0.1) {
    const XpStatistics s = xp_statistics(std::polar(r, 0.3), f);
    CHECK(s.var_x > previous);
    previous = s.var_x;
    CHECK((s.var_x - f.L * f.L) / (r * r) == doctest::Approx(f.qp.qm1() * f.L * f.L).epsilon(1e-12));
    CHECK((s.var_p - f.K * f.K) / (r * r) == doctest::Approx(f.qp.qm1() * f.K * f.K).epsilon(1e-12));
  }
}

TEST_CASE("intelligent-state equality") {
  const OscillatorConfig two = config_for_q(2.0, 1.0);
  CHECK(gur_residual({0.0, 0.0}, frame_from_alphabeta(two), two) <= 1e-12);
  const DeformedFrame f2 = frame_from_alphabeta(two);
  const XpStatistics s0 = xp_statistics({0.0, 0.0}, f2);
  CHECK(std::sqrt(s0.var_x * s0.var_p) == doctest::Approx(0.75).epsilon(1e-14));

  const OscillatorConfig c15 = config_for_q(1.5, 3.0);
  const DeformedFrame f15 = frame_from_alphabeta(c15);
  const XpStatistics s = xp_statistics({0.5, 0.3}, f15);
  CHECK(std::sqrt(s.var_x * s.var_p) == doctest::Approx(2.5 / 4.0 * (1.0 + 0.5 * 0.34)).epsilon(1e-13));
  CHECK(gur_residual({0.5, 0.3}, f15, c15) <= 1e-12);

  const OscillatorConfig c11 = config_for_q(1.1, 0.3);
  CHECK(gur_residual({0.0, 2.0}, frame_from_alphabeta(c11), c11) <= 1e-12);

  int points = 0;
  for (double q : {1.01, 1.1, 1.3, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0, 9.0}) {
    const OscillatorConfig cfg = config_for_q(q, 0.7, 0.8);
    const DeformedFrame f = frame_from_alphabeta(cfg);
    for (int k = 0; k < 10; ++k) {
      CHECK(gur_residual(std::polar(0.35 * k, 0.9 * k), f, cfg) <= 1e-12);
      ++points;
    }
  }
  CHECK(points == 100);
  CHECK_THROWS_AS(gur_residual({0.1, 0.0}, limit_frames(config(0.0, 0.1)), config(0.0, 0.1)), DomainError);
}

TEST_CASE("oscillator condition") {
  const OscillatorCondition a = oscillator_condition(config(0.4, 0.1, 1.0, 1.0, 2.0));
  CHECK(a.matched);
  CHECK(a.omega0 == doctest::Approx(2.0));
  const OscillatorCondition b = oscillator_condition(config(0.08, 0.02, 1.0, 2.0, 1.0));
  CHECK(b.omega0 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_FALSE(oscillator_condition(config(0.2, 0.1, 1.0, 1.0, 1.0)).matched);
  CHECK_THROWS_AS(oscillator_condition(config(0.2, 0.0)), DomainError);
}

TEST_CASE("spectrum") {
  CHECK(spectrum(0, QParam(2.0), 1.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(spectrum(2, QParam(1.5), 1.0) == doctest::Approx(4.53125).epsilon(1e-15));
  const QParam near = QParam::from_excess(1e-9);
  for (int n = 0; n <= 10; ++n) {
    CHECK(std::abs(spectrum(n, near, 1.0) - (n + 0.5)) <= 1e-6);
    CHECK(classical_spectrum(n, 2.0) == 2.0 * n + 1.0);
  }
  for (double q : {1.1, 1.5, 2.0, 2.5}) {
    for (int n = 0; n <= 40; ++n) CHECK(spectrum_forms_residual(n, QParam(q)) <= 1e-13);
  }
  CHECK_THROWS_AS(spectrum(-1, QParam(2.0), 1.0), DomainError);
}

TEST_CASE("Hamiltonian under the matched condition") {
  for (double q : {1.1, 1.5, 2.5}) {
    for (double m_omega : {0.5, 1.0, 3.0}) {
      const double s = (q - 1.0) / (q + 1.0);
      const double beta = s / m_omega;
      const OscillatorConfig cfg = config(m_omega * m_omega * beta, beta, 1.0, m_omega, 1.0);
      REQUIRE(oscillator_condition(cfg).matched);
      const DeformedFrame f = frame_from_alphabeta(cfg);
      CHECK(pair_coefficient_residual(cfg, f) <= 1e-12);
      const HamiltonianCoefficients c = hamiltonian_coefficients(cfg, f);
      CHECK(c.number == doctest::Approx(0.25 * (1.0 + q)).epsilon(1e-13));
      CHECK(hamiltonian_identity_residual(cfg, f, 40) <= 1e-12);
    }
  }
  const OscillatorConfig unmatched = config(0.1, 0.2);
  CHECK(pair_coefficient_residual(unmatched, frame_from_alphabeta(unmatched)) > 0.1);
}

TEST_CASE("diagonalised Hamiltonian reproduces the spectrum") {
  for (double q : {1.1, 1.5, 2.0, 2.5}) {
    CHECK(matrix_spectrum_residual(QParam(q), 1.0, 80) <= 1e-10);
    CHECK(matrix_spectrum_residual(QParam(q), 0.4, 30) <= 1e-10);
  }
  CHECK_THROWS_AS(matrix_spectrum_residual(QParam(2.0), 1.0, 5), DimensionError);
}
