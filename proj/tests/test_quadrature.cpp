#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qcs/coherent.hpp"
#include "qcs/errors.hpp"
#include "qcs/quadrature.hpp"

using namespace qcs;

TEST_CASE("finite integrals") {
  const IntegralResult a = integrate_finite([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(a.value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  const IntegralResult b = integrate_finite([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
  CHECK(b.value == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(b.abs_error_estimate <= 1e-10 * 2.0);
  CHECK_THROWS_AS(integrate_finite([](double x) { return x; }, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(integrate_finite([](double x) { return x; }, 0.0, 1.0, 0.0, 1e-14), DomainError);
}

TEST_CASE("semi-infinite integrals without an analytic tail") {
  const IntegralResult e = integrate_semiinfinite([](double t) { return std::exp(-t); });
  CHECK(std::abs(e.value - 1.0) <= 1e-12);
  const IntegralResult g = integrate_semiinfinite([](double t) { return t * t * t * std::exp(-t); });
  CHECK(std::abs(g.value - 6.0) <= 6e-10);
  CHECK(g.cutoff > 1.0);
}

TEST_CASE("non-decaying integrands and bad values are reported") {
  CHECK_THROWS_AS(integrate_semiinfinite([](double t) { return 1.0 / (1.0 + t); }), ToleranceError);
  CHECK_THROWS_AS(integrate_semiinfinite([](double) { return NAN; }), DomainError);
}

TEST_CASE("moment identity example") {
  CHECK(moment_check(8, QParam(1.3), 1e-10) <= 1e-8);
  CHECK(moment_check(0, QParam(2.0), 1e-10) <= 1e-8);
}

TEST_CASE("moment identity on the acceptance grid") {
  for (double q : {1.1, 1.5, 2.0, 2.5}) {
    for (int n = 0; n <= 12; ++n) {
      const IntegralResult r = moment_integral(n, QParam(q));
      CHECK(std::abs(r.value - 1.0) <= 1e-8);
      CHECK(r.tail_bound < kDefaultAbsTol);
    }
  }
}

TEST_CASE("linearity probe") {
  const RealFunction f = normalized_moment_integrand(5, QParam(1.5));
  const TailBound tail = normalized_moment_tail(5, QParam(1.5));
  const double base = integrate_semiinfinite(f, kDefaultRelTol, kDefaultAbsTol, tail).value;
  for (double a : {2.0, 10.0}) {
    const RealFunction g = [&](double t) { return a * f(t); };
    const TailBound scaled = [&](double t) { return a * tail(t); };
    const double value = integrate_semiinfinite(g, kDefaultRelTol, kDefaultAbsTol, scaled).value;
    CHECK(std::abs(value - a * base) <= 1e-12 * a * base);
  }
}

TEST_CASE("cutoff robustness") {
  for (double q : {1.1, 2.5}) {
    for (int n : {0, 6, 12}) {
      const IntegralResult r = moment_integral(n, QParam(q));
      const IntegralResult doubled = moment_integral(n, QParam(q), kDefaultRelTol, 2.0 * r.cutoff);
      CHECK(doubled.cutoff >= 2.0 * r.cutoff);
      const double reported = r.abs_error_estimate + r.tail_bound;
      CHECK(std::abs(doubled.value - r.value) <= std::max(reported, 4.0 * std::numeric_limits<double>::epsilon()));
    }
  }
}

TEST_CASE("weight function") {
  for (double q : {1.1, 2.0}) {
    const QParam qp(q);
    CHECK(weight_tilde(0.0, qp) == doctest::Approx((q - 1.0) / std::log(q)).epsilon(1e-15));
    CHECK(weight_tilde(1.0, qp) < weight_tilde(0.5, qp));
  }
  CHECK(weight_tilde(1.0, QParam(2.0)) == doctest::Approx(0.30254933840767081523).epsilon(1e-14));
  CHECK_THROWS_AS(weight_tilde(-0.1, QParam(2.0)), DomainError);
  const QParam near = QParam::from_excess(1e-9);
  for (double t = 0.0; t <= 10.0; t += 0.01) CHECK(std::abs(weight_tilde(t, near) - std::exp(-t)) <= 1e-6);
}

TEST_CASE("tail bound decreases and dominates the integrand tail") {
  const QParam qp(2.5);
  const TailBound tail = normalized_moment_tail(12, qp);
  CHECK(tail(1e6) > tail(1e7));
  const RealFunction f = normalized_moment_integrand(12, qp);
  const double T = 1e8;
  const double beyond = integrate_finite(f, T, 64.0 * T, 1e-8, 1e-300).value;
  CHECK(beyond <= tail(T));
}

TEST_CASE("results are deterministic") {
  const IntegralResult a = moment_integral(7, QParam(1.5));
  const IntegralResult b = moment_integral(7, QParam(1.5));
  CHECK(a.value == b.value);
  CHECK(a.subdivisions == b.subdivisions);
}
