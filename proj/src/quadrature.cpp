#include "qcs/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qcs/coherent.hpp"
#include "qcs/errors.hpp"
#include "qcs/series.hpp"

namespace qcs {

namespace {

// Kronrod 15-point nodes (positive half) and weights; the odd entries are
// the embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kMaxCutoff = 1e300;

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

double checked(const RealFunction& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw DomainError("quadrature: non-finite integrand value at t = " + std::to_string(x));
  }
  return v;
}

Panel gauss_kronrod(const RealFunction& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f, center);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double pair = checked(f, center - dx) + checked(f, center + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

// Largest error first; ties go to the leftmost panel.
bool lower_priority(const Panel& x, const Panel& y) {
  if (x.error != y.error) return x.error < y.error;
  return x.a > y.a;
}

struct Refined {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
  bool converged = false;
};

// Global adaptive bisection until error <= max(abs_tol, rel_tol |value|) - reserved.
Refined refine(const RealFunction& f, std::vector<Panel> heap, double rel_tol, double abs_tol, double reserved) {
  std::make_heap(heap.begin(), heap.end(), lower_priority);
  int subdivisions = 0;
  bool converged = false;
  while (true) {
    series::CompensatedSum value;
    series::CompensatedSum error;
    for (const Panel& p : heap) {
      value.add(p.value);
      error.add(p.error);
    }
    const double budget = std::max(abs_tol, rel_tol * std::abs(value.total())) - reserved;
    if (error.total() <= budget) {
      converged = true;
      break;
    }
    if (subdivisions >= kMaxSubdivisions) break;
    std::pop_heap(heap.begin(), heap.end(), lower_priority);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push_back(worst);
      break;
    }
    heap.push_back(gauss_kronrod(f, worst.a, mid));
    std::push_heap(heap.begin(), heap.end(), lower_priority);
    heap.push_back(gauss_kronrod(f, mid, worst.b));
    std::push_heap(heap.begin(), heap.end(), lower_priority);
    ++subdivisions;
  }

  std::sort(heap.begin(), heap.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  series::CompensatedSum value;
  series::CompensatedSum error;
  for (const Panel& p : heap) {
    value.add(p.value);
    error.add(p.error);
  }
  return {value.total(), error.total(), subdivisions, converged};
}

void require_tolerances(double rel_tol, double abs_tol) {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw DomainError("quadrature: rel_tol and abs_tol must be > 0");
  }
}

}  // namespace

IntegralResult integrate_finite(const RealFunction& f, double a, double b, double rel_tol, double abs_tol) {
  require_tolerances(rel_tol, abs_tol);
  if (!(b > a)) throw DomainError("integrate_finite: need b > a");
  const Refined r = refine(f, {gauss_kronrod(f, a, b)}, rel_tol, abs_tol, 0.0);
  if (!r.converged) {
    throw ToleranceError("integrate_finite: tolerance not met", r.value, r.error);
  }
  return {r.value, r.error, r.subdivisions, 0.0, b};
}

IntegralResult integrate_semiinfinite(const RealFunction& f, double rel_tol, double abs_tol, const TailBound& tail,
                                      double min_cutoff) {
  require_tolerances(rel_tol, abs_tol);
  const double tail_target = abs_tol / 10.0;

  std::vector<Panel> panels{gauss_kronrod(f, 0.0, 1.0)};
  double cutoff = 1.0;
  double tail_bound = 0.0;

  if (tail) {
    while (cutoff < min_cutoff || !(tail(cutoff) < tail_target)) {
      if (cutoff > kMaxCutoff) {
        throw ToleranceError("integrate_semiinfinite: tail bound never fell below abs_tol/10", 0.0,
                             std::numeric_limits<double>::infinity());
      }
      panels.push_back(gauss_kronrod(f, cutoff, 2.0 * cutoff));
      cutoff *= 2.0;
    }
    tail_bound = tail(cutoff);
  } else {
    // Tail estimated by the magnitude of the last dyadic panel.
    while (true) {
      panels.push_back(gauss_kronrod(f, cutoff, 2.0 * cutoff));
      cutoff *= 2.0;
      const Panel& last = panels.back();
      const double estimate = std::abs(last.value) + last.error;
      if (cutoff >= min_cutoff && estimate < tail_target) {
        tail_bound = estimate;
        break;
      }
      if (cutoff > kMaxCutoff) {
        throw ToleranceError("integrate_semiinfinite: integrand does not decay", 0.0,
                             std::numeric_limits<double>::infinity());
      }
    }
  }

  const Refined r = refine(f, std::move(panels), rel_tol, abs_tol, tail_bound);
  if (!r.converged) {
    throw ToleranceError("integrate_semiinfinite: tolerance not met", r.value, r.error + tail_bound);
  }
  return {r.value, r.error, r.subdivisions, tail_bound, cutoff};
}

RealFunction normalized_moment_integrand(int n, const QParam& qp) {
  if (n < 0) throw DomainError("moment integrand: n must be >= 0");
  const double ln_norm = q_factorial_ln(n, qp).ln_magnitude;
  return [n, qp, ln_norm](double t) -> double {
    if (t == 0.0) return n == 0 ? weight_tilde(0.0, qp) : 0.0;
    return std::exp(n * std::log(t) + weight_tilde_ln(t, qp) - ln_norm);
  };
}

TailBound normalized_moment_tail(int n, const QParam& qp) {
  constexpr int kExtraPower = 40;
  const int m = n + kExtraPower;
  const double ln_prefactor = std::log(qp.qm1() / qp.ln_q()) + q_factorial_ln(m, qp).ln_magnitude -
                              m * qp.ln_q() - std::log(static_cast<double>(m - n - 1)) -
                              q_factorial_ln(n, qp).ln_magnitude;
  const double power = static_cast<double>(n + 1 - m);
  return [ln_prefactor, power](double cutoff) { return std::exp(ln_prefactor + power * std::log(cutoff)); };
}

IntegralResult moment_integral(int n, const QParam& qp, double rel_tol, double min_cutoff) {
  return integrate_semiinfinite(normalized_moment_integrand(n, qp), rel_tol, kDefaultAbsTol,
                                normalized_moment_tail(n, qp), min_cutoff);
}

double moment_check(int n, const QParam& qp, double rel_tol) {
  return std::abs(moment_integral(n, qp, rel_tol).value - 1.0);
}

}  // namespace qcs
