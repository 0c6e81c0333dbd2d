#include "qcs/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>

#include "json.hpp"
#include "qcs/coherent.hpp"
#include "qcs/errors.hpp"
#include "qcs/fock.hpp"
#include "qcs/fock_oracle.hpp"
#include "qcs/oscillator.hpp"
#include "qcs/quadrature.hpp"

namespace qcs {

namespace {

using cd = std::complex<double>;

const std::vector<double> kAlgebraQs = {1.1, 1.5, 2.0, 2.5};
const std::vector<double> kFigureQs = {1.1, 1.2, 1.3};

class Worst {
 public:
  void add(double residual) {
    ++count_;
    if (std::isnan(residual) || std::isnan(worst_)) {
      worst_ = std::numeric_limits<double>::quiet_NaN();
    } else {
      worst_ = std::max(worst_, residual);
    }
  }
  std::size_t count() const { return count_; }
  double value() const { return worst_; }

 private:
  std::size_t count_ = 0;
  double worst_ = -std::numeric_limits<double>::infinity();
};

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k) v[k] = k + 1 == n ? b : a + k * (b - a) / (n - 1);
  return v;
}

// t_k = k * t_max / n, k = 1..n.
std::vector<double> open_grid(double t_max, int n) {
  std::vector<double> v(n);
  for (int k = 1; k <= n; ++k) v[k - 1] = t_max * k / n;
  return v;
}

std::vector<cd> label_grid() {
  std::vector<cd> zs;
  for (double r : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    for (double phi : {0.0, 0.7, 2.1, 4.0}) {
      zs.push_back(std::polar(r, phi));
      if (r == 0.0) break;
    }
  }
  return zs;
}

double relative(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

void add(std::vector<VerificationReport>& out, const std::string& name, const Worst& w, double tolerance) {
  out.push_back(make_report(name, w.count(), w.value(), tolerance));
}

void qmath_checks(std::vector<VerificationReport>& out) {
  Worst recurrence;
  Worst dominance;
  for (double q : kAlgebraQs) {
    const QParam qp(q);
    for (int n = 0; n <= 60; ++n) {
      const double next = q_number(n + 1, qp);
      recurrence.add(std::abs(next - (1.0 + q * q_number(n, qp))) / next);
      if (n >= 2) dominance.add(n / q_number(n, qp));
    }
  }
  add(out, "qmath.q_number_recurrence", recurrence, 1e-14);
  add(out, "qmath.q_number_exceeds_n", dominance, std::nextafter(1.0, 0.0));

  Worst gamma;
  for (double q : {1.1, 1.5, 2.0, 2.5, 3.0}) {
    for (int n = 0; n <= 30; ++n) gamma.add(q_gamma_consistency(n, QParam(q)));
  }
  add(out, "qmath.q_gamma_consistency", gamma, 1e-12);

  Worst jackson;
  for (double q : {1.1, 1.5, 2.0, 2.5, 3.0}) {
    for (double t : linspace(0.0, 20.0, 81)) jackson.add(jackson_identity_residual(t, QParam(q)));
  }
  add(out, "qmath.jackson_identity", jackson, 1e-10);

  Worst limit;
  const QParam near = QParam::from_excess(1e-9);
  for (double t : linspace(0.0, 5.0, 51)) limit.add(std::abs(q_exp_ln(t, near).ln_magnitude - t));
  add(out, "qmath.q_exp_classical_limit", limit, 1e-6);

  Worst monomial;
  for (double q : kAlgebraQs) {
    const QParam qp(q);
    for (int n = 1; n <= 15; ++n) {
      for (double x : {0.7, 1.0, 1.3}) {
        const cd xi(x, 0.0);
        const cd d = q_derivative([n](cd w) { return std::pow(w, n); }, xi, qp);
        const cd expected = q_number(n, qp) * std::pow(xi, n - 1);
        monomial.add(std::abs(d - expected) / std::abs(expected));
      }
    }
  }
  add(out, "qmath.q_derivative_monomials", monomial, 1e-12);
}

void moment_checks(std::vector<VerificationReport>& out) {
  Worst moments;
  for (double q : kAlgebraQs) {
    for (int n = 0; n <= 12; ++n) moments.add(moment_check(n, QParam(q), kDefaultRelTol));
  }
  add(out, "moments.stieltjes_identity", moments, 1e-8);

  Worst limit;
  const QParam near = QParam::from_excess(1e-9);
  for (double t : linspace(0.0, 10.0, 1001)) limit.add(std::abs(weight_tilde(t, near) - std::exp(-t)));
  add(out, "moments.weight_classical_limit", limit, 1e-6);
}

void fock_checks(std::vector<VerificationReport>& out) {
  Worst commutator;
  Worst boson;
  Worst levels;
  Worst hermitian;
  for (double q : kAlgebraQs) {
    const FockSpace fs(60, QParam(q));
    commutator.add(commutator_residual(fs));
    boson.add(boson_map_residual(fs));
    levels.add(spectrum_residual(fs, 1.0));
    for (const OperatorMatrix& m : {build_quadrature_x(fs), build_quadrature_p(fs), build_position(fs, 1.0),
                                    build_momentum(fs, 1.0), build_hamiltonian(fs, 1.0)}) {
      hermitian.add(hermiticity_defect(m));
    }
  }
  add(out, "fock.commutator_residual", commutator, 1e-12);
  add(out, "fock.boson_map_residual", boson, 1e-12);
  add(out, "fock.spectrum_residual", levels, 1e-12);
  add(out, "fock.hermiticity", hermitian, 1e-14);

  Worst eigen;
  for (double q : kAlgebraQs) {
    const QParam qp(q);
    const FockSpace fs(kDefaultFockDim, qp);
    for (cd z : label_grid()) eigen.add(eigenstate_residual(make_state(z, qp), fs));
  }
  add(out, "fock.eigenstate_residual", eigen, 1e-8);
}

void coherent_checks(std::vector<VerificationReport>& out) {
  Worst normalisation;
  Worst bound;
  Worst self;
  for (double q : kAlgebraQs) {
    const QParam qp(q);
    const std::vector<cd> zs = label_grid();
    for (cd z : zs) {
      const std::vector<double> p = make_state(z, qp).photon_distribution();
      double sum = 0.0;
      for (double v : p) sum += v;
      normalisation.add(std::abs(sum - 1.0));
      self.add(std::abs(overlap(z, z, qp) - 1.0));
      for (cd w : zs) bound.add(std::abs(overlap(z, w, qp)) - 1.0);
    }
  }
  add(out, "coherent.normalisation", normalisation, 1e-12);
  add(out, "coherent.overlap_bound", bound, 1e-12);
  add(out, "coherent.overlap_self", self, 1e-12);

  Worst negative;
  Worst ordering;
  Worst identity;
  const std::vector<double> grid = open_grid(4.0, 200);
  const std::vector<double> mandel_qs = {1.1, 1.2, 1.3, 1.5, 2.0};
  for (double t : grid) {
    double previous = 0.0;
    for (std::size_t i = 0; i < mandel_qs.size(); ++i) {
      const QParam qp(mandel_qs[i]);
      const double m = mandel_q(t, qp);
      negative.add(m);
      if (i > 0) ordering.add(m - previous);
      identity.add(std::abs(m - mandel_q_operator_identity(t, qp)));
      previous = m;
    }
  }
  add(out, "coherent.mandel_negative", negative, 0.0);
  add(out, "coherent.mandel_ordered_in_q", ordering, 0.0);
  add(out, "coherent.mandel_operator_identity", identity, 1e-10);

  Worst small_t;
  for (double q : kFigureQs) {
    const double law = -(q - 1.0) * 0.01 / (q + 1.0);
    small_t.add(std::abs(mandel_q(0.01, QParam(q)) / law - 1.0));
  }
  add(out, "coherent.mandel_small_t_law", small_t, 0.2);

  Worst below_one;
  Worst decreasing;
  Worst gradient;
  Worst slope;
  for (double q : {1.5, 2.0, 2.5}) {
    const QParam qp(q);
    double previous = metric_factor(0.0, qp);
    for (double t : grid) {
      const double w = metric_factor(t, qp);
      below_one.add(w - 1.0);
      decreasing.add(w - previous);
      previous = w;
      const double h = 1e-5 * std::max(1.0, t);
      gradient.add(std::abs(w - (mean_photon(t + h, qp) - mean_photon(t - h, qp)) / (2.0 * h)));
    }
    const double h = 1e-3;
    const double fd = (metric_factor(0.005 + h, qp) - metric_factor(0.005 - h, qp)) / (2.0 * h);
    slope.add(std::abs(fd / (-2.0 * (q - 1.0) / (q + 1.0)) - 1.0));
  }
  add(out, "coherent.metric_below_one", below_one, 0.0);
  add(out, "coherent.metric_decreasing", decreasing, 0.0);
  add(out, "coherent.metric_gradient_check", gradient, 1e-6);
  add(out, "coherent.metric_small_t_slope", slope, 0.05);

  Worst squeezed;
  Worst origin;
  for (double q : kFigureQs) {
    const QParam qp(q);
    origin.add(std::abs(squeeze_ratio(0.0, qp) - 1.0));
    for (double t : open_grid(1.0, 100)) squeezed.add(squeeze_ratio(t, qp) - 1.0);
  }
  add(out, "coherent.squeeze_below_one", squeezed, 0.0);
  add(out, "coherent.squeeze_origin", origin, 0.0);

  Worst floor;
  for (double q : kAlgebraQs) {
    for (cd z : label_grid()) {
      const QuadratureVariances v = quadrature_variances(z, QParam(q));
      floor.add(0.25 - v.var_x * v.var_p);
    }
  }
  add(out, "coherent.heisenberg_floor", floor, 1e-12);

  Worst ordered;
  Worst snr_law;
  for (double q : {1.2, 1.5}) {
    const QParam qp(q);
    for (double t : linspace(0.05, 2.0, 40)) {
      const SnrReport r = snr(t, qp);
      ordered.add(std::max(r.coherent_reference - r.sigma, r.sigma - r.squeezed_reference));
    }
    snr_law.add(std::abs(snr(0.01, qp).sigma / 0.04 - 1.0));
  }
  add(out, "coherent.snr_between_references", ordered, 0.0);
  add(out, "coherent.snr_small_t_law", snr_law, 1e-3);

  Worst duality;
  double tail = 0.0;
  for (double q : kAlgebraQs) {
    const QParam qp(q);
    const FockSpace fs(kDefaultFockDim, qp);
    for (double t : {0.01, 0.25, 1.0, 2.0, 4.0}) {
      const oracle::OracleValue n = oracle::mean_photon(t, fs);
      tail = std::max(tail, n.tail_mass);
      duality.add(relative(mean_photon(t, qp), n.value));
      duality.add(relative(mean_photon_squared(t, qp), oracle::mean_photon_squared(t, fs).value));
      duality.add(relative(mandel_q(t, qp), oracle::mandel_q(t, fs).value));
      duality.add(relative(squeeze_ratio(t, qp), oracle::squeeze_ratio(t, fs).value));
      duality.add(relative(snr(t, qp).sigma, oracle::snr(t, fs).value));
      duality.add(relative(metric_factor(t, qp), oracle::metric_factor(t, fs).value));
      duality.add(relative(weight_tilde(t, qp), oracle::weight_tilde(t, fs).value));
    }
    for (cd z : label_grid()) {
      const QuadratureVariances s = quadrature_variances(z, qp);
      const oracle::OracleVariances m = oracle::quadrature_variances(z, fs);
      duality.add(relative(s.var_x, m.variances.var_x));
      duality.add(relative(s.var_p, m.variances.var_p));
    }
  }
  add(out, "coherent.series_matrix_duality", duality, std::max(1e-9, tail));

  Worst bargmann;
  for (double q : kAlgebraQs) {
    for (cd z : {cd(0.5, 0.0), cd(1.0, -0.5), cd(0.3, 1.2), cd(-1.5, 0.4)}) {
      for (cd xi : {cd(0.7, 0.0), cd(0.4, 0.6), cd(-1.1, 0.3), cd(1.5, -0.8)}) {
        bargmann.add(bargmann_eigen_residual(z, xi, QParam(q)));
      }
    }
  }
  add(out, "coherent.bargmann_eigen_equation", bargmann, 1e-10);

  Worst continuity;
  for (double q : kAlgebraQs) {
    for (cd z : label_grid()) continuity.add(label_continuity_modulus(z, cd(1e-5, 1e-5), QParam(q)));
  }
  add(out, "coherent.label_continuity", continuity, 1e-8);
}

std::vector<OscillatorConfig> interior_configs() {
  std::vector<OscillatorConfig> cfgs;
  for (double s : {1e-3, 0.02, 0.0476190476190476, 1.0 / 3.0, 0.6, 0.9}) {
    for (double ratio : {0.25, 1.0, 4.0}) {
      for (double hbar : {1.0, 0.5}) {
        const double alpha = s / hbar * std::sqrt(ratio);
        const double beta = s / hbar / std::sqrt(ratio);
        cfgs.push_back({1.0, 1.0, hbar, alpha, beta});
      }
    }
  }
  return cfgs;
}

void oscillator_checks(std::vector<VerificationReport>& out) {
  Worst frame;
  Worst minimal;
  for (const OscillatorConfig& cfg : interior_configs()) {
    const DeformedFrame f = frame_from_alphabeta(cfg);
    const double q = f.qp.q();
    frame.add(std::abs(4.0 * f.K * f.L / (cfg.hbar * (1.0 + q)) - 1.0));
    const double expected = cfg.hbar * (1.0 + q) * f.qp.qm1() / (4.0 * q);
    minimal.add(std::abs(f.dx0 * f.dp0 / expected - 1.0));
  }
  add(out, "oscillator.frame_identity", frame, 1e-12);
  add(out, "oscillator.minimal_uncertainty_product", minimal, 1e-12);

  Worst gur;
  const std::vector<cd> zs = {cd(0.0, 0.0), cd(0.5, 0.3),  cd(0.0, 2.0),  cd(-1.2, 0.7), cd(1.5, -1.5),
                              cd(0.1, 0.0), cd(-0.3, -0.9), cd(2.0, 0.0), cd(0.8, 1.1),  cd(-2.5, 3.0)};
  const std::vector<double> qs = {1.001, 1.1, 1.3, 1.5, 1.8, 2.0, 2.5, 3.0, 5.0, 10.0};
  for (double q : qs) {
    const double s = (q - 1.0) / (q + 1.0);
    const OscillatorConfig cfg{1.0, 1.0, 1.0, 2.0 * s, 0.5 * s};
    const DeformedFrame f = frame_from_alphabeta(cfg);
    for (cd z : zs) gur.add(gur_residual(z, f, cfg));
  }
  add(out, "oscillator.intelligent_equality", gur, 1e-12);

  Worst matrix;
  for (double q : {1.1, 1.5, 2.5}) {
    const double s = (q - 1.0) / (q + 1.0);
    const OscillatorConfig cfg{1.0, 1.0, 1.0, 0.7 * s, s / 0.7};
    const DeformedFrame f = frame_from_alphabeta(cfg);
    const FockSpace fs(kDefaultFockDim, f.qp);
    for (cd z : {cd(0.0, 0.0), cd(0.3, 0.4), cd(-1.0, 1.5), cd(2.0, 0.0)}) {
      const XpStatistics a = xp_statistics(z, f);
      const XpStatistics b = xp_statistics_matrix(z, f, fs);
      matrix.add(std::max({relative(a.mean_x, b.mean_x), relative(a.mean_p, b.mean_p), relative(a.var_x, b.var_x),
                           relative(a.var_p, b.var_p)}));
    }
  }
  add(out, "oscillator.xp_matrix_agreement", matrix, 1e-9);

  Worst forms;
  Worst duality;
  for (double q : kAlgebraQs) {
    const QParam qp(q);
    for (int n = 0; n <= 40; ++n) forms.add(spectrum_forms_residual(n, qp));
    duality.add(matrix_spectrum_residual(qp, 1.0, kDefaultFockDim));
  }
  add(out, "oscillator.spectrum_forms", forms, 1e-13);
  add(out, "oscillator.matrix_spectrum", duality, 1e-10);

  Worst classical_levels;
  const QParam near = QParam::from_excess(1e-9);
  for (int n = 0; n <= 10; ++n) classical_levels.add(std::abs(spectrum(n, near, 1.0) - classical_spectrum(n, 1.0)));
  add(out, "oscillator.spectrum_classical_limit", classical_levels, 1e-6);

  Worst pair;
  Worst identity;
  for (double q : {1.1, 1.5, 2.5}) {
    for (double m_omega : {0.5, 1.0, 3.0}) {
      const double s = (q - 1.0) / (q + 1.0);
      const double beta = s / m_omega;
      const OscillatorConfig cfg{m_omega, 1.0, 1.0, m_omega * m_omega * beta, beta};
      const DeformedFrame f = frame_from_alphabeta(cfg);
      pair.add(pair_coefficient_residual(cfg, f));
      identity.add(hamiltonian_identity_residual(cfg, f, 40));
    }
  }
  add(out, "oscillator.pair_coefficient_vanishes", pair, 1e-12);
  add(out, "oscillator.hamiltonian_identity", identity, 1e-12);
}

}  // namespace

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::all: return "all";
    case Suite::qmath: return "qmath";
    case Suite::moments: return "moments";
    case Suite::fock: return "fock";
    case Suite::coherent: return "coherent";
    case Suite::oscillator: return "oscillator";
  }
  return "?";
}

Suite parse_suite(std::string_view name) {
  for (Suite s : {Suite::all, Suite::qmath, Suite::moments, Suite::fock, Suite::coherent, Suite::oscillator}) {
    if (to_string(s) == name) return s;
  }
  throw UsageError("unknown verification suite '" + std::string(name) + "'");
}

VerificationReport make_report(std::string check_name, std::size_t grid_size, double worst_residual, double tolerance) {
  return {std::move(check_name), grid_size, worst_residual, tolerance, worst_residual <= tolerance};
}

std::vector<VerificationReport> run_verify(Suite suite) {
  std::vector<VerificationReport> out;
  const auto wants = [suite](Suite s) { return suite == Suite::all || suite == s; };
  if (wants(Suite::qmath)) qmath_checks(out);
  if (wants(Suite::moments)) moment_checks(out);
  if (wants(Suite::fock)) fock_checks(out);
  if (wants(Suite::coherent)) coherent_checks(out);
  if (wants(Suite::oscillator)) oscillator_checks(out);
  return out;
}

bool all_passed(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
}

std::string to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const VerificationReport& r : reports) {
    doc.push_back({{"check_name", r.check_name},
                   {"grid_size", r.grid_size},
                   {"worst_residual", r.worst_residual},
                   {"tolerance", r.tolerance},
                   {"passed", r.passed}});
  }
  return doc.dump(2) + '\n';
}

std::string to_text(const std::vector<VerificationReport>& reports) {
  std::string out;
  char line[256];
  for (const VerificationReport& r : reports) {
    std::snprintf(line, sizeof line, "%-4s %-42s n=%-6zu worst=%-12.4g tol=%.4g\n", r.passed ? "PASS" : "FAIL",
                  r.check_name.c_str(), r.grid_size, r.worst_residual, r.tolerance);
    out += line;
  }
  return out;
}

}  // namespace qcs
