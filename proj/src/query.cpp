#include "qcs/query.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "json.hpp"
#include "qcs/coherent.hpp"
#include "qcs/errors.hpp"
#include "qcs/fock_oracle.hpp"

namespace qcs {

namespace {

using cd = std::complex<double>;

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

QParam require_q(const QueryRequest& r) {
  if (!r.q) throw UsageError(r.observable + ": --q is required");
  if (*r.q <= 1.0 || !std::isfinite(*r.q)) throw DomainError(r.observable + ": q must be > 1");
  return QParam(*r.q);
}

// Resolves the label; with only t given, z = sqrt(t).
cd require_label(const QueryRequest& r) {
  if (r.t && r.z) throw UsageError(r.observable + ": give either --t or --z, not both");
  if (r.z) return *r.z;
  if (!r.t) throw UsageError(r.observable + ": --t or --z is required");
  if (!(*r.t >= 0.0)) throw DomainError(r.observable + ": t must be >= 0");
  return {std::sqrt(*r.t), 0.0};
}

double require_t(const QueryRequest& r) {
  if (r.z) return std::norm(*r.z);
  if (!r.t) throw UsageError(r.observable + ": --t or --z is required");
  return *r.t;
}

void no_oracle(const QueryRequest& r) {
  if (r.oracle) throw UsageError(r.observable + ": no matrix oracle for this observable");
}

}  // namespace

std::optional<double> QueryResult::oracle_delta() const {
  if (!oracle_value) return std::nullopt;
  return value - *oracle_value;
}

const std::vector<std::string>& query_observables() {
  static const std::vector<std::string> names = {"weight", "weight_full", "q_exp",  "mean_photon", "metric",
                                                 "mandel", "squeeze",     "snr",    "var_x",       "var_p",
                                                 "spectrum", "gur"};
  return names;
}

QueryResult run_query(const QueryRequest& req) {
  const auto& names = query_observables();
  if (std::find(names.begin(), names.end(), req.observable) == names.end()) {
    throw UsageError("unknown observable '" + req.observable + "'");
  }
  QueryResult out;
  out.observable = req.observable;
  const std::string& o = req.observable;

  if (o == "spectrum") {
    const QParam qp = require_q(req);
    if (!req.n) throw UsageError("spectrum: --n is required");
    if (req.t || req.z) throw UsageError("spectrum: takes --n, not --t/--z");
    const double hbar_omega = req.oscillator.hbar * req.oscillator.omega;
    if (!(hbar_omega > 0.0)) throw DomainError("spectrum: hbar*omega must be > 0");
    out.q = qp.q();
    out.n = *req.n;
    out.value = spectrum(*req.n, qp, hbar_omega);
    out.extras = {{"hbar_omega", hbar_omega}, {"forms_residual", spectrum_forms_residual(*req.n, qp)}};
    out.units = {{"value", "energy"}};
    if (req.oracle) {
      if (*req.n > req.dim - 2) throw UsageError("spectrum: --dim must exceed n + 1");
      const FockSpace fs(req.dim, qp);
      out.oracle_value = build_hamiltonian(fs, hbar_omega).entries(*req.n, *req.n).real();
    }
    return out;
  }

  if (o == "gur") {
    if (req.q) throw UsageError("gur: q follows from --alpha and --beta; drop --q");
    no_oracle(req);
    const cd z = require_label(req);
    const DeformedFrame f = frame_from_alphabeta(req.oscillator);
    const XpStatistics s = xp_statistics(z, f);
    out.q = f.qp.q();
    out.z = z;
    out.t = std::norm(z);
    out.value = gur_residual(z, f, req.oscillator);
    out.extras = {{"L", f.L},         {"K", f.K},         {"dx0", f.dx0},       {"dp0", f.dp0},
                  {"mean_x", s.mean_x}, {"mean_p", s.mean_p}, {"var_x", s.var_x}, {"var_p", s.var_p}};
    out.units = {{"L", "length"},     {"K", "momentum"},   {"dx0", "length"},        {"dp0", "momentum"},
                 {"mean_x", "length"}, {"mean_p", "momentum"}, {"var_x", "length^2"}, {"var_p", "momentum^2"}};
    return out;
  }

  const QParam qp = require_q(req);
  out.q = qp.q();
  std::optional<FockSpace> fs;
  if (req.oracle) fs.emplace(req.dim, qp);

  if (o == "weight" || o == "weight_full" || o == "q_exp") {
    if (req.z) throw UsageError(o + ": takes --t");
    if (!req.t) throw UsageError(o + ": --t is required");
    const double t = *req.t;
    out.t = t;
    if (o == "weight") {
      out.value = weight_tilde(t, qp);
      if (fs) out.oracle_value = oracle::weight_tilde(t, *fs).value;
    } else if (o == "weight_full") {
      no_oracle(req);
      out.value = weight_full(t, qp);
    } else {
      no_oracle(req);
      const LogValue e = q_exp_ln(t, qp);
      out.value = e.value();
      out.extras = {{"ln_value", e.ln_magnitude}};
    }
    return out;
  }

  if (o == "var_x" || o == "var_p") {
    const cd z = require_label(req);
    out.z = z;
    out.t = std::norm(z);
    out.tail_mass = make_state(z, qp).tail_mass();
    const QuadratureVariances v = quadrature_variances(z, qp);
    out.value = o == "var_x" ? v.var_x : v.var_p;
    if (fs) {
      const oracle::OracleVariances m = oracle::quadrature_variances(z, *fs);
      out.oracle_value = o == "var_x" ? m.variances.var_x : m.variances.var_p;
    }
    return out;
  }

  const double t = require_t(req);
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError(o + ": t must be finite and >= 0");
  out.t = t;
  out.tail_mass = make_state({std::sqrt(t), 0.0}, qp).tail_mass();
  if (o == "mean_photon") {
    out.value = mean_photon(t, qp);
    if (fs) out.oracle_value = oracle::mean_photon(t, *fs).value;
  } else if (o == "metric") {
    out.value = metric_factor(t, qp);
    if (fs) out.oracle_value = oracle::metric_factor(t, *fs).value;
  } else if (o == "mandel") {
    out.value = mandel_q(t, qp);
    out.extras = {{"small_t_law", -qp.qm1() * t / (qp.q() + 1.0)}};
    if (fs) out.oracle_value = oracle::mandel_q(t, *fs).value;
  } else if (o == "squeeze") {
    out.value = squeeze_ratio(t, qp);
    if (fs) out.oracle_value = oracle::squeeze_ratio(t, *fs).value;
  } else {
    const SnrReport r = snr(t, qp);
    out.value = r.sigma;
    out.extras = {{"coherent_reference", r.coherent_reference}, {"squeezed_reference", r.squeezed_reference}};
    if (fs) out.oracle_value = oracle::snr(t, *fs).value;
  }
  return out;
}

std::string to_plain(const QueryResult& r) {
  std::string out = r.observable + ": " + format_number(r.value) + '\n';
  const auto line = [&](const std::string& key, const std::string& value) { out += key + ": " + value + '\n'; };
  if (r.q) line("q", format_number(*r.q));
  if (r.z) line("z", format_number(r.z->real()) + "," + format_number(r.z->imag()));
  if (r.t) line("t", format_number(*r.t));
  if (r.n) line("n", std::to_string(*r.n));
  if (r.tail_mass) line("tail_mass", format_number(*r.tail_mass));
  for (const auto& [key, value] : r.extras) line(key, format_number(value));
  if (r.oracle_value) {
    line("oracle_value", format_number(*r.oracle_value));
    line("oracle_delta", format_number(*r.oracle_delta()));
  }
  for (const auto& [key, unit] : r.units) line("unit." + key, unit);
  return out;
}

std::string to_json(const QueryResult& r) {
  nlohmann::ordered_json doc{{"observable", r.observable}, {"value", r.value}};
  if (r.q) doc["q"] = *r.q;
  if (r.z) doc["z"] = {r.z->real(), r.z->imag()};
  if (r.t) doc["t"] = *r.t;
  if (r.n) doc["n"] = *r.n;
  if (r.tail_mass) doc["tail_mass"] = *r.tail_mass;
  for (const auto& [key, value] : r.extras) doc[key] = value;
  if (r.oracle_value) {
    doc["oracle_value"] = *r.oracle_value;
    doc["oracle_delta"] = *r.oracle_delta();
  }
  if (!r.units.empty()) {
    nlohmann::ordered_json units = nlohmann::ordered_json::object();
    for (const auto& [key, unit] : r.units) units[key] = unit;
    doc["units"] = std::move(units);
  }
  return doc.dump(2) + '\n';
}

std::complex<double> parse_complex(const std::string& text) {
  const std::size_t comma = text.find(',');
  const auto number = [&](const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
      throw UsageError("bad complex number '" + text + "' (expected re or re,im)");
    }
    return v;
  };
  if (comma == std::string::npos) return {number(text), 0.0};
  return {number(text.substr(0, comma)), number(text.substr(comma + 1))};
}

}  // namespace qcs
