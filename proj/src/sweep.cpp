#include "qcs/sweep.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"
#include "qcs/coherent.hpp"
#include "qcs/errors.hpp"
#include "qcs/fock_oracle.hpp"
#include "qcs/oscillator.hpp"

namespace qcs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool same_number(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

double undeformed_value(Observable o, double t, double hbar_omega) {
  switch (o) {
    case Observable::weight: return classical::exp(-t);
    case Observable::mandel:
      if (t == 0.0) throw DomainError("mandel_q: undefined at t = 0");
      return 0.0;
    case Observable::squeeze: return 1.0;
    case Observable::snr: return 4.0 * t;
    case Observable::metric: return 1.0;
    case Observable::spectrum: return classical_spectrum(static_cast<int>(t), hbar_omega);
  }
  return kNaN;
}

double series_value(Observable o, double t, const QParam& qp, double hbar_omega) {
  switch (o) {
    case Observable::weight: return weight_tilde(t, qp);
    case Observable::mandel: return mandel_q(t, qp);
    case Observable::squeeze: return squeeze_ratio(t, qp);
    case Observable::snr: return snr(t, qp).sigma;
    case Observable::metric: return metric_factor(t, qp);
    case Observable::spectrum: return spectrum(static_cast<int>(t), qp, hbar_omega);
  }
  return kNaN;
}

class MatrixOracle {
 public:
  MatrixOracle(const QParam& qp, int dim, double hbar_omega) : fs_(dim, qp), hbar_omega_(hbar_omega) {}

  double operator()(Observable o, double t) {
    switch (o) {
      case Observable::weight: return oracle::weight_tilde(t, fs_).value;
      case Observable::mandel: return oracle::mandel_q(t, fs_).value;
      case Observable::squeeze: return oracle::squeeze_ratio(t, fs_).value;
      case Observable::snr: return oracle::snr(t, fs_).value;
      case Observable::metric: return oracle::metric_factor(t, fs_).value;
      case Observable::spectrum: return nearest_level(static_cast<int>(t));
    }
    return kNaN;
  }

 private:
  double nearest_level(int n) {
    if (n > fs_.dim() - 2) {
      throw DimensionError("sweep: level " + std::to_string(n) + " needs --dim >= " + std::to_string(n + 2));
    }
    if (levels_.size() == 0) {
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(build_hamiltonian(fs_, hbar_omega_).entries,
                                                                   Eigen::EigenvaluesOnly);
      levels_ = solver.eigenvalues();
    }
    const double e = spectrum(n, fs_.qparam(), hbar_omega_);
    double best = levels_(0);
    for (Eigen::Index k = 1; k < levels_.size(); ++k) {
      if (std::abs(levels_(k) - e) < std::abs(best - e)) best = levels_(k);
    }
    return best;
  }

  FockSpace fs_;
  double hbar_omega_;
  Eigen::VectorXd levels_;
};

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_field(const std::string& field, int line) {
  if (field.empty()) throw UsageError("csv line " + std::to_string(line) + ": empty field");
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size()) {
    throw UsageError("csv line " + std::to_string(line) + ": bad number '" + field + "'");
  }
  return v;
}

}  // namespace

std::string_view to_string(Observable o) {
  switch (o) {
    case Observable::weight: return "weight";
    case Observable::mandel: return "mandel";
    case Observable::squeeze: return "squeeze";
    case Observable::snr: return "snr";
    case Observable::metric: return "metric";
    case Observable::spectrum: return "spectrum";
  }
  return "?";
}

std::string_view to_string(ZConvention c) {
  return c == ZConvention::real_sqrt_t ? "real_sqrt_t" : "modulus_only";
}

Observable parse_observable(std::string_view name) {
  for (Observable o : {Observable::weight, Observable::mandel, Observable::squeeze, Observable::snr,
                       Observable::metric, Observable::spectrum}) {
    if (to_string(o) == name) return o;
  }
  throw UsageError("unknown sweep observable '" + std::string(name) + "'");
}

ZConvention parse_z_convention(std::string_view name) {
  if (name == "real_sqrt_t") return ZConvention::real_sqrt_t;
  if (name == "modulus_only") return ZConvention::modulus_only;
  throw UsageError("unknown z convention '" + std::string(name) + "'");
}

ZConvention natural_convention(Observable o) {
  return (o == Observable::squeeze || o == Observable::snr) ? ZConvention::real_sqrt_t : ZConvention::modulus_only;
}

void validate(const SweepSpec& spec) {
  if (!std::isfinite(spec.t_min) || !std::isfinite(spec.t_max)) throw UsageError("sweep: t range must be finite");
  if (spec.t_min < 0.0) throw UsageError("sweep: t_min must be >= 0");
  if (!(spec.t_max > spec.t_min)) throw UsageError("sweep: t_max must exceed t_min");
  if (spec.points < 2) throw UsageError("sweep: points must be >= 2");
  if (spec.q_list.empty()) throw UsageError("sweep: q list is empty");
  for (double q : spec.q_list) {
    if (!std::isfinite(q) || q < 1.0) throw UsageError("sweep: every q must be >= 1, got " + format_number(q));
  }
  if (spec.z_convention != natural_convention(spec.observable)) {
    throw UsageError("sweep: " + std::string(to_string(spec.observable)) + " uses the " +
                     std::string(to_string(natural_convention(spec.observable))) + " convention");
  }
  if (spec.oracle && spec.dim < 2) throw UsageError("sweep: --dim must be >= 2");
  if (spec.observable == Observable::spectrum) {
    if (!(spec.hbar_omega > 0.0) || !std::isfinite(spec.hbar_omega)) throw UsageError("sweep: hbar*omega must be > 0");
    for (double n : sweep_grid(spec)) {
      if (n != std::floor(n)) throw UsageError("sweep: spectrum grid values must be integral level indices");
    }
  }
}

SweepSpec default_sweep(Observable o) {
  SweepSpec s;
  s.observable = o;
  s.z_convention = natural_convention(o);
  switch (o) {
    case Observable::weight:
      s.q_list = {1.0, 1.5, 2.0, 2.5};
      s.t_min = 0.0;
      s.t_max = 5.0;
      s.points = 101;
      break;
    case Observable::mandel:
      s.q_list = {1.1, 1.2, 1.3};
      s.t_min = 0.02;
      s.t_max = 4.0;
      s.points = 200;
      break;
    case Observable::squeeze:
      s.q_list = {1.1, 1.2, 1.3};
      s.t_min = 0.0;
      s.t_max = 4.0;
      s.points = 201;
      break;
    case Observable::snr:
      s.q_list = {1.2, 1.5};
      s.t_min = 0.0;
      s.t_max = 2.0;
      s.points = 41;
      break;
    case Observable::metric:
      s.q_list = {1.5, 2.0, 2.5};
      s.t_min = 0.0;
      s.t_max = 4.0;
      s.points = 201;
      break;
    case Observable::spectrum:
      s.q_list = {1.1, 1.5, 2.0};
      s.t_min = 0.0;
      s.t_max = 10.0;
      s.points = 11;
      break;
  }
  return s;
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
  std::vector<double> grid(static_cast<std::size_t>(std::max(spec.points, 0)));
  const double step = (spec.t_max - spec.t_min) / (spec.points - 1);
  for (int k = 0; k < spec.points; ++k) grid[k] = k + 1 == spec.points ? spec.t_max : spec.t_min + k * step;
  return grid;
}

std::optional<double> ObservablePoint::oracle_delta() const {
  if (!oracle_value) return std::nullopt;
  return value - *oracle_value;
}

bool same_point(const ObservablePoint& a, const ObservablePoint& b) {
  if (a.observable != b.observable || a.z_convention != b.z_convention) return false;
  if (!same_number(a.q, b.q) || !same_number(a.t, b.t) || !same_number(a.value, b.value)) return false;
  if (a.oracle_value.has_value() != b.oracle_value.has_value()) return false;
  return !a.oracle_value || same_number(*a.oracle_value, *b.oracle_value);
}

std::vector<ObservablePoint> run_sweep(const SweepSpec& spec) {
  validate(spec);
  const std::vector<double> grid = sweep_grid(spec);
  std::vector<ObservablePoint> out;
  out.reserve(grid.size() * spec.q_list.size());
  for (double q : spec.q_list) {
    if (q == 1.0) {
      for (double t : grid) {
        ObservablePoint p{spec.observable, spec.z_convention, q, t, undeformed_value(spec.observable, t, spec.hbar_omega),
                          std::nullopt};
        if (spec.oracle) p.oracle_value = kNaN;
        out.push_back(p);
      }
      continue;
    }
    const QParam qp(q);
    std::optional<MatrixOracle> oracle;
    if (spec.oracle) oracle.emplace(qp, spec.dim, spec.hbar_omega);
    for (double t : grid) {
      ObservablePoint p{spec.observable, spec.z_convention, q, t, series_value(spec.observable, t, qp, spec.hbar_omega),
                        std::nullopt};
      if (oracle) p.oracle_value = (*oracle)(spec.observable, t);
      out.push_back(p);
    }
  }
  return out;
}

std::string to_csv(const std::vector<ObservablePoint>& points) {
  const bool with_oracle = std::any_of(points.begin(), points.end(), [](const auto& p) { return p.oracle_value; });
  std::string out = with_oracle ? "q,t,value,oracle_value,oracle_delta\n" : "q,t,value\n";
  for (const ObservablePoint& p : points) {
    out += format_number(p.q) + ',' + format_number(p.t) + ',' + format_number(p.value);
    if (with_oracle) {
      out += ',' + format_number(p.oracle_value.value_or(kNaN)) + ',' + format_number(p.oracle_delta().value_or(kNaN));
    }
    out += '\n';
  }
  return out;
}

std::vector<ObservablePoint> parse_csv(std::string_view text, Observable observable, ZConvention convention) {
  std::vector<std::string> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw UsageError("csv: missing header");
  bool with_oracle = false;
  if (lines[0] == "q,t,value,oracle_value,oracle_delta") {
    with_oracle = true;
  } else if (lines[0] != "q,t,value") {
    throw UsageError("csv: unexpected header '" + lines[0] + "'");
  }
  const std::size_t width = with_oracle ? 5 : 3;
  std::vector<ObservablePoint> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const int line = static_cast<int>(i) + 1;
    const std::vector<std::string> f = split(lines[i], ',');
    if (f.size() != width) throw UsageError("csv line " + std::to_string(line) + ": expected " + std::to_string(width) + " fields");
    ObservablePoint p{observable, convention, parse_field(f[0], line), parse_field(f[1], line), parse_field(f[2], line),
                      std::nullopt};
    if (with_oracle) p.oracle_value = parse_field(f[3], line);
    out.push_back(p);
  }
  return out;
}

std::string to_json(const std::vector<ObservablePoint>& points) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  if (!points.empty()) {
    doc["observable"] = to_string(points.front().observable);
    doc["z_convention"] = to_string(points.front().z_convention);
  }
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ObservablePoint& p : points) {
    nlohmann::ordered_json row{{"q", p.q}, {"t", p.t}, {"value", p.value}};
    if (p.oracle_value) {
      row["oracle_value"] = *p.oracle_value;
      row["oracle_delta"] = *p.oracle_delta();
    }
    rows.push_back(std::move(row));
  }
  doc["points"] = std::move(rows);
  return doc.dump(2) + '\n';
}

std::string to_svg(const std::vector<ObservablePoint>& points) {
  constexpr double kWidth = 640.0;
  constexpr double kHeight = 400.0;
  constexpr double kMargin = 50.0;
  std::map<double, std::vector<const ObservablePoint*>> curves;
  double t_lo = std::numeric_limits<double>::infinity();
  double t_hi = -t_lo;
  double v_lo = t_lo;
  double v_hi = -t_lo;
  for (const ObservablePoint& p : points) {
    if (!std::isfinite(p.value)) continue;
    curves[p.q].push_back(&p);
    t_lo = std::min(t_lo, p.t);
    t_hi = std::max(t_hi, p.t);
    v_lo = std::min(v_lo, p.value);
    v_hi = std::max(v_hi, p.value);
  }
  if (curves.empty()) throw UsageError("svg: nothing to plot");
  if (t_hi == t_lo) t_hi = t_lo + 1.0;
  if (v_hi == v_lo) {
    v_hi += 0.5;
    v_lo -= 0.5;
  }
  const auto sx = [&](double t) { return kMargin + (t - t_lo) / (t_hi - t_lo) * (kWidth - 2 * kMargin); };
  const auto sy = [&](double v) { return kHeight - kMargin - (v - v_lo) / (v_hi - v_lo) * (kHeight - 2 * kMargin); };

  std::ostringstream svg;
  char buf[64];
  const auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  svg << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin << "\" height=\""
      << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\">t</text>\n";
  svg << "<text x=\"10\" y=\"" << kMargin - 20 << "\">" << to_string(points.front().observable) << "</text>\n";
  svg << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 15 << "\" text-anchor=\"middle\">" << num(t_lo)
      << "</text>\n";
  svg << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 15 << "\" text-anchor=\"middle\">"
      << num(t_hi) << "</text>\n";
  svg << "<text x=\"" << kMargin - 5 << "\" y=\"" << sy(v_lo) << "\" text-anchor=\"end\">" << num(v_lo) << "</text>\n";
  svg << "<text x=\"" << kMargin - 5 << "\" y=\"" << sy(v_hi) + 10 << "\" text-anchor=\"end\">" << num(v_hi)
      << "</text>\n";
  static constexpr const char* kDashes[] = {"", "8,4", "2,3", "8,3,2,3"};
  int index = 0;
  for (const auto& [q, curve] : curves) {
    svg << "<polyline fill=\"none\" stroke=\"black\"";
    if (const char* dash = kDashes[index % 4]; std::strlen(dash) > 0) svg << " stroke-dasharray=\"" << dash << '"';
    svg << " points=\"";
    for (const ObservablePoint* p : curve) svg << num(sx(p->t)) << ',' << num(sy(p->value)) << ' ';
    svg << "\"/>\n";
    svg << "<text x=\"" << kWidth - kMargin - 80 << "\" y=\"" << kMargin + 18 * (index + 1) << "\">q = " << num(q)
        << "</text>\n";
    ++index;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace qcs
