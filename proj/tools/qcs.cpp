// qcs: sweeps, verification suite and one-shot queries for maths-type
// q-deformed coherent states.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcs/errors.hpp"
#include "qcs/query.hpp"
#include "qcs/sweep.hpp"
#include "qcs/verify.hpp"

namespace {

enum ExitCode { kSuccess = 0, kVerificationFailed = 1, kUsage = 2, kNumericDomain = 3 };

std::vector<double> parse_q_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size()) throw qcs::UsageError("bad --q entry '" + item + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct SweepOptions {
  std::string observable;
  std::optional<std::string> q_list;
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<int> points;
  std::optional<std::string> z_convention;
  std::string format = "csv";
  std::optional<std::string> svg;
  bool oracle = false;
  int dim = qcs::kDefaultFockDim;
  double hbar = 1.0;
  double omega = 1.0;
};

struct QueryOptions {
  std::string observable;
  std::optional<std::string> q;
  std::optional<double> t;
  std::optional<std::string> z;
  std::optional<int> n;
  std::string format = "plain";
  bool oracle = false;
  int dim = qcs::kDefaultFockDim;
  qcs::OscillatorConfig oscillator;
};

int run_sweep_command(const SweepOptions& o) {
  qcs::SweepSpec spec = qcs::default_sweep(qcs::parse_observable(o.observable));
  if (o.q_list) spec.q_list = parse_q_list(*o.q_list);
  if (o.t_min) spec.t_min = *o.t_min;
  if (o.t_max) spec.t_max = *o.t_max;
  if (o.points) spec.points = *o.points;
  if (o.z_convention) spec.z_convention = qcs::parse_z_convention(*o.z_convention);
  spec.oracle = o.oracle;
  spec.dim = o.dim;
  spec.hbar_omega = o.hbar * o.omega;

  const std::vector<qcs::ObservablePoint> points = qcs::run_sweep(spec);
  std::cout << (o.format == "json" ? qcs::to_json(points) : qcs::to_csv(points));
  if (o.svg) {
    std::ofstream file(*o.svg, std::ios::binary);
    if (!file) throw qcs::UsageError("cannot open " + *o.svg + " for writing");
    file << qcs::to_svg(points);
  }
  return kSuccess;
}

int run_verify_command(const std::string& suite, const std::string& format) {
  const std::vector<qcs::VerificationReport> reports = qcs::run_verify(qcs::parse_suite(suite));
  std::cout << (format == "json" ? qcs::to_json(reports) : qcs::to_text(reports));
  return qcs::all_passed(reports) ? kSuccess : kVerificationFailed;
}

int run_query_command(const QueryOptions& o) {
  qcs::QueryRequest req;
  req.observable = o.observable;
  if (o.q) {
    const std::vector<double> qs = parse_q_list(*o.q);
    if (qs.size() != 1) throw qcs::UsageError("query takes a single --q");
    req.q = qs.front();
  }
  req.t = o.t;
  if (o.z) req.z = qcs::parse_complex(*o.z);
  req.n = o.n;
  req.oracle = o.oracle;
  req.dim = o.dim;
  req.oscillator = o.oscillator;
  const qcs::QueryResult r = qcs::run_query(req);
  std::cout << (o.format == "json" ? qcs::to_json(r) : qcs::to_plain(r));
  return kSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maths-type q-deformed coherent states (q > 1): figure sweeps, verification, queries"};
  app.require_subcommand(1);

  SweepOptions sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Emit observable curves over t = |z|^2");
  sweep_cmd->add_option("--observable", sweep.observable, "weight|mandel|squeeze|snr|metric|spectrum")->required();
  sweep_cmd->add_option("--q", sweep.q_list, "Comma-separated q values (q = 1 gives the undeformed curve)");
  sweep_cmd->add_option("--t-min", sweep.t_min, "Smallest t (level index for spectrum)");
  sweep_cmd->add_option("--t-max", sweep.t_max, "Largest t");
  sweep_cmd->add_option("--points", sweep.points, "Grid points per q");
  sweep_cmd->add_option("--z-convention", sweep.z_convention, "real_sqrt_t|modulus_only");
  sweep_cmd->add_option("--format", sweep.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--svg", sweep.svg, "Also write an SVG plot to this path");
  sweep_cmd->add_flag("--oracle", sweep.oracle, "Add the Fock-matrix oracle columns");
  sweep_cmd->add_option("--dim", sweep.dim, "Oracle truncation dimension");
  sweep_cmd->add_option("--hbar", sweep.hbar, "hbar (spectrum)");
  sweep_cmd->add_option("--omega", sweep.omega, "omega (spectrum)");

  std::string suite = "all";
  std::string verify_format = "text";
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the invariant checks");
  verify_cmd->add_option("suite", suite, "all|qmath|moments|fock|coherent|oscillator");
  verify_cmd->add_option("--format", verify_format, "text|json")->check(CLI::IsMember({"text", "json"}));

  QueryOptions query;
  CLI::App* query_cmd = app.add_subcommand("query", "Evaluate one observable");
  query_cmd->add_option("observable", query.observable, "Observable name")->required();
  query_cmd->add_option("--q", query.q, "Deformation parameter");
  query_cmd->add_option("--t", query.t, "t = |z|^2 (z = sqrt(t))");
  query_cmd->add_option("--z", query.z, "Complex label as re,im");
  query_cmd->add_option("--n", query.n, "Level index (spectrum)");
  query_cmd->add_option("--format", query.format, "plain|json")->check(CLI::IsMember({"plain", "json"}));
  query_cmd->add_flag("--oracle", query.oracle, "Report the Fock-matrix value and its delta");
  query_cmd->add_option("--dim", query.dim, "Oracle truncation dimension");
  query_cmd->add_option("--hbar", query.oscillator.hbar, "hbar");
  query_cmd->add_option("--mass", query.oscillator.mass, "Mass");
  query_cmd->add_option("--omega", query.oscillator.omega, "Angular frequency");
  query_cmd->add_option("--alpha", query.oscillator.alpha, "alpha (1/length^2)");
  query_cmd->add_option("--beta", query.oscillator.beta, "beta (1/momentum^2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*sweep_cmd) return run_sweep_command(sweep);
    if (*verify_cmd) return run_verify_command(suite, verify_format);
    return run_query_command(query);
  } catch (const qcs::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const qcs::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kNumericDomain;
  } catch (const qcs::OverflowError& e) {
    std::cerr << "overflow: " << e.what() << '\n';
    return kNumericDomain;
  } catch (const qcs::ConvergenceError& e) {
    std::cerr << "no convergence: " << e.what() << '\n';
    return kNumericDomain;
  } catch (const qcs::ToleranceError& e) {
    std::cerr << "tolerance not met: " << e.what() << '\n';
    return kNumericDomain;
  } catch (const qcs::DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << '\n';
    return kNumericDomain;
  }
}
