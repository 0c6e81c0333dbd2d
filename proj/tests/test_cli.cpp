#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "qcs/errors.hpp"
#include "qcs/query.hpp"
#include "qcs/sweep.hpp"
#include "qcs/verify.hpp"

using namespace qcs;

namespace {

SweepSpec spec(Observable o, std::vector<double> qs, double t_min, double t_max, int points) {
  SweepSpec s = default_sweep(o);
  s.q_list = std::move(qs);
  s.t_min = t_min;
  s.t_max = t_max;
  s.points = points;
  return s;
}

std::vector<double> values_for(const std::vector<ObservablePoint>& pts, double q) {
  std::vector<double> v;
  for (const ObservablePoint& p : pts) {
    if (p.q == q) v.push_back(p.value);
  }
  return v;
}

}  // namespace

TEST_CASE("names round-trip") {
  for (Observable o : {Observable::weight, Observable::mandel, Observable::squeeze, Observable::snr, Observable::metric,
                       Observable::spectrum}) {
    CHECK(parse_observable(to_string(o)) == o);
  }
  CHECK_THROWS_AS(parse_observable("wieght"), UsageError);
  CHECK(parse_z_convention("real_sqrt_t") == ZConvention::real_sqrt_t);
  CHECK_THROWS_AS(parse_z_convention("polar"), UsageError);
  CHECK(parse_suite("moments") == Suite::moments);
  CHECK_THROWS_AS(parse_suite("everything"), UsageError);
}

TEST_CASE("sweep validation") {
  CHECK_NOTHROW(validate(default_sweep(Observable::weight)));
  CHECK_THROWS_AS(validate(spec(Observable::weight, {1.5}, -1.0, 1.0, 5)), UsageError);
  CHECK_THROWS_AS(validate(spec(Observable::weight, {1.5}, 1.0, 1.0, 5)), UsageError);
  CHECK_THROWS_AS(validate(spec(Observable::weight, {1.5}, 0.0, 1.0, 1)), UsageError);
  CHECK_THROWS_AS(validate(spec(Observable::weight, {0.9}, 0.0, 1.0, 5)), UsageError);
  CHECK_THROWS_AS(validate(spec(Observable::weight, {}, 0.0, 1.0, 5)), UsageError);
  CHECK_THROWS_AS(validate(spec(Observable::spectrum, {1.5}, 0.0, 1.0, 5)), UsageError);
  CHECK_NOTHROW(validate(spec(Observable::spectrum, {1.5}, 0.0, 4.0, 5)));
  SweepSpec s = default_sweep(Observable::squeeze);
  s.z_convention = ZConvention::modulus_only;
  CHECK_THROWS_AS(validate(s), UsageError);
  CHECK(default_sweep(Observable::snr).z_convention == ZConvention::real_sqrt_t);
  CHECK(default_sweep(Observable::mandel).z_convention == ZConvention::modulus_only);
}

TEST_CASE("sweep ordering and grid") {
  const std::vector<ObservablePoint> pts = run_sweep(spec(Observable::mandel, {1.3, 1.1}, 0.5, 2.0, 4));
  REQUIRE(pts.size() == 8);
  CHECK(pts[0].q == 1.3);
  CHECK(pts[3].q == 1.3);
  CHECK(pts[4].q == 1.1);
  CHECK(pts[0].t == 0.5);
  CHECK(pts[1].t == 1.0);
  CHECK(pts[3].t == 2.0);
  CHECK(pts[0].observable == Observable::mandel);
}

TEST_CASE("weight sweep near the undeformed limit") {
  const std::vector<ObservablePoint> pts = run_sweep(spec(Observable::weight, {1.0001}, 0.0, 5.0, 6));
  REQUIRE(pts.size() == 6);
  for (const ObservablePoint& p : pts) CHECK(std::abs(p.value - std::exp(-p.t)) <= 1e-4);
  CHECK(pts[1].value == doctest::Approx(0.3679).epsilon(1e-3));
}

TEST_CASE("q = 1 takes the undeformed path") {
  const std::vector<ObservablePoint> w = run_sweep(spec(Observable::weight, {1.0}, 0.0, 2.0, 3));
  CHECK(w[2].value == std::exp(-2.0));
  CHECK(run_sweep(spec(Observable::squeeze, {1.0}, 0.0, 2.0, 3))[1].value == 1.0);
  CHECK(run_sweep(spec(Observable::snr, {1.0}, 0.0, 2.0, 3))[1].value == 4.0);
  CHECK(run_sweep(spec(Observable::metric, {1.0}, 0.0, 2.0, 3))[2].value == 1.0);
  CHECK(run_sweep(spec(Observable::mandel, {1.0}, 0.5, 2.0, 3))[0].value == 0.0);
  CHECK(run_sweep(spec(Observable::spectrum, {1.0}, 0.0, 2.0, 3))[2].value == 2.5);
  SweepSpec with_oracle = spec(Observable::weight, {1.0}, 0.0, 1.0, 2);
  with_oracle.oracle = true;
  CHECK(std::isnan(*run_sweep(with_oracle)[0].oracle_value));
}

TEST_CASE("weight curves: positive, decreasing, banded q order") {
  const std::vector<ObservablePoint> pts = run_sweep(default_sweep(Observable::weight));
  const std::vector<double> qs = {1.0, 1.5, 2.0, 2.5};
  for (double q : qs) {
    const std::vector<double> v = values_for(pts, q);
    for (std::size_t k = 0; k < v.size(); ++k) {
      CHECK(v[k] > 0.0);
      if (k > 0) CHECK(v[k] < v[k - 1]);
    }
  }
  // Unit mass forces crossings: increasing in q near the origin, decreasing
  // over the body, increasing again in the far tail.
  const std::vector<double> grid = sweep_grid(default_sweep(Observable::weight));
  for (std::size_t i = 1; i < qs.size(); ++i) {
    const std::vector<double> lo = values_for(pts, qs[i - 1]);
    const std::vector<double> hi = values_for(pts, qs[i]);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (grid[k] <= 0.3 || grid[k] >= 4.4) CHECK(hi[k] > lo[k]);
      if (grid[k] >= 0.6 && grid[k] <= 3.5) CHECK(hi[k] < lo[k]);
    }
  }
}

TEST_CASE("mandel curves: negative, ordered in q") {
  const std::vector<ObservablePoint> pts = run_sweep(default_sweep(Observable::mandel));
  const std::vector<double> a = values_for(pts, 1.1);
  const std::vector<double> b = values_for(pts, 1.2);
  const std::vector<double> c = values_for(pts, 1.3);
  REQUIRE(a.size() == 200);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k] < 0.0);
    CHECK(b[k] < a[k]);
    CHECK(c[k] < b[k]);
  }
}

TEST_CASE("squeeze curves dip below 1") {
  const std::vector<ObservablePoint> pts = run_sweep(spec(Observable::squeeze, {1.1}, 0.0, 0.5, 11));
  CHECK(pts.front().value == 1.0);
  for (std::size_t k = 1; k < pts.size(); ++k) CHECK(pts[k].value < 1.0);
  const std::vector<ObservablePoint> fig = run_sweep(default_sweep(Observable::squeeze));
  for (double q : {1.1, 1.2, 1.3}) {
    const std::vector<double> v = values_for(fig, q);
    CHECK(v.front() == 1.0);
    CHECK(*std::min_element(v.begin(), v.end()) < 1.0);
  }
}

TEST_CASE("CSV format, determinism and round trip") {
  SweepSpec s = spec(Observable::squeeze, {1.1, 1.3}, 0.0, 2.0, 9);
  s.oracle = true;
  const std::vector<ObservablePoint> pts = run_sweep(s);
  const std::string csv = to_csv(pts);
  CHECK(csv == to_csv(run_sweep(s)));
  CHECK(csv.rfind("q,t,value,oracle_value,oracle_delta\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.back() == '\n');
  const std::vector<ObservablePoint> back = parse_csv(csv, Observable::squeeze, ZConvention::real_sqrt_t);
  REQUIRE(back.size() == pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    CHECK(same_point(back[k], pts[k]));
    CHECK(std::abs(*pts[k].oracle_delta()) <= 1e-9);
  }

  const std::vector<ObservablePoint> plain = run_sweep(spec(Observable::weight, {1.0, 2.0}, 0.0, 1.0, 3));
  const std::string plain_csv = to_csv(plain);
  CHECK(plain_csv.rfind("q,t,value\n", 0) == 0);
  const std::vector<ObservablePoint> plain_back = parse_csv(plain_csv, Observable::weight, ZConvention::modulus_only);
  for (std::size_t k = 0; k < plain.size(); ++k) CHECK(same_point(plain_back[k], plain[k]));

  CHECK_THROWS_AS(parse_csv("a,b\n1,2\n", Observable::weight, ZConvention::modulus_only), UsageError);
  CHECK_THROWS_AS(parse_csv("q,t,value\n1,2\n", Observable::weight, ZConvention::modulus_only), UsageError);
  CHECK_THROWS_AS(parse_csv("q,t,value\n1,x,3\n", Observable::weight, ZConvention::modulus_only), UsageError);
}

TEST_CASE("spectrum sweep with the matrix oracle") {
  SweepSpec s = spec(Observable::spectrum, {2.0}, 0.0, 5.0, 6);
  s.oracle = true;
  s.hbar_omega = 0.5;
  const std::vector<ObservablePoint> pts = run_sweep(s);
  CHECK(pts[0].value == doctest::Approx(0.375));
  for (const ObservablePoint& p : pts) CHECK(std::abs(*p.oracle_delta()) <= 1e-12 * p.value);
  s.dim = 5;
  CHECK_THROWS_AS(run_sweep(s), DimensionError);
}

TEST_CASE("JSON and SVG emitters") {
  const std::vector<ObservablePoint> pts = run_sweep(spec(Observable::snr, {1.2, 1.5}, 0.0, 1.0, 5));
  const nlohmann::json doc = nlohmann::json::parse(to_json(pts));
  CHECK(doc["observable"] == "snr");
  CHECK(doc["z_convention"] == "real_sqrt_t");
  CHECK(doc["points"].size() == 10);
  CHECK(doc["points"][3]["value"].get<double>() == pts[3].value);
  const std::string svg = to_svg(pts);
  CHECK(svg.rfind("<svg", 0) == 0);
  std::size_t lines = 0;
  for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++lines;
  CHECK(lines == 2);
}

TEST_CASE("queries") {
  QueryRequest m;
  m.observable = "mandel";
  m.q = 1.2;
  m.t = 0.1;
  const QueryResult r = run_query(m);
  CHECK(std::abs(r.value / (-0.2 * 0.1 / 2.2) - 1.0) <= 0.02);
  CHECK(r.value == doctest::Approx(-0.0089559622132097132772).epsilon(1e-12));
  CHECK(r.tail_mass.has_value());

  QueryRequest s;
  s.observable = "snr";
  s.q = 1.5;
  s.t = 0.05;
  s.oracle = true;
  const QueryResult sr = run_query(s);
  CHECK(sr.value == doctest::Approx(0.2).epsilon(1e-3));
  REQUIRE(sr.oracle_value.has_value());
  CHECK(std::abs(*sr.oracle_delta()) <= 1e-12);

  QueryRequest e;
  e.observable = "spectrum";
  e.q = 2.0;
  e.n = 0;
  CHECK(run_query(e).value == 0.75);

  QueryRequest g;
  g.observable = "gur";
  g.z = std::complex<double>(0.5, 0.3);
  g.oscillator.alpha = 0.1;
  g.oscillator.beta = 0.2;
  const QueryResult gr = run_query(g);
  CHECK(gr.value <= 1e-12);
  CHECK_FALSE(gr.units.empty());

  QueryRequest v;
  v.observable = "var_p";
  v.q = 1.5;
  v.z = std::complex<double>(0.3, 0.4);
  CHECK(run_query(v).value == doctest::Approx(0.49367469021032678488).epsilon(1e-13));

  const nlohmann::json doc = nlohmann::json::parse(to_json(sr));
  CHECK(doc["observable"] == "snr");
  CHECK(doc.contains("oracle_delta"));
  CHECK(to_plain(r).rfind("mandel: ", 0) == 0);
}

TEST_CASE("query errors") {
  QueryRequest bad;
  bad.observable = "nonsense";
  bad.q = 1.5;
  CHECK_THROWS_AS(run_query(bad), UsageError);

  QueryRequest origin;
  origin.observable = "mandel";
  origin.q = 1.2;
  origin.t = 0.0;
  CHECK_THROWS_AS(run_query(origin), DomainError);

  QueryRequest no_q;
  no_q.observable = "squeeze";
  no_q.t = 0.3;
  CHECK_THROWS_AS(run_query(no_q), UsageError);

  QueryRequest both;
  both.observable = "var_x";
  both.q = 1.2;
  both.t = 0.3;
  both.z = std::complex<double>(0.1, 0.0);
  CHECK_THROWS_AS(run_query(both), UsageError);

  QueryRequest low_q;
  low_q.observable = "weight";
  low_q.q = 0.8;
  low_q.t = 1.0;
  CHECK_THROWS_AS(run_query(low_q), DomainError);

  CHECK(parse_complex("0.5,-1.5") == std::complex<double>(0.5, -1.5));
  CHECK(parse_complex("2") == std::complex<double>(2.0, 0.0));
  CHECK_THROWS_AS(parse_complex("1,i"), UsageError);
  CHECK_THROWS_AS(parse_complex(""), UsageError);
}

TEST_CASE("verification reports") {
  CHECK(make_report("a", 3, 1e-13, 1e-12).passed);
  CHECK_FALSE(make_report("a", 3, 1e-11, 1e-12).passed);
  CHECK(make_report("a", 3, 1e-12, 1e-12).passed);
  CHECK_FALSE(make_report("a", 3, NAN, 1e-12).passed);

  const std::vector<VerificationReport> reports = run_verify(Suite::fock);
  CHECK_FALSE(reports.empty());
  for (const VerificationReport& r : reports) {
    CHECK(r.passed == (r.worst_residual <= r.tolerance));
    CHECK(r.check_name.rfind("fock.", 0) == 0);
    CHECK(r.grid_size > 0);
  }
  CHECK(all_passed(reports));
  CHECK_FALSE(all_passed({make_report("x", 1, 1.0, 0.0)}));

  const nlohmann::json doc = nlohmann::json::parse(to_json(reports));
  REQUIRE(doc.is_array());
  for (const auto& item : doc) {
    CHECK(item.size() == 5);
    for (const char* key : {"check_name", "grid_size", "worst_residual", "tolerance", "passed"}) CHECK(item.contains(key));
  }
  CHECK(to_text(reports).find("PASS") != std::string::npos);
}
