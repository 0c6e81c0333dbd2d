#pragma once

// One-shot evaluation of a named observable with its metadata.

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcs/fock.hpp"
#include "qcs/oscillator.hpp"

namespace qcs {

struct QueryRequest {
  std::string observable;
  std::optional<double> q;
  std::optional<double> t;
  std::optional<std::complex<double>> z;
  std::optional<int> n;
  bool oracle = false;
  int dim = kDefaultFockDim;
  OscillatorConfig oscillator;  ///< spectrum uses hbar*omega; gur uses all of it
};

struct QueryResult {
  std::string observable;
  double value = 0.0;
  std::optional<double> q;
  std::optional<double> t;
  std::optional<std::complex<double>> z;
  std::optional<int> n;
  std::optional<double> tail_mass;
  std::optional<double> oracle_value;
  std::vector<std::pair<std::string, double>> extras;
  std::vector<std::pair<std::string, std::string>> units;

  std::optional<double> oracle_delta() const;
};

/// Names accepted by run_query.
const std::vector<std::string>& query_observables();

/// Throws UsageError for unknown observables or missing/conflicting
/// parameters, DomainError (and friends) for numeric-domain violations.
QueryResult run_query(const QueryRequest& request);

/// "key: value" lines, value first.
std::string to_plain(const QueryResult& r);
std::string to_json(const QueryResult& r);

/// Parses "re,im" or "re". Throws UsageError.
std::complex<double> parse_complex(const std::string& text);

}  // namespace qcs
