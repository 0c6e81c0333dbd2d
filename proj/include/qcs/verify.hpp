#pragma once

// Registered invariant checks, grouped in suites, each reduced to a worst
// residual against a tolerance.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qcs {

enum class Suite { all, qmath, moments, fock, coherent, oscillator };

std::string_view to_string(Suite s);

/// Throws UsageError for unknown names.
Suite parse_suite(std::string_view name);

struct VerificationReport {
  std::string check_name;
  std::size_t grid_size = 0;
  double worst_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// passed is set from worst_residual <= tolerance; a NaN residual fails.
VerificationReport make_report(std::string check_name, std::size_t grid_size, double worst_residual, double tolerance);

std::vector<VerificationReport> run_verify(Suite suite);

bool all_passed(const std::vector<VerificationReport>& reports);

/// Array of {check_name, grid_size, worst_residual, tolerance, passed}.
std::string to_json(const std::vector<VerificationReport>& reports);

/// One aligned line per check.
std::string to_text(const std::vector<VerificationReport>& reports);

}  // namespace qcs
