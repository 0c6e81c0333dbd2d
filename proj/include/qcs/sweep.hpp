#pragma once

// Parameter sweeps over t = |z|^2 for the figure curves, with CSV, JSON and
// SVG emitters.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcs/fock.hpp"

namespace qcs {

enum class Observable { weight, mandel, squeeze, snr, metric, spectrum };
enum class ZConvention { real_sqrt_t, modulus_only };

std::string_view to_string(Observable o);
std::string_view to_string(ZConvention c);

/// Throws UsageError for unknown names.
Observable parse_observable(std::string_view name);
ZConvention parse_z_convention(std::string_view name);

/// squeeze and snr use z = sqrt(t); the rest depend on |z| only.
ZConvention natural_convention(Observable o);

struct SweepSpec {
  Observable observable = Observable::weight;
  std::vector<double> q_list;
  double t_min = 0.0;
  double t_max = 1.0;
  int points = 2;
  ZConvention z_convention = ZConvention::modulus_only;
  bool oracle = false;
  int dim = kDefaultFockDim;  ///< oracle truncation
  double hbar_omega = 1.0;    ///< spectrum only
};

/// t_min >= 0, t_max > t_min, points >= 2, every q >= 1 (q = 1 exactly takes
/// the undeformed path), convention consistent with the observable, integral
/// level indices for spectrum. Throws UsageError.
void validate(const SweepSpec& spec);

/// Figure defaults: weight at q in {1, 1.5, 2, 2.5}; mandel and squeeze at
/// q in {1.1, 1.2, 1.3}.
SweepSpec default_sweep(Observable o);

/// The t grid t_min + k (t_max - t_min)/(points - 1).
std::vector<double> sweep_grid(const SweepSpec& spec);

struct ObservablePoint {
  Observable observable = Observable::weight;
  ZConvention z_convention = ZConvention::modulus_only;
  double q = 0.0;
  double t = 0.0;  ///< level index n for spectrum
  double value = 0.0;
  std::optional<double> oracle_value;  ///< NaN on the undeformed path

  std::optional<double> oracle_delta() const;
};

/// Same observable, convention and bitwise-equal numbers (NaN equals NaN).
bool same_point(const ObservablePoint& a, const ObservablePoint& b);

/// q outer, t inner, both ascending in the order given.
std::vector<ObservablePoint> run_sweep(const SweepSpec& spec);

/// Header q,t,value[,oracle_value,oracle_delta]; %.17g; LF endings.
std::string to_csv(const std::vector<ObservablePoint>& points);

/// Inverse of to_csv. Throws UsageError on malformed input.
std::vector<ObservablePoint> parse_csv(std::string_view text, Observable observable, ZConvention convention);

std::string to_json(const std::vector<ObservablePoint>& points);

/// One polyline per q on linear axes.
std::string to_svg(const std::vector<ObservablePoint>& points);

}  // namespace qcs
