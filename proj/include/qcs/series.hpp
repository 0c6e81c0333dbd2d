#pragma once

// Accumulators shared by the log-domain series in qmath and coherent.

#include <cmath>

namespace qcs::series {

inline constexpr double kLnEpsilon = -36.04365338911715;  // ln(2^-52)

/// Streaming log-sum-exp of positive terms given by their logarithms.
class LogSum {
 public:
  void add(double ln_term) {
    if (!started_) {
      max_ = ln_term;
      scaled_ = 1.0;
      started_ = true;
    } else if (ln_term > max_) {
      scaled_ = scaled_ * std::exp(max_ - ln_term) + 1.0;
      max_ = ln_term;
    } else {
      scaled_ += std::exp(ln_term - max_);
    }
  }

  bool empty() const { return !started_; }
  double ln_total() const { return max_ + std::log(scaled_); }

 private:
  double max_ = 0.0;
  double scaled_ = 0.0;
  bool started_ = false;
};

/// Stops once two consecutive terms fall below 2^-52 times the running sum.
class StoppingRule {
 public:
  bool negligible(double ln_term, double ln_total) {
    below_ = (ln_term < kLnEpsilon + ln_total) ? below_ + 1 : 0;
    return below_ >= 2;
  }

 private:
  int below_ = 0;
};

/// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double total() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace qcs::series
