#pragma once

#include <cmath>
#include <numbers>
#include <cstddef>
#include <span>

namespace maxstable {

/// Standard normal distribution function.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// Monte-Carlo estimate with its standard error.
struct McEstimate {
  double value = 0.0;
  double standard_error = 0.0;
};

/// Neumaier compensated running sum of values and squares, for means and
/// standard errors whose result does not hinge on summation order.
class CompensatedMoments {
 public:
  void add(double x) {
    accumulate(sum_, comp_, x);
    accumulate(sum_sq_, comp_sq_, x * x);
    ++count_;
  }

  std::size_t count() const { return count_; }
  double sum() const { return sum_ + comp_; }
  double mean() const { return count_ == 0 ? 0.0 : sum() / static_cast<double>(count_); }

  /// Unbiased sample variance.
  double variance() const {
    if (count_ < 2) return 0.0;
    const double n = static_cast<double>(count_);
    const double m = mean();
    const double v = ((sum_sq_ + comp_sq_) - n * m * m) / (n - 1.0);
    return v > 0.0 ? v : 0.0;
  }

  McEstimate estimate() const {
    return {mean(), count_ == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(count_))};
  }

 private:
  static void accumulate(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double sum_ = 0.0, comp_ = 0.0;
  double sum_sq_ = 0.0, comp_sq_ = 0.0;
  std::size_t count_ = 0;
};

}  // namespace maxstable
