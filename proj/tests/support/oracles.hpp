#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace oracle {

/// Two-sided KS statistic of `sample` against the continuous cdf.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Asymptotic KS p-value with Stephens' small-sample correction.
double ks_pvalue(double statistic, std::size_t n);

/// F-madogram estimate of the extremal coefficient of (x[i], y[i]) pairs
/// with unit Fréchet margins: (1 + 2 nu) / (1 - 2 nu), nu = mean|F(x) - F(y)| / 2.
double madogram_theta(std::span<const double> x, std::span<const double> y);

/// Adaptive Gauss-Kronrod integral; a or b may be infinite.
double integrate(const std::function<double(double)>& f, double a, double b);

/// Sample quantile (type 7) of unsorted data.
double quantile(std::vector<double> data, double p);

}  // namespace oracle
