#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "maxstable/frechet.hpp"
#include "maxstable/taildep.hpp"

namespace maxstable {

struct MetricValue {
  double value = 0.0;
  std::optional<double> standard_error;
};

/// Excursion distance between the max-linear combinations M(w1, X) and
/// M(w2, X), where `l` is the tail dependence function of X.
MetricValue excursion_maxlinear(const TailDepFn& l, std::span<const double> w1, std::span<const double> w2,
                                double alpha);

/// Excursion distance between gamma0 * X_t0 and M(w, X) given the tail
/// dependence function of the extended vector (X_t0, X). The first argument of
/// `l_ext` is the target.
MetricValue excursion_target_vs_predictor(const TailDepFn& l_ext, double gamma0, std::span<const double> w,
                                          double alpha);

/// Excursion distance between gamma_k X_k and M(w, X) in the case gamma_k <= w_k:
/// 1/(gamma_k^alpha + 1) - 1/(l(w^alpha) + 1).
MetricValue excursion_min_component(const TailDepFn& l, double gamma_k, std::span<const double> w, double alpha);

/// Plug-in statistic 2/K sum F(x0 v xhat) - 1/K sum F(xhat) - 1/2 with its
/// standard error.
MetricValue excursion_empirical(std::span<const double> x0, std::span<const double> xhat,
                                const FrechetParams& marginal);

/// d = 4e / (1 - e). Throws DomainError unless 0 <= e < 1.
double davis_resnick_from_excursion(double e);
/// e = d / (4 + d). Throws DomainError for d < 0.
double excursion_from_davis_resnick(double d);

/// 1/2 |l - 1| / (l + 1).
double wasserstein1_penalty(double l_value);
/// (2/3) (l - 1)^2 / ((2l + 1)(l + 2)).
double wasserstein2_sq_penalty(double l_value);

/// (1/M) sum_h (Fbar(h/M) - h/M)^2 with Fbar the empirical cdf of `uniforms`.
double mse_hat(std::span<const double> uniforms, std::size_t grid_size = 100);

/// Excursion distance between X at lag h from the last observation and the
/// target: 1 - 2 / (theta(h) + 1). h may be infinite.
double benchmark_excursion(const ModelSpec& spec, double lag);

/// benchmark_excursion for lags 1..steps.
std::vector<double> benchmark_curve(const ModelSpec& spec, std::size_t steps);

}  // namespace maxstable
