#pragma once

#include <span>
#include <vector>

#include "maxstable/rng.hpp"

namespace maxstable {

/// Shifted Fréchet law: P(X <= x) = exp(-((x - mu) / sigma)^(-alpha)) for x > mu.
struct FrechetParams {
  double alpha = 1.0;  ///< shape, > 0
  double mu = 0.0;     ///< location shift (lower end of the support)
  double sigma = 1.0;  ///< scale, > 0

  /// Throws DomainError unless alpha > 0 and sigma > 0 (both finite).
  void validate() const;

  static FrechetParams unit() { return {}; }
  static FrechetParams standard(double alpha) { return {alpha, 0.0, 1.0}; }
};

double frechet_cdf(double x, const FrechetParams& p);
double frechet_pdf(double x, const FrechetParams& p);

/// Inverse of frechet_cdf on (mu, inf). Throws DomainError for prob outside (0,1).
double frechet_quantile(double prob, const FrechetParams& p);

double frechet_sample(const FrechetParams& p, Rng& rng);
std::vector<double> frechet_sample(const FrechetParams& p, Rng& rng, std::size_t count);

/// Unit-scale, zero-location density h_alpha(x) = alpha x^(-1-alpha) exp(-x^(-alpha)).
/// Returns 0 for x <= 0 and where x^(-alpha) overflows.
double frechet_unit_density(double x, double alpha);

/// exp(-x^(-alpha)) for x > 0, 0 otherwise.
double frechet_unit_cdf(double x, double alpha);

/// The quasi log-likelihood
///   M log(alpha/sigma) - sum ((x-mu)/sigma)^(-alpha) - (alpha+1) sum log((x-mu)/sigma).
/// Returns -inf when some observation is <= mu.
double frechet_quasi_loglik(std::span<const double> data, const FrechetParams& p);

struct FrechetFitOptions {
  double simplex_tolerance = 1e-10;
  int max_iterations = 20000;
};

/// Quasi-maximum-likelihood estimate of (alpha, mu, sigma) with mu held at or
/// below min(data) - 1e-6 * range(data). Multi-start Nelder-Mead from five
/// moment-based starting points; deterministic given the data.
/// Throws FitError for fewer than 10 distinct values or when no start converges.
FrechetParams fit_quasi_ml(std::span<const double> data, const FrechetFitOptions& options = {});

}  // namespace maxstable
