#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "maxstable/gaussian.hpp"
#include "maxstable/grid.hpp"

namespace maxstable {

/// Nonnegative, not identically zero weights of a max-linear predictor.
struct Weights {
  std::vector<double> lambda;

  std::size_t size() const { return lambda.size(); }
  /// Throws DomainError for negative, non-finite or all-zero weights.
  void validate() const;

  static Weights ones(std::size_t n) { return {std::vector<double>(n, 1.0)}; }
};

enum class Variant { Bootstrap, NonBootstrap };

std::string_view to_string(Variant v);
/// "bootstrap" or "non-bootstrap".
Variant parse_variant(std::string_view name);

/// Empirical forecast problem. Learning sample j consists of the sites
/// forecast_sites + shifts[j] with target + shifts[j]; shifts are the actual
/// translation vectors (negative in 1D when windows lie in the past).
struct ForecastProblem {
  std::vector<Site> forecast_sites;
  Site target;
  std::vector<Site> shifts;
  double alpha = 1.0;
  double gamma = 0.0;
  Variant variant = Variant::NonBootstrap;

  std::vector<double> forecast_values;   ///< X(T_f), length n
  Matrix learning_values;                ///< N x n, row j = X(T_f + k_j)
  std::vector<double> learning_targets;  ///< X(t0 + k_j), length N

  std::size_t n() const { return forecast_sites.size(); }
  std::size_t N() const { return shifts.size(); }
  std::span<const double> window(std::size_t j) const {
    return {learning_values.data.data() + j * learning_values.cols, learning_values.cols};
  }

  /// Checks dimensions, positivity of the data, alpha > 0 and gamma >= 0.
  void validate() const;
};

/// Assembles a problem from observations. Throws ProblemError if the target
/// lies in the forecast sample, a learning site or learning target is not
/// observed, or a learning window intersects the forecast sample.
ForecastProblem make_problem(const Path& observations, std::vector<Site> forecast_sites, Site target,
                             std::vector<Site> shifts, double alpha, double gamma,
                             Variant variant = Variant::NonBootstrap);

/// Layout of the 1D learning design: the last `reserved` sites are held out,
/// the forecast sample is the `sample_size` sites before them, the target is
/// `step` sites after the forecast sample, and learning window j = 1..N is the
/// forecast sample shifted back by j * sample_size.
struct LearningLayout {
  std::size_t sample_size = 2;
  std::size_t learning_samples = 100;
  std::size_t reserved = 1;
  std::size_t step = 1;
};

/// Throws ProblemError if the series is shorter than
/// series_length_for(reserved, n, N) (the required length is in the message)
/// or if a learning target would fall into the held-out part.
ForecastProblem build_learning_samples(const Path& series, const LearningLayout& layout, double alpha = 1.0,
                                       double gamma = 0.0, Variant variant = Variant::NonBootstrap);

}  // namespace maxstable
