#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "maxstable/objective.hpp"
#include "maxstable/problem.hpp"

namespace maxstable {

enum class Method { ClassicSgd, Adam };

std::string_view to_string(Method m);
/// "sgd"/"classic-sgd" or "adam".
Method parse_method(std::string_view name);

struct OptimizerConfig {
  Method method = Method::Adam;
  double step = 0.1;  ///< eta
  std::size_t patience = 200;
  std::size_t max_iters = 20000;
  bool reparametrize_log = true;  ///< optimize tau = log(lambda)
  std::uint64_t seed = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  bool record_trace = false;
  /// Starting weights; all ones when empty.
  std::optional<std::vector<double>> initial;

  /// Throws DomainError unless step > 0, patience >= 1 and max_iters >= 1.
  void validate() const;
};

struct TracePoint {
  std::size_t iteration = 0;
  std::vector<double> lambda;
  double phi = 0.0;
};

struct SgdResult {
  Weights weights;  ///< best-so-far iterate
  double phi = 0.0;
  std::size_t iterations = 0;
  std::size_t ties = 0;  ///< sampled summands found on the non-differentiability set
  std::vector<TracePoint> trace;
};

/// Stochastic gradient descent with best-so-far tracking and early stopping
/// after `patience` consecutive non-improving iterations. A sampled summand
/// whose gradient is taken on a tie is counted and a new index is drawn.
SgdResult sgd_minimize(const DifferentiableObjective& objective, const OptimizerConfig& config);

/// Minimizes Phi of the problem. The bootstrap variant draws its resampling
/// h_1..h_N once from the config seed.
SgdResult sgd_minimize(const ForecastProblem& problem, const OptimizerConfig& config);

}  // namespace maxstable
