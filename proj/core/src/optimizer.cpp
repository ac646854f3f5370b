#include "maxstable/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxstable/errors.hpp"
#include "maxstable/rng.hpp"

namespace maxstable {

std::string_view to_string(Method m) { return m == Method::Adam ? "adam" : "sgd"; }

Method parse_method(std::string_view name) {
  if (name == "adam") return Method::Adam;
  if (name == "sgd" || name == "classic-sgd" || name == "classic") return Method::ClassicSgd;
  throw DomainError("unknown optimizer '" + std::string(name) + "' (expected sgd or adam)");
}

void OptimizerConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("step size must be positive");
  if (patience < 1) throw DomainError("patience must be at least 1");
  if (max_iters < 1) throw DomainError("max_iters must be at least 1");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw DomainError("Adam decay rates must lie in [0,1)");
  }
  if (!(epsilon > 0.0)) throw DomainError("Adam epsilon must be positive");
}

SgdResult sgd_minimize(const DifferentiableObjective& objective, const OptimizerConfig& config) {
  config.validate();
  const std::size_t n = objective.dimension();
  const std::size_t N = objective.summands();
  if (n == 0 || N == 0) throw DomainError("objective has no parameters or no summands");

  std::vector<double> lambda = config.initial.value_or(std::vector<double>(n, 1.0));
  if (lambda.size() != n) throw DomainError("initial weights have the wrong dimension");
  Weights{lambda}.validate();
  if (config.reparametrize_log && std::any_of(lambda.begin(), lambda.end(), [](double v) { return v <= 0.0; })) {
    throw DomainError("log reparametrization needs strictly positive initial weights");
  }

  Rng rng = make_rng(config.seed, 1);
  std::uniform_int_distribution<std::size_t> pick(0, N - 1);

  SgdResult result;
  result.weights.lambda = lambda;
  result.phi = objective.value(lambda);
  if (config.record_trace) result.trace.push_back({0, lambda, result.phi});

  std::vector<double> tau(n), grad(n), moment1(n, 0.0), moment2(n, 0.0), previous(n);
  for (std::size_t i = 0; i < n; ++i) tau[i] = config.reparametrize_log ? std::log(lambda[i]) : lambda[i];
  double beta1_power = 1.0;
  double beta2_power = 1.0;
  std::size_t stale = 0;

  for (std::size_t k = 1; k <= config.max_iters; ++k) {
    std::size_t j = pick(rng);
    bool smooth = objective.summand_gradient(lambda, j, grad);
    for (std::size_t attempt = 0; !smooth && attempt < 8 * N; ++attempt) {
      ++result.ties;
      j = pick(rng);
      smooth = objective.summand_gradient(lambda, j, grad);
    }
    if (!smooth) ++result.ties;
    if (config.reparametrize_log) {
      for (std::size_t i = 0; i < n; ++i) grad[i] *= lambda[i];
    }

    previous = tau;
    if (config.method == Method::Adam) {
      beta1_power *= config.beta1;
      beta2_power *= config.beta2;
      for (std::size_t i = 0; i < n; ++i) {
        moment1[i] = config.beta1 * moment1[i] + (1.0 - config.beta1) * grad[i];
        moment2[i] = config.beta2 * moment2[i] + (1.0 - config.beta2) * grad[i] * grad[i];
        const double m_hat = moment1[i] / (1.0 - beta1_power);
        const double v_hat = moment2[i] / (1.0 - beta2_power);
        tau[i] -= config.step * m_hat / (std::sqrt(v_hat) + config.epsilon);
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) tau[i] -= config.step * grad[i];
    }

    if (config.reparametrize_log) {
      for (std::size_t i = 0; i < n; ++i) lambda[i] = std::exp(tau[i]);
    } else {
      // Back-projection onto the nonnegative orthant; a step that would zero
      // every weight is discarded.
      for (std::size_t i = 0; i < n; ++i) tau[i] = std::max(tau[i], 0.0);
      if (std::all_of(tau.begin(), tau.end(), [](double v) { return v == 0.0; })) tau = previous;
      lambda = tau;
    }

    const double phi = objective.value(lambda);
    result.iterations = k;
    if (config.record_trace) result.trace.push_back({k, lambda, phi});
    if (phi < result.phi) {
      result.phi = phi;
      result.weights.lambda = lambda;
      stale = 0;
    } else if (++stale >= config.patience) {
      break;
    }
  }
  return result;
}

SgdResult sgd_minimize(const ForecastProblem& problem, const OptimizerConfig& config) {
  std::vector<std::size_t> bootstrap;
  if (problem.variant == Variant::Bootstrap) {
    Rng rng = make_rng(config.seed, 2);
    bootstrap = bootstrap_indices(problem.N(), rng);
  }
  const EmpiricalObjective objective(problem, std::move(bootstrap));
  return sgd_minimize(objective, config);
}

}  // namespace maxstable
