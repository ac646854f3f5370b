#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "maxstable/problem.hpp"
#include "maxstable/rng.hpp"
#include "maxstable/taildep.hpp"

namespace maxstable {

/// max_j lambda_j x_j. Throws DomainError on dimension mismatch.
double max_linear(std::span<const double> lambda, std::span<const double> x);

/// h_1, ..., h_N drawn uniformly with replacement from {0, ..., N-1}.
std::vector<std::size_t> bootstrap_indices(std::size_t N, Rng& rng);

/// Y_j = exp(-M(lambda, B_j)^-alpha) for the resampled windows B_j = window(h_j).
std::vector<double> bootstrap_Y(const ForecastProblem& problem, std::span<const double> lambda,
                                std::span<const std::size_t> indices);
std::vector<double> bootstrap_Y(const ForecastProblem& problem, std::span<const double> lambda, Rng& rng);

/// Interface consumed by the stochastic gradient optimizer: the target is the
/// mean of `summands()` terms, each with an almost-everywhere gradient.
class DifferentiableObjective {
 public:
  virtual ~DifferentiableObjective() = default;
  virtual std::size_t dimension() const = 0;
  virtual std::size_t summands() const = 0;
  virtual double value(std::span<const double> lambda) const = 0;
  /// Writes the gradient of summand j into `grad`. Returns false when lambda
  /// lies on the summand's non-differentiability set; `grad` then holds the
  /// one-sided choice with ties resolved toward the lowest coordinate index.
  virtual bool summand_gradient(std::span<const double> lambda, std::size_t j, std::span<double> grad) const = 0;
};

/// Empirical target Phi of a forecast problem. The bootstrap variant holds a
/// fixed resampling h_1..h_N, so Phi is a deterministic function of lambda.
class EmpiricalObjective final : public DifferentiableObjective {
 public:
  explicit EmpiricalObjective(const ForecastProblem& problem, std::vector<std::size_t> bootstrap = {});

  std::size_t dimension() const override { return problem_->n(); }
  std::size_t summands() const override { return problem_->N(); }
  double value(std::span<const double> lambda) const override;
  bool summand_gradient(std::span<const double> lambda, std::size_t j, std::span<double> grad) const override;

  /// Q_j(lambda) as displayed for the problem's variant.
  double summand(std::span<const double> lambda, std::size_t j) const;
  /// Full gradient (1/N) sum_j grad Q_j, computed in O(N log N + N n).
  double value_and_gradient(std::span<const double> lambda, std::span<double> grad) const;
  /// True when lambda lies on the non-differentiability set of summand j.
  bool on_tie_set(std::span<const double> lambda, std::size_t j) const;

  const std::vector<std::size_t>& bootstrap() const { return bootstrap_; }
  const ForecastProblem& problem() const { return *problem_; }

 private:
  struct Window {
    double m = 0.0;       // M(lambda, window)
    std::size_t arg = 0;  // lowest index attaining the maximum
    bool tie = false;     // another coordinate attains the maximum too
  };
  Window evaluate(std::span<const double> lambda, std::span<const double> x) const;
  double u_of(double m) const;
  double h_of(double m) const;

  const ForecastProblem* problem_;
  std::vector<std::size_t> bootstrap_;
};

/// Phi(lambda). For the bootstrap variant the resampling is drawn from `rng`;
/// the non-bootstrap variant ignores it.
double target_phi(std::span<const double> lambda, const ForecastProblem& problem, Rng& rng);
/// Phi(lambda) for the non-bootstrap variant, or the bootstrap variant with the
/// given resampling.
double target_phi(std::span<const double> lambda, const ForecastProblem& problem,
                  std::span<const std::size_t> bootstrap = {});

/// Gradient of Q_j. `bootstrap` is required for the bootstrap variant.
std::vector<double> grad_q(std::span<const double> lambda, const ForecastProblem& problem, std::size_t j,
                           std::span<const std::size_t> bootstrap = {});

/// 1/(l((0,w))+1) - 2/(l((1,w))+1) + (gamma/3) 2(l((0,w))-1)^2 / ((2l((0,w))+1)(l((0,w))+2))
/// where l_ext is the tail dependence function of (X_t0, X_t1, ..., X_tn).
double analytic_psi1(const TailDepFn& l_ext, std::span<const double> w, double gamma);

/// Psi_1 as a function of lambda (w = lambda^alpha) with central
/// finite-difference gradients, for oracle and landscape experiments.
class AnalyticPsiObjective final : public DifferentiableObjective {
 public:
  AnalyticPsiObjective(TailDepFn l_ext, double alpha, double gamma, double step = 1e-6);

  std::size_t dimension() const override { return l_ext_.arity() - 1; }
  std::size_t summands() const override { return 1; }
  double value(std::span<const double> lambda) const override;
  bool summand_gradient(std::span<const double> lambda, std::size_t j, std::span<double> grad) const override;

 private:
  TailDepFn l_ext_;
  double alpha_;
  double gamma_;
  double step_;
};

}  // namespace maxstable
