#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>

#include "maxstable/gaussian.hpp"
#include "maxstable/rng.hpp"
#include "maxstable/stats.hpp"

namespace maxstable {

enum class ModelKind { BrownResnick, Smith, ExtremalGaussian };

std::string_view to_string(ModelKind kind);

/// Accepts "br", "brown-resnick", "smith", "eg", "extremal-gaussian" (case-insensitive).
ModelKind parse_model_kind(std::string_view name);

/// Stationary max-stable model with unit Fréchet margins.
///
/// `sigma` is the model's covariance parameter:
///  - BrownResnick: volatility sigma_B; the underlying Gaussian has increment
///    variance sigma_B^2 * |h| (Brownian motion in 1D, Lévy field in 2D).
///  - Smith: standard deviation sigma_S of the isotropic normal storm profile,
///    Sigma = sigma_S^2 I.
///  - ExtremalGaussian: correlation length sigma_G of exp(-|h| / sigma_G).
struct ModelSpec {
  ModelKind kind = ModelKind::BrownResnick;
  int dimension = 1;
  double sigma = 1.0;

  void validate() const;
};

/// Variance of the increment Y(t+h) - Y(t) of the log-Gaussian spectral
/// process at Euclidean lag h (BrownResnick and Smith only).
double increment_variance(const ModelSpec& spec, double h);

/// Correlation of the underlying Gaussian at lag h (ExtremalGaussian only).
double eg_correlation(const ModelSpec& spec, double h);

/// Tail dependence function l of a finite max-stable vector.
class TailDepFn {
 public:
  enum class Tag { BrownResnick, Smith, ExtremalGaussian, Explicit };
  using Evaluator = std::function<double(std::span<const double>)>;

  TailDepFn(std::size_t arity, Evaluator evaluator, Tag tag = Tag::Explicit);

  std::size_t arity() const { return arity_; }
  Tag tag() const { return tag_; }

  /// Throws DomainError on arity mismatch or negative arguments.
  double operator()(std::span<const double> x) const;

  /// Independence, l = ||.||_1.
  static TailDepFn independent(std::size_t arity);
  /// Complete dependence, l = ||.||_inf.
  static TailDepFn complete_dependence(std::size_t arity);
  /// Bivariate Hüsler-Reiss with variogram gamma(t1,t2) = Var(Y_t1 - Y_t2) / 2.
  static TailDepFn husler_reiss(double gamma_variogram, Tag tag = Tag::BrownResnick);
  /// Bivariate extremal Gaussian with correlation rho.
  static TailDepFn extremal_gaussian(double rho);
  /// Closed-form bivariate l of the model for two sites at lag h.
  static TailDepFn model_pair(const ModelSpec& spec, double h);

 private:
  std::size_t arity_;
  Evaluator evaluator_;
  Tag tag_;
};

/// Hüsler-Reiss bivariate tail dependence value; gamma_variogram is the
/// semivariogram of the underlying Gaussian.
double l_bivariate_hr(double x1, double x2, double gamma_variogram);

/// (x1 + x2 + sqrt(x1^2 - 2 rho x1 x2 + x2^2)) / 2.
double l_bivariate_eg(double x1, double x2, double rho);

/// Monte-Carlo of l(x) = E max_j x_j exp(Y_j - variances_j / 2), Y ~ N(0, cov).
McEstimate l_mc_log_gaussian(std::span<const double> x, const Matrix& cov, std::span<const double> variances,
                             Rng& rng, std::size_t samples = 100000);

/// Monte-Carlo of l(x) = sqrt(2 pi) E[0 v max_j x_j Y_j], Y ~ N(0, corr).
McEstimate l_mc_eg(std::span<const double> x, const Matrix& corr, Rng& rng, std::size_t samples = 100000);

/// Extremal coefficient theta(h) = l((1,1)) of two sites at lag h >= 0.
double extremal_coefficient(const ModelSpec& spec, double h);

/// Covariance parameter with extremal_coefficient(kind, sigma, h = 1) = theta.
/// Requires 1 < theta < 2, and theta < 1 + 1/sqrt(2) for ExtremalGaussian
/// (InfeasibleError otherwise).
double calibrate_sigma(ModelKind kind, double theta);

/// Supremum of the extremal coefficient reachable by the model.
double max_extremal_coefficient(ModelKind kind);

}  // namespace maxstable
