#include "maxstable/taildep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "maxstable/errors.hpp"

namespace maxstable {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::BrownResnick:
      return "brown-resnick";
    case ModelKind::Smith:
      return "smith";
    case ModelKind::ExtremalGaussian:
      return "extremal-gaussian";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "br" || s == "brown-resnick" || s == "brownresnick" || s == "b") return ModelKind::BrownResnick;
  if (s == "smith" || s == "s") return ModelKind::Smith;
  if (s == "eg" || s == "extremal-gaussian" || s == "extremalgaussian" || s == "schlather" || s == "g") {
    return ModelKind::ExtremalGaussian;
  }
  throw DomainError("unknown model '" + std::string(name) + "' (expected br, smith or eg)");
}

void ModelSpec::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("model covariance parameter must be positive");
  if (dimension != 1 && dimension != 2) throw DomainError("model dimension must be 1 or 2");
}

double increment_variance(const ModelSpec& spec, double h) {
  h = std::abs(h);
  switch (spec.kind) {
    case ModelKind::BrownResnick:
      return spec.sigma * spec.sigma * h;
    case ModelKind::Smith:
      return h * h / (spec.sigma * spec.sigma);
    case ModelKind::ExtremalGaussian:
      break;
  }
  throw DomainError("increment variance is defined for log-Gaussian models only");
}

double eg_correlation(const ModelSpec& spec, double h) {
  if (spec.kind != ModelKind::ExtremalGaussian) throw DomainError("correlation is defined for the extremal Gaussian model");
  return std::exp(-std::abs(h) / spec.sigma);
}

TailDepFn::TailDepFn(std::size_t arity, Evaluator evaluator, Tag tag)
    : arity_(arity), evaluator_(std::move(evaluator)), tag_(tag) {
  if (arity_ == 0) throw DomainError("tail dependence function needs positive arity");
}

double TailDepFn::operator()(std::span<const double> x) const {
  if (x.size() != arity_) {
    throw DomainError("tail dependence function of arity " + std::to_string(arity_) + " called with " +
                      std::to_string(x.size()) + " arguments");
  }
  for (double v : x) {
    if (!(v >= 0.0)) throw DomainError("tail dependence function requires nonnegative arguments");
  }
  return evaluator_(x);
}

TailDepFn TailDepFn::independent(std::size_t arity) {
  return TailDepFn(arity, [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  });
}

TailDepFn TailDepFn::complete_dependence(std::size_t arity) {
  return TailDepFn(arity, [](std::span<const double> x) { return *std::max_element(x.begin(), x.end()); });
}

TailDepFn TailDepFn::husler_reiss(double gamma_variogram, Tag tag) {
  if (!(gamma_variogram > 0.0)) throw DomainError("Husler-Reiss variogram must be positive");
  return TailDepFn(
      2, [gamma_variogram](std::span<const double> x) { return l_bivariate_hr(x[0], x[1], gamma_variogram); }, tag);
}

TailDepFn TailDepFn::extremal_gaussian(double rho) {
  if (!(std::abs(rho) <= 1.0)) throw DomainError("extremal Gaussian correlation must lie in [-1,1]");
  return TailDepFn(
      2, [rho](std::span<const double> x) { return l_bivariate_eg(x[0], x[1], rho); }, Tag::ExtremalGaussian);
}

TailDepFn TailDepFn::model_pair(const ModelSpec& spec, double h) {
  spec.validate();
  if (h == 0.0) {
    return TailDepFn(2, [](std::span<const double> x) { return std::max(x[0], x[1]); },
                     spec.kind == ModelKind::ExtremalGaussian ? Tag::ExtremalGaussian
                     : spec.kind == ModelKind::Smith          ? Tag::Smith
                                                              : Tag::BrownResnick);
  }
  switch (spec.kind) {
    case ModelKind::BrownResnick:
      return husler_reiss(0.5 * increment_variance(spec, h), Tag::BrownResnick);
    case ModelKind::Smith:
      return husler_reiss(0.5 * increment_variance(spec, h), Tag::Smith);
    case ModelKind::ExtremalGaussian:
      return extremal_gaussian(eg_correlation(spec, h));
  }
  throw DomainError("unknown model");
}

double l_bivariate_hr(double x1, double x2, double gamma_variogram) {
  if (!(gamma_variogram > 0.0)) throw DomainError("Husler-Reiss variogram must be positive");
  if (!(x1 >= 0.0) || !(x2 >= 0.0)) throw DomainError("tail dependence arguments must be nonnegative");
  if (x1 == 0.0) return x2;
  if (x2 == 0.0) return x1;
  if (std::isinf(gamma_variogram)) return x1 + x2;
  const double a = std::sqrt(gamma_variogram / 2.0);
  const double b = std::sqrt(2.0 * gamma_variogram);
  const double r = std::log(x1 / x2);
  return x1 * normal_cdf(a + r / b) + x2 * normal_cdf(a - r / b);
}

double l_bivariate_eg(double x1, double x2, double rho) {
  if (!(std::abs(rho) <= 1.0)) throw DomainError("extremal Gaussian correlation must lie in [-1,1]");
  if (!(x1 >= 0.0) || !(x2 >= 0.0)) throw DomainError("tail dependence arguments must be nonnegative");
  const double disc = std::max(0.0, x1 * x1 - 2.0 * rho * x1 * x2 + x2 * x2);
  return 0.5 * (x1 + x2 + std::sqrt(disc));
}

namespace {

void check_mc_inputs(std::span<const double> x, const Matrix& m, std::size_t samples) {
  if (m.rows != x.size() || m.cols != x.size()) throw DomainError("matrix dimension does not match argument");
  if (samples < 1000) throw DomainError("Monte-Carlo tail dependence needs at least 1000 samples");
  for (double v : x) {
    if (!(v >= 0.0)) throw DomainError("tail dependence arguments must be nonnegative");
  }
}

}  // namespace

McEstimate l_mc_log_gaussian(std::span<const double> x, const Matrix& cov, std::span<const double> variances,
                             Rng& rng, std::size_t samples) {
  check_mc_inputs(x, cov, samples);
  if (variances.size() != x.size()) throw DomainError("variance vector does not match argument");
  if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) return {0.0, 0.0};

  const CholeskyFactor factor(cov);
  const std::size_t n = x.size();
  std::vector<double> z(n), y(n), log_x(n);
  for (std::size_t j = 0; j < n; ++j) {
    log_x[j] = x[j] > 0.0 ? std::log(x[j]) - 0.5 * variances[j] : -std::numeric_limits<double>::infinity();
  }
  NormalDist normal;
  CompensatedMoments acc;
  for (std::size_t s = 0; s < samples; ++s) {
    for (auto& v : z) v = normal(rng);
    factor.multiply(z, y);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) best = std::max(best, log_x[j] + y[j]);
    acc.add(std::exp(best));
  }
  return acc.estimate();
}

McEstimate l_mc_eg(std::span<const double> x, const Matrix& corr, Rng& rng, std::size_t samples) {
  check_mc_inputs(x, corr, samples);
  if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) return {0.0, 0.0};

  const CholeskyFactor factor(corr);
  const std::size_t n = x.size();
  std::vector<double> z(n), y(n);
  NormalDist normal;
  CompensatedMoments acc;
  const double scale = std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t s = 0; s < samples; ++s) {
    for (auto& v : z) v = normal(rng);
    factor.multiply(z, y);
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) best = std::max(best, x[j] * y[j]);
    acc.add(scale * best);
  }
  return acc.estimate();
}

double extremal_coefficient(const ModelSpec& spec, double h) {
  spec.validate();
  if (!(h >= 0.0)) throw DomainError("lag must be nonnegative");
  switch (spec.kind) {
    case ModelKind::BrownResnick:
    case ModelKind::Smith:
      return 2.0 * normal_cdf(0.5 * std::sqrt(increment_variance(spec, h)));
    case ModelKind::ExtremalGaussian:
      return 1.0 + std::sqrt(1.0 - eg_correlation(spec, h)) / std::numbers::sqrt2;
  }
  throw DomainError("unknown model");
}

double max_extremal_coefficient(ModelKind kind) {
  return kind == ModelKind::ExtremalGaussian ? 1.0 + 1.0 / std::numbers::sqrt2 : 2.0;
}

double calibrate_sigma(ModelKind kind, double theta) {
  if (!(theta > 1.0 && theta < 2.0)) throw DomainError("target extremal coefficient must lie in (1,2)");
  if (theta >= max_extremal_coefficient(kind)) {
    throw InfeasibleError("extremal Gaussian coefficient is bounded by 1 + 1/sqrt(2); target " +
                          std::to_string(theta) + " is unreachable");
  }
  // theta(1; sigma) is increasing in sigma for Brown-Resnick and decreasing for the others.
  const bool increasing = kind == ModelKind::BrownResnick;
  auto theta_at = [kind](double s) { return extremal_coefficient(ModelSpec{kind, 1, s}, 1.0); };

  // Widen the bracket geometrically; near-independence can need very large scales.
  double lo = 1e-8;
  double hi = 1e3;
  while ((theta_at(hi) > theta) != increasing && hi < 1e300) hi *= 1e3;
  while ((theta_at(lo) > theta) == increasing && lo > 1e-300) lo *= 1e-3;
  for (int it = 0; it < 2000 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    const bool above = theta_at(mid) > theta;
    if (above == increasing) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double sigma = 0.5 * (lo + hi);
  if (std::abs(theta_at(sigma) - theta) > 1e-9) {
    throw InfeasibleError("calibration did not bracket extremal coefficient " + std::to_string(theta));
  }
  return sigma;
}

}  // namespace maxstable
