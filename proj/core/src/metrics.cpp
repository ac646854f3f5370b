#include "maxstable/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "maxstable/errors.hpp"
#include "maxstable/stats.hpp"

namespace maxstable {

namespace {

std::vector<double> powered(std::span<const double> w, double alpha) {
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] >= 0.0)) throw DomainError("weights must be nonnegative");
    out[i] = std::pow(w[i], alpha);
  }
  return out;
}

bool all_zero(std::span<const double> w) {
  return std::all_of(w.begin(), w.end(), [](double v) { return v == 0.0; });
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
}

}  // namespace

MetricValue excursion_maxlinear(const TailDepFn& l, std::span<const double> w1, std::span<const double> w2,
                                double alpha) {
  check_alpha(alpha);
  if (w1.size() != w2.size() || w1.size() != l.arity()) throw DomainError("weight dimension mismatch");
  if (all_zero(w1) || all_zero(w2)) throw DomainError("weight vectors must be nonzero");
  const auto a = powered(w1, alpha);
  const auto b = powered(w2, alpha);
  std::vector<double> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = std::max(a[i], b[i]);
  const double value = 1.0 / (1.0 + l(a)) + 1.0 / (1.0 + l(b)) - 2.0 / (1.0 + l(c));
  return {std::max(0.0, value), std::nullopt};
}

MetricValue excursion_target_vs_predictor(const TailDepFn& l_ext, double gamma0, std::span<const double> w,
                                          double alpha) {
  check_alpha(alpha);
  if (w.size() + 1 != l_ext.arity()) throw DomainError("extended tail dependence arity must be n + 1");
  if (!(gamma0 >= 0.0)) throw DomainError("target weight must be nonnegative");
  if (gamma0 == 0.0 && all_zero(w)) throw DomainError("target and predictor weights are both zero");
  const auto wa = powered(w, alpha);
  std::vector<double> ext(wa.size() + 1, 0.0);
  std::copy(wa.begin(), wa.end(), ext.begin() + 1);
  const double l_pred = l_ext(ext);
  ext[0] = std::pow(gamma0, alpha);
  const double l_joint = l_ext(ext);
  return {1.0 / (ext[0] + 1.0) + 1.0 / (l_pred + 1.0) - 2.0 / (l_joint + 1.0), std::nullopt};
}

MetricValue excursion_min_component(const TailDepFn& l, double gamma_k, std::span<const double> w, double alpha) {
  check_alpha(alpha);
  if (w.size() != l.arity()) throw DomainError("weight dimension mismatch");
  if (!(gamma_k >= 0.0)) throw DomainError("component weight must be nonnegative");
  if (all_zero(w)) throw DomainError("weight vector must be nonzero");
  const auto wa = powered(w, alpha);
  return {1.0 / (std::pow(gamma_k, alpha) + 1.0) - 1.0 / (l(wa) + 1.0), std::nullopt};
}

MetricValue excursion_empirical(std::span<const double> x0, std::span<const double> xhat,
                                const FrechetParams& marginal) {
  if (x0.size() != xhat.size()) throw DomainError("target and prediction samples differ in length");
  if (x0.empty()) throw DomainError("empirical excursion needs at least one sample");
  marginal.validate();
  CompensatedMoments acc;
  for (std::size_t j = 0; j < x0.size(); ++j) {
    acc.add(2.0 * frechet_cdf(std::max(x0[j], xhat[j]), marginal) - frechet_cdf(xhat[j], marginal));
  }
  const McEstimate est = acc.estimate();
  return {est.value - 0.5, est.standard_error};
}

double davis_resnick_from_excursion(double e) {
  if (!(e >= 0.0 && e < 1.0)) throw DomainError("excursion value must lie in [0,1)");
  return 4.0 * e / (1.0 - e);
}

double excursion_from_davis_resnick(double d) {
  if (!(d >= 0.0)) throw DomainError("Davis-Resnick distance must be nonnegative");
  if (std::isinf(d)) return 1.0;
  return d / (4.0 + d);
}

double wasserstein1_penalty(double l_value) {
  if (!(l_value >= 0.0)) throw DomainError("tail dependence value must be nonnegative");
  if (std::isinf(l_value)) return 0.5;
  return 0.5 * std::abs(l_value - 1.0) / (l_value + 1.0);
}

double wasserstein2_sq_penalty(double l_value) {
  if (!(l_value >= 0.0)) throw DomainError("tail dependence value must be nonnegative");
  if (std::isinf(l_value)) return 1.0 / 3.0;
  const double d = l_value - 1.0;
  return (2.0 / 3.0) * d * d / ((2.0 * l_value + 1.0) * (l_value + 2.0));
}

double mse_hat(std::span<const double> uniforms, std::size_t grid_size) {
  if (uniforms.empty()) throw DomainError("mse_hat needs at least one value");
  if (grid_size == 0) throw DomainError("grid size must be positive");
  std::vector<double> sorted(uniforms.begin(), uniforms.end());
  std::sort(sorted.begin(), sorted.end());
  const double k = static_cast<double>(sorted.size());
  const double m = static_cast<double>(grid_size);
  double total = 0.0;
  for (std::size_t h = 1; h <= grid_size; ++h) {
    const double x = static_cast<double>(h) / m;
    const auto count = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
    const double diff = static_cast<double>(count) / k - x;
    total += diff * diff;
  }
  return total / m;
}

double benchmark_excursion(const ModelSpec& spec, double lag) {
  if (!(lag >= 0.0)) throw DomainError("lag must be nonnegative");
  return 1.0 - 2.0 / (extremal_coefficient(spec, lag) + 1.0);
}

std::vector<double> benchmark_curve(const ModelSpec& spec, std::size_t steps) {
  std::vector<double> out(steps);
  for (std::size_t s = 0; s < steps; ++s) out[s] = benchmark_excursion(spec, static_cast<double>(s + 1));
  return out;
}

}  // namespace maxstable
