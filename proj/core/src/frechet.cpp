#include "maxstable/frechet.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <numeric>
#include <set>
#include <string>

#include "maxstable/errors.hpp"

namespace maxstable {

namespace {

// exp(-t) underflows to exactly 0 well before t reaches this.
constexpr double kMaxExponent = 745.0;

double neg_power(double z, double alpha) {
  // z^(-alpha) computed in log space so that overflow is detected instead of producing inf*0.
  return std::exp(-alpha * std::log(z));
}

}  // namespace

void FrechetParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("Frechet shape alpha must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("Frechet scale sigma must be positive");
  if (!std::isfinite(mu)) throw DomainError("Frechet location mu must be finite");
}

double frechet_unit_cdf(double x, double alpha) {
  if (!(x > 0.0)) return 0.0;
  const double t = neg_power(x, alpha);
  if (t > kMaxExponent) return 0.0;
  return std::exp(-t);
}

double frechet_unit_density(double x, double alpha) {
  if (!(x > 0.0)) return 0.0;
  const double t = neg_power(x, alpha);
  if (!(t < kMaxExponent)) return 0.0;
  return alpha * t / x * std::exp(-t);
}

double frechet_cdf(double x, const FrechetParams& p) {
  if (!(x > p.mu)) return 0.0;
  return frechet_unit_cdf((x - p.mu) / p.sigma, p.alpha);
}

double frechet_pdf(double x, const FrechetParams& p) {
  if (!(x > p.mu)) return 0.0;
  return frechet_unit_density((x - p.mu) / p.sigma, p.alpha) / p.sigma;
}

double frechet_quantile(double prob, const FrechetParams& p) {
  if (!(prob > 0.0 && prob < 1.0)) throw DomainError("Frechet quantile requires prob in (0,1)");
  return p.mu + p.sigma * std::pow(-std::log(prob), -1.0 / p.alpha);
}

double frechet_sample(const FrechetParams& p, Rng& rng) { return frechet_quantile(uniform_open(rng), p); }

std::vector<double> frechet_sample(const FrechetParams& p, Rng& rng, std::size_t count) {
  std::vector<double> out(count);
  for (auto& v : out) v = frechet_sample(p, rng);
  return out;
}

double frechet_quasi_loglik(std::span<const double> data, const FrechetParams& p) {
  const double m = static_cast<double>(data.size());
  double sum_pow = 0.0;
  double sum_log = 0.0;
  for (double x : data) {
    const double z = (x - p.mu) / p.sigma;
    if (!(z > 0.0)) return -std::numeric_limits<double>::infinity();
    const double lz = std::log(z);
    sum_log += lz;
    sum_pow += std::exp(-p.alpha * lz);
  }
  return m * std::log(p.alpha / p.sigma) - sum_pow - (p.alpha + 1.0) * sum_log;
}

namespace {

struct FitContext {
  std::span<const double> data;
  double mu_ceiling;  // largest admissible mu
};

// Unconstrained coordinates: (log alpha, log sigma, log(mu_ceiling - mu)).
FrechetParams decode(const gsl_vector* v, double mu_ceiling) {
  return {std::exp(gsl_vector_get(v, 0)), mu_ceiling - std::exp(gsl_vector_get(v, 2)),
          std::exp(gsl_vector_get(v, 1))};
}

double negative_loglik(const gsl_vector* v, void* params) {
  const auto* ctx = static_cast<const FitContext*>(params);
  const FrechetParams p = decode(v, ctx->mu_ceiling);
  if (!std::isfinite(p.alpha) || !std::isfinite(p.sigma) || !std::isfinite(p.mu) || p.alpha <= 0.0 ||
      p.sigma <= 0.0) {
    return std::numeric_limits<double>::max();
  }
  const double ll = frechet_quasi_loglik(ctx->data, p);
  return std::isfinite(ll) ? -ll : std::numeric_limits<double>::max();
}

struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};

}  // namespace

FrechetParams fit_quasi_ml(std::span<const double> data, const FrechetFitOptions& options) {
  if (data.size() < 10) throw FitError("quasi-ML fit needs at least 10 observations");
  for (double x : data) {
    if (!std::isfinite(x)) throw FitError("quasi-ML fit: non-finite observation");
  }
  const std::set<double> distinct(data.begin(), data.end());
  if (distinct.size() < 10) throw FitError("quasi-ML fit needs at least 10 distinct values");

  const auto [lo_it, hi_it] = std::minmax_element(data.begin(), data.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  const double eps = 1e-6 * range;

  FitContext ctx{data, lo - eps};

  gsl_multimin_function fn;
  fn.n = 3;
  fn.f = &negative_loglik;
  fn.params = &ctx;

  // Moment-based starts: for a trial location the log-excess is Gumbel with
  // scale 1/alpha, giving alpha from its standard deviation and sigma from its mean.
  const double shifts[] = {0.05, 0.3, 1.0, 3.0, 10.0};
  constexpr double kEulerGamma = 0.57721566490153286;

  gsl_set_error_handler_off();
  double best_value = std::numeric_limits<double>::infinity();
  FrechetParams best{};

  for (double c : shifts) {
    const double mu0 = lo - c * range;
    std::vector<double> logs(data.size());
    std::transform(data.begin(), data.end(), logs.begin(), [&](double x) { return std::log(x - mu0); });
    const double mean = std::accumulate(logs.begin(), logs.end(), 0.0) / static_cast<double>(logs.size());
    double var = 0.0;
    for (double l : logs) var += (l - mean) * (l - mean);
    var /= static_cast<double>(logs.size() - 1);
    const double alpha0 = std::numbers::pi / std::sqrt(6.0 * var);
    const double sigma0 = std::exp(mean - kEulerGamma / alpha0);

    std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(3));
    std::unique_ptr<gsl_vector, VectorDeleter> step(gsl_vector_alloc(3));
    gsl_vector_set(x.get(), 0, std::log(alpha0));
    gsl_vector_set(x.get(), 1, std::log(sigma0));
    gsl_vector_set(x.get(), 2, std::log(ctx.mu_ceiling - mu0));
    gsl_vector_set_all(step.get(), 0.25);

    std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> solver(
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 3));
    if (gsl_multimin_fminimizer_set(solver.get(), &fn, x.get(), step.get()) != GSL_SUCCESS) continue;

    // Restart once from the converged point: Nelder-Mead can stall on a collapsed simplex.
    for (int restart = 0; restart < 2; ++restart) {
      for (int iter = 0; iter < options.max_iterations; ++iter) {
        if (gsl_multimin_fminimizer_iterate(solver.get()) != GSL_SUCCESS) break;
        const double size = gsl_multimin_fminimizer_size(solver.get());
        if (gsl_multimin_test_size(size, options.simplex_tolerance) == GSL_SUCCESS) break;
      }
      gsl_vector_memcpy(x.get(), gsl_multimin_fminimizer_x(solver.get()));
      gsl_vector_set_all(step.get(), 0.05);
      if (gsl_multimin_fminimizer_set(solver.get(), &fn, x.get(), step.get()) != GSL_SUCCESS) break;
    }

    const double value = gsl_multimin_fminimizer_minimum(solver.get());
    if (std::isfinite(value) && value < best_value) {
      best_value = value;
      best = decode(gsl_multimin_fminimizer_x(solver.get()), ctx.mu_ceiling);
    }
  }

  if (!std::isfinite(best_value) || best_value >= std::numeric_limits<double>::max()) {
    throw FitError("quasi-ML fit did not converge from any starting point");
  }
  return best;
}

}  // namespace maxstable
