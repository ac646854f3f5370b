#include "maxstable/objective.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maxstable/errors.hpp"
#include "maxstable/frechet.hpp"
#include "maxstable/metrics.hpp"

namespace maxstable {

double max_linear(std::span<const double> lambda, std::span<const double> x) {
  if (lambda.size() != x.size()) throw DomainError("weights and observations differ in dimension");
  if (x.empty()) throw DomainError("max-linear combination of an empty vector");
  double best = lambda[0] * x[0];
  for (std::size_t i = 1; i < x.size(); ++i) best = std::max(best, lambda[i] * x[i]);
  return best;
}

std::vector<std::size_t> bootstrap_indices(std::size_t N, Rng& rng) {
  if (N == 0) throw DomainError("bootstrap needs at least one learning sample");
  std::uniform_int_distribution<std::size_t> pick(0, N - 1);
  std::vector<std::size_t> out(N);
  for (auto& h : out) h = pick(rng);
  return out;
}

std::vector<double> bootstrap_Y(const ForecastProblem& problem, std::span<const double> lambda,
                                std::span<const std::size_t> indices) {
  std::vector<double> out;
  out.reserve(indices.size());
  for (std::size_t h : indices) {
    if (h >= problem.N()) throw DomainError("bootstrap index out of range");
    out.push_back(frechet_unit_cdf(max_linear(lambda, problem.window(h)), problem.alpha));
  }
  return out;
}

std::vector<double> bootstrap_Y(const ForecastProblem& problem, std::span<const double> lambda, Rng& rng) {
  const auto idx = bootstrap_indices(problem.N(), rng);
  return bootstrap_Y(problem, lambda, idx);
}

EmpiricalObjective::EmpiricalObjective(const ForecastProblem& problem, std::vector<std::size_t> bootstrap)
    : problem_(&problem), bootstrap_(std::move(bootstrap)) {
  problem.validate();
  if (problem.variant == Variant::Bootstrap) {
    if (bootstrap_.size() != problem.N()) throw DomainError("bootstrap variant needs N resampling indices");
    for (std::size_t h : bootstrap_) {
      if (h >= problem.N()) throw DomainError("bootstrap index out of range");
    }
  }
}

EmpiricalObjective::Window EmpiricalObjective::evaluate(std::span<const double> lambda,
                                                        std::span<const double> x) const {
  Window w{lambda[0] * x[0], 0, false};
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double v = lambda[i] * x[i];
    if (v > w.m) {
      w = {v, i, false};
    } else if (v == w.m) {
      w.tie = true;
    }
  }
  return w;
}

double EmpiricalObjective::u_of(double m) const { return frechet_unit_cdf(m, problem_->alpha); }
double EmpiricalObjective::h_of(double m) const { return frechet_unit_density(m, problem_->alpha); }

double EmpiricalObjective::value(std::span<const double> lambda) const {
  const ForecastProblem& p = *problem_;
  if (lambda.size() != p.n()) throw DomainError("weights and forecast sample differ in dimension");
  const std::size_t N = p.N();
  std::vector<double> u(N);
  double excursion = 0.0;
  double square = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    const double m = max_linear(lambda, p.window(j));
    u[j] = u_of(m);
    excursion += 2.0 * u_of(std::max(p.learning_targets[j], m)) - u[j] - 0.5;
    square += u[j] * u[j];
  }
  const double inv_n = 1.0 / static_cast<double>(N);
  double coupling = 0.0;
  if (p.variant == Variant::NonBootstrap) {
    // sum_{m,l} max(u_m, u_l) = sum_i u_(i) (2i - 1) over the ascending order statistics.
    std::vector<double> sorted = u;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < N; ++i) coupling += sorted[i] * static_cast<double>(2 * i + 1);
    coupling *= inv_n * inv_n;
  } else {
    for (std::size_t j = 0; j < N; ++j) coupling += std::max(u[j], u[bootstrap_[j]]);
    coupling *= inv_n;
  }
  return excursion * inv_n + p.gamma * (1.0 / 3.0 + square * inv_n - coupling);
}

double EmpiricalObjective::summand(std::span<const double> lambda, std::size_t j) const {
  const ForecastProblem& p = *problem_;
  if (j >= p.N()) throw DomainError("summand index out of range");
  const double m = max_linear(lambda, p.window(j));
  const double u = u_of(m);
  const double excursion = 2.0 * u_of(std::max(p.learning_targets[j], m)) - u - 0.5;
  if (p.variant == Variant::Bootstrap) {
    const double y = u_of(max_linear(lambda, p.window(bootstrap_[j])));
    return excursion + p.gamma * (1.0 / 3.0 - std::max(u, y) + u * u);
  }
  double pairs = u;
  for (std::size_t k = 0; k < j; ++k) pairs += 2.0 * std::max(u_of(max_linear(lambda, p.window(k))), u);
  return excursion + p.gamma / 3.0 + p.gamma * u * u - p.gamma / static_cast<double>(p.N()) * pairs;
}

bool EmpiricalObjective::on_tie_set(std::span<const double> lambda, std::size_t j) const {
  const ForecastProblem& p = *problem_;
  const Window wj = evaluate(lambda, p.window(j));
  if (wj.tie || p.learning_targets[j] == wj.m) return true;
  if (p.variant == Variant::Bootstrap) {
    const std::size_t h = bootstrap_[j];
    if (h == j) return false;
    const Window wh = evaluate(lambda, p.window(h));
    return wh.tie || wh.m == wj.m;
  }
  for (std::size_t k = 0; k < j; ++k) {
    const Window wk = evaluate(lambda, p.window(k));
    if (wk.tie || wk.m == wj.m) return true;
  }
  return false;
}

bool EmpiricalObjective::summand_gradient(std::span<const double> lambda, std::size_t j,
                                          std::span<double> grad) const {
  const ForecastProblem& p = *problem_;
  if (lambda.size() != p.n() || grad.size() != p.n()) throw DomainError("gradient dimension mismatch");
  if (j >= p.N()) throw DomainError("summand index out of range");
  std::fill(grad.begin(), grad.end(), 0.0);
  const double gamma = p.gamma;
  const auto xj = p.window(j);
  const Window wj = evaluate(lambda, xj);
  const double uj = u_of(wj.m);
  bool smooth = !wj.tie && p.learning_targets[j] != wj.m;
  double coef = (p.learning_targets[j] < wj.m ? 2.0 : 0.0) - 1.0 + 2.0 * gamma * uj;

  if (p.variant == Variant::Bootstrap) {
    const std::size_t h = bootstrap_[j];
    if (h == j) {
      coef -= gamma;
    } else {
      const auto xh = p.window(h);
      const Window wh = evaluate(lambda, xh);
      smooth = smooth && !wh.tie && wh.m != wj.m;
      if (wh.m <= wj.m) {
        coef -= gamma;
      } else {
        grad[wh.arg] -= gamma * h_of(wh.m) * xh[wh.arg];
      }
    }
    grad[wj.arg] += coef * h_of(wj.m) * xj[wj.arg];
    return smooth;
  }

  const double scale = 2.0 * gamma / static_cast<double>(p.N());
  coef -= gamma / static_cast<double>(p.N());
  for (std::size_t k = 0; k < j; ++k) {
    const auto xk = p.window(k);
    const Window wk = evaluate(lambda, xk);
    if (wk.tie || wk.m == wj.m) smooth = false;
    if (wk.m < wj.m) {
      coef -= scale;
    } else if (wk.m > wj.m) {
      grad[wk.arg] -= scale * h_of(wk.m) * xk[wk.arg];
    }
  }
  grad[wj.arg] += coef * h_of(wj.m) * xj[wj.arg];
  return smooth;
}

double EmpiricalObjective::value_and_gradient(std::span<const double> lambda, std::span<double> grad) const {
  const ForecastProblem& p = *problem_;
  if (lambda.size() != p.n() || grad.size() != p.n()) throw DomainError("gradient dimension mismatch");
  const std::size_t N = p.N();
  std::fill(grad.begin(), grad.end(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(N);
  if (p.variant == Variant::Bootstrap) {
    std::vector<double> g(p.n());
    for (std::size_t j = 0; j < N; ++j) {
      summand_gradient(lambda, j, g);
      for (std::size_t i = 0; i < p.n(); ++i) grad[i] += g[i] * inv_n;
    }
    return value(lambda);
  }

  std::vector<Window> w(N);
  for (std::size_t j = 0; j < N; ++j) w[j] = evaluate(lambda, p.window(j));
  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a].m < w[b].m; });

  double excursion = 0.0, square = 0.0, coupling = 0.0;
  std::size_t rank = 0;  // number of windows with strictly smaller maximum
  for (std::size_t pos = 0; pos < N; ++pos) {
    const std::size_t j = order[pos];
    if (pos > 0 && w[order[pos - 1]].m < w[j].m) rank = pos;
    const double u = u_of(w[j].m);
    excursion += 2.0 * u_of(std::max(p.learning_targets[j], w[j].m)) - u - 0.5;
    square += u * u;
    coupling += u * static_cast<double>(2 * pos + 1);
    const double coef = (p.learning_targets[j] < w[j].m ? 2.0 : 0.0) - 1.0 + 2.0 * p.gamma * u -
                        p.gamma * inv_n * (1.0 + 2.0 * static_cast<double>(rank));
    const auto x = p.window(j);
    grad[w[j].arg] += inv_n * coef * h_of(w[j].m) * x[w[j].arg];
  }
  return excursion * inv_n + p.gamma * (1.0 / 3.0 + square * inv_n - coupling * inv_n * inv_n);
}

double target_phi(std::span<const double> lambda, const ForecastProblem& problem, Rng& rng) {
  if (problem.variant == Variant::Bootstrap) {
    return EmpiricalObjective(problem, bootstrap_indices(problem.N(), rng)).value(lambda);
  }
  return EmpiricalObjective(problem).value(lambda);
}

double target_phi(std::span<const double> lambda, const ForecastProblem& problem,
                  std::span<const std::size_t> bootstrap) {
  return EmpiricalObjective(problem, {bootstrap.begin(), bootstrap.end()}).value(lambda);
}

std::vector<double> grad_q(std::span<const double> lambda, const ForecastProblem& problem, std::size_t j,
                           std::span<const std::size_t> bootstrap) {
  EmpiricalObjective objective(problem, {bootstrap.begin(), bootstrap.end()});
  std::vector<double> g(problem.n());
  objective.summand_gradient(lambda, j, g);
  return g;
}

double analytic_psi1(const TailDepFn& l_ext, std::span<const double> w, double gamma) {
  if (w.size() + 1 != l_ext.arity()) throw DomainError("extended tail dependence arity must be n + 1");
  std::vector<double> ext(w.size() + 1, 0.0);
  std::copy(w.begin(), w.end(), ext.begin() + 1);
  const double l0 = l_ext(ext);
  ext[0] = 1.0;
  const double l1 = l_ext(ext);
  return 1.0 / (l0 + 1.0) - 2.0 / (l1 + 1.0) + gamma * wasserstein2_sq_penalty(l0);
}

AnalyticPsiObjective::AnalyticPsiObjective(TailDepFn l_ext, double alpha, double gamma, double step)
    : l_ext_(std::move(l_ext)), alpha_(alpha), gamma_(gamma), step_(step) {
  if (l_ext_.arity() < 2) throw DomainError("extended tail dependence function needs arity >= 2");
  if (!(alpha_ > 0.0)) throw DomainError("alpha must be positive");
  if (!(step_ > 0.0)) throw DomainError("finite-difference step must be positive");
}

double AnalyticPsiObjective::value(std::span<const double> lambda) const {
  std::vector<double> w(lambda.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::pow(lambda[i], alpha_);
  return analytic_psi1(l_ext_, w, gamma_);
}

bool AnalyticPsiObjective::summand_gradient(std::span<const double> lambda, std::size_t,
                                            std::span<double> grad) const {
  std::vector<double> x(lambda.begin(), lambda.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = step_ * std::max(1.0, x[i]);
    const double base = x[i];
    if (base > h) {
      x[i] = base + h;
      const double up = value(x);
      x[i] = base - h;
      const double down = value(x);
      grad[i] = (up - down) / (2.0 * h);
    } else {
      x[i] = base + h;
      const double up = value(x);
      x[i] = base;
      grad[i] = (up - value(x)) / h;
    }
    x[i] = base;
  }
  return true;
}

}  // namespace maxstable
