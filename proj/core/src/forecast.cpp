#include "maxstable/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "maxstable/errors.hpp"
#include "maxstable/objective.hpp"
#include "maxstable/parallel.hpp"

namespace maxstable {

std::vector<StepForecast> forecast_path(const Path& series, const ForecastSettings& settings) {
  std::vector<StepForecast> out(settings.horizon);
  if (settings.horizon == 0) return out;
  // Validate the layout once up front so errors surface before any work runs.
  build_learning_samples(series, {settings.sample_size, settings.learning_samples, settings.holdout, 1},
                         settings.alpha, settings.gamma, settings.variant);
  parallel_for(settings.horizon, settings.threads, [&](std::size_t idx) {
    const std::size_t step = idx + 1;
    const ForecastProblem problem =
        build_learning_samples(series, {settings.sample_size, settings.learning_samples, settings.holdout, step},
                               settings.alpha, settings.gamma, settings.variant);
    OptimizerConfig config = settings.optimizer;
    config.seed = settings.optimizer.seed + idx;
    const SgdResult result = sgd_minimize(problem, config);
    out[idx] = {step,
                problem.target,
                max_linear(result.weights.lambda, problem.forecast_values),
                result.weights,
                result.phi,
                result.iterations};
  });
  return out;
}

std::vector<double> forecast_values(const Path& series, const ForecastSettings& settings) {
  std::vector<double> out;
  for (const auto& s : forecast_path(series, settings)) out.push_back(s.prediction);
  return out;
}

std::vector<Site> extension_targets(std::size_t n, std::size_t m) {
  std::vector<Site> out;
  const int ni = static_cast<int>(n);
  const int total = static_cast<int>(n + m);
  for (int r = 1; r <= total; ++r) {
    for (int c = 1; c <= total; ++c) {
      if (r > ni || c > ni) out.push_back({r, c});
    }
  }
  return out;
}

std::vector<Site> nearest_sites(const GridSpec& grid, const Site& target, std::size_t count) {
  if (count > grid.size()) throw ProblemError("forecast sample larger than the observed grid");
  struct Candidate {
    long long d2;
    double angle;
    Site site;
  };
  std::vector<Candidate> cand;
  cand.reserve(grid.size());
  for (const Site& s : grid.sites()) {
    const long long dr = s.row - target.row;
    const long long dc = s.col - target.col;
    double angle = std::atan2(static_cast<double>(dc), static_cast<double>(dr));
    if (angle < 0.0) angle += 2.0 * std::numbers::pi;
    cand.push_back({dr * dr + dc * dc, angle, s});
  }
  std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
    if (a.d2 != b.d2) return a.d2 < b.d2;
    return a.angle < b.angle;
  });
  std::vector<Site> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(cand[i].site);
  return out;
}

std::vector<Site> select_learning_shifts(const GridSpec& grid, const std::vector<Site>& forecast_sites,
                                         const Site& target, std::size_t count) {
  std::vector<char> used(grid.size(), 0);
  for (const Site& s : forecast_sites) {
    if (auto idx = grid.index_of(s)) used[*idx] = 1;
  }
  const int rows = static_cast<int>(grid.rows());
  const int cols = static_cast<int>(grid.cols());
  std::vector<Site> shifts;
  std::vector<std::size_t> slots(forecast_sites.size());
  for (int dr = -rows; dr <= rows && shifts.size() < count; ++dr) {
    for (int dc = -cols; dc <= cols && shifts.size() < count; ++dc) {
      const Site k{dr, dc};
      if (!grid.contains(target + k)) continue;
      bool ok = true;
      for (std::size_t i = 0; i < forecast_sites.size() && ok; ++i) {
        const auto idx = grid.index_of(forecast_sites[i] + k);
        ok = idx.has_value() && !used[*idx];
        if (ok) slots[i] = *idx;
      }
      if (!ok) continue;
      for (std::size_t idx : slots) used[idx] = 1;
      shifts.push_back(k);
    }
  }
  if (shifts.size() < count) {
    throw ProblemError("grid of " + std::to_string(grid.rows()) + "x" + std::to_string(grid.cols()) +
                       " hosts only " + std::to_string(shifts.size()) + " disjoint learning configurations for target (" +
                       std::to_string(target.row) + "," + std::to_string(target.col) + "); " +
                       std::to_string(count) + " requested");
  }
  return shifts;
}

Path forecast_field_2d(const Path& field, const FieldForecastSettings& settings) {
  const GridSpec& grid = field.grid;
  if (grid.dimension() != 2 || grid.rows() != grid.cols()) throw ProblemError("2D forecast expects an n x n field");
  if (settings.horizon < 1) throw ProblemError("2D forecast horizon must be at least 1");
  const std::size_t n = grid.rows();
  const std::size_t m = settings.horizon;
  const std::vector<Site> targets = extension_targets(n, m);

  // Build every problem first so layout errors surface before optimization.
  std::vector<ForecastProblem> problems;
  problems.reserve(targets.size());
  for (const Site& t : targets) {
    auto sites = nearest_sites(grid, t, m + 1);
    auto shifts = select_learning_shifts(grid, sites, t, settings.learning_samples);
    problems.push_back(make_problem(field, std::move(sites), t, std::move(shifts), settings.alpha, settings.gamma));
  }

  std::vector<double> predictions(targets.size());
  parallel_for(targets.size(), settings.threads, [&](std::size_t idx) {
    OptimizerConfig config = settings.optimizer;
    config.seed = settings.optimizer.seed + idx;
    const SgdResult result = sgd_minimize(problems[idx], config);
    predictions[idx] = max_linear(result.weights.lambda, problems[idx].forecast_values);
  });

  Path out{GridSpec::square(n + m), {}};
  out.values.assign(out.grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) out.values[*out.grid.index_of(grid.site(i))] = field.values[i];
  for (std::size_t k = 0; k < targets.size(); ++k) out.values[*out.grid.index_of(targets[k])] = predictions[k];
  return out;
}

}  // namespace maxstable
