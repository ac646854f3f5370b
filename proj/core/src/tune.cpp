#include "maxstable/tune.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

#include "maxstable/errors.hpp"
#include "maxstable/frechet.hpp"
#include "maxstable/metrics.hpp"
#include "maxstable/parallel.hpp"
#include "maxstable/problem.hpp"
#include "maxstable/simulate.hpp"

namespace maxstable {

std::vector<double> normalize(std::span<const double> values) {
  if (values.empty()) throw DomainError("cannot normalize an empty vector");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (!(*hi > *lo)) throw DomainError("cannot normalize a constant vector");
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - *lo) / (*hi - *lo);
  return out;
}

std::vector<double> TuneSettings::default_gamma_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 20; ++i) g.push_back(i);
  return g;
}

GammaSweep tune_gamma(const ModelSpec& spec, const TuneSettings& settings) {
  spec.validate();
  if (settings.gamma_grid.empty()) throw DomainError("gamma grid is empty");
  if (!std::is_sorted(settings.gamma_grid.begin(), settings.gamma_grid.end())) {
    throw DomainError("gamma grid must be sorted ascending");
  }
  if (settings.replications == 0) throw DomainError("tuning needs at least one replication");

  const std::size_t K = settings.replications;
  const std::size_t G = settings.gamma_grid.size();
  const LearningLayout layout{settings.sample_size, settings.learning_samples, 1, 1};
  const GridSpec grid = GridSpec::line(series_length_for(1, settings.sample_size, settings.learning_samples));

  // The same K series serve every gamma, so the curves differ only through gamma.
  std::vector<ForecastProblem> problems(K);
  std::vector<double> truth(K);
  parallel_for(K, settings.threads, [&](std::size_t k) {
    Rng rng = make_rng(settings.seed, k);
    const Path series = simulate_max_stable(spec, grid, rng);
    problems[k] = build_learning_samples(series, layout, 1.0, 0.0);
    truth[k] = series.values.back();
  });

  std::vector<double> predictions(G * K);
  parallel_for(G * K, settings.threads, [&](std::size_t task) {
    const std::size_t g = task / K;
    const std::size_t k = task % K;
    ForecastProblem problem = problems[k];
    problem.gamma = settings.gamma_grid[g];
    OptimizerConfig config = settings.optimizer;
    config.seed = settings.optimizer.seed + k;
    const SgdResult result = sgd_minimize(problem, config);
    predictions[task] = max_linear(result.weights.lambda, problem.forecast_values);
  });

  GammaSweep sweep;
  sweep.gamma_grid = settings.gamma_grid;
  sweep.replications = K;
  const FrechetParams unit = FrechetParams::unit();
  for (std::size_t g = 0; g < G; ++g) {
    const std::span<const double> pred(predictions.data() + g * K, K);
    const MetricValue e = excursion_empirical(truth, pred, unit);
    sweep.excursion.push_back({e.value, e.standard_error.value_or(0.0)});
    std::vector<double> u(K);
    for (std::size_t k = 0; k < K; ++k) u[k] = frechet_unit_cdf(pred[k], 1.0);
    sweep.mse.push_back(mse_hat(u, settings.mse_grid));
  }

  if (G == 1) {
    sweep.excursion_norm = {0.0};
    sweep.mse_norm = {0.0};
    return sweep;
  }
  std::vector<double> e_values;
  for (const auto& e : sweep.excursion) e_values.push_back(e.value);
  try {
    sweep.excursion_norm = normalize(e_values);
    sweep.mse_norm = normalize(sweep.mse);
  } catch (const DomainError& err) {
    throw TuningError(std::string("tuning curves cannot be normalized: ") + err.what());
  }
  double best = 2.0;
  for (std::size_t g = 0; g < G; ++g) {
    const double v = std::max(sweep.excursion_norm[g], sweep.mse_norm[g]);
    if (v < best) {
      best = v;
      sweep.opt_index = g;
    }
  }
  sweep.gamma_opt = sweep.gamma_grid[sweep.opt_index];
  return sweep;
}

void write_sweep_csv(std::ostream& out, const GammaSweep& sweep) {
  out << "gamma,excursion,mse,excursion_norm,mse_norm\n";
  out << std::setprecision(17);
  for (std::size_t g = 0; g < sweep.gamma_grid.size(); ++g) {
    out << sweep.gamma_grid[g] << ',' << sweep.excursion[g].value << ',' << sweep.mse[g] << ','
        << sweep.excursion_norm[g] << ',' << sweep.mse_norm[g] << '\n';
  }
}

}  // namespace maxstable
