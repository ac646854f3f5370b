#pragma once

#include <cstddef>
#include <vector>

#include "maxstable/grid.hpp"
#include "maxstable/optimizer.hpp"
#include "maxstable/problem.hpp"

namespace maxstable {

struct ForecastSettings {
  std::size_t sample_size = 21;        ///< n
  std::size_t learning_samples = 100;  ///< N
  std::size_t horizon = 20;            ///< L
  /// Trailing sites held out of the observations (e.g. ground truth for
  /// evaluation); 0 forecasts beyond the end of the series.
  std::size_t holdout = 0;
  double alpha = 1.0;
  double gamma = 0.0;
  Variant variant = Variant::NonBootstrap;
  OptimizerConfig optimizer;
  unsigned threads = 1;
};

struct StepForecast {
  std::size_t step = 0;
  Site target;
  double prediction = 0.0;
  Weights weights;
  double phi = 0.0;
  std::size_t iterations = 0;
};

/// Direct multi-horizon forecast: one optimization per step s = 1..L with
/// target offset s from the same observed forecast window. Step s uses the
/// optimizer seed config.seed + s - 1 (and, for the bootstrap variant, a
/// resampling drawn from it).
std::vector<StepForecast> forecast_path(const Path& series, const ForecastSettings& settings);

/// Convenience: predictions only.
std::vector<double> forecast_values(const Path& series, const ForecastSettings& settings);

struct FieldForecastSettings {
  std::size_t horizon = 10;           ///< m; the forecast sample has m + 1 points
  std::size_t learning_samples = 50;  ///< N configurations per target
  double alpha = 1.0;
  double gamma = 0.0;
  OptimizerConfig optimizer;
  unsigned threads = 1;
};

/// Target sites of an n x n observation grid extended by m:
/// {1..n} x {n+1..n+m}, {n+1..n+m} x {1..n}, {n+1..n+m} x {n+1..n+m}, row-major.
std::vector<Site> extension_targets(std::size_t n, std::size_t m);

/// The `count` observed sites of `grid` closest to `target`; equal distances
/// are ordered by the polar angle of the vector target -> site in [0, 2 pi),
/// measured from the +row axis toward the +col axis.
std::vector<Site> nearest_sites(const GridSpec& grid, const Site& target, std::size_t count);

/// Translations k, scanned in raster order, such that forecast_sites + k and
/// target + k lie in the grid, the shifted forecast sites avoid the forecast
/// sample, and the shifted forecast sets are pairwise disjoint. Throws
/// ProblemError when fewer than `count` exist.
std::vector<Site> select_learning_shifts(const GridSpec& grid, const std::vector<Site>& forecast_sites,
                                         const Site& target, std::size_t count);

/// Extends an n x n field to (n+m) x (n+m): observed values are copied and
/// every extension site is predicted from its m + 1 nearest observed points.
Path forecast_field_2d(const Path& field, const FieldForecastSettings& settings);

}  // namespace maxstable
