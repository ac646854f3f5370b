#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "maxstable/optimizer.hpp"
#include "maxstable/stats.hpp"
#include "maxstable/taildep.hpp"

namespace maxstable {

/// (x - min x) / (max x - min x). Throws DomainError for constant input.
std::vector<double> normalize(std::span<const double> values);

struct TuneSettings {
  std::vector<double> gamma_grid = default_gamma_grid();
  std::size_t replications = 1000;  ///< K
  std::size_t sample_size = 2;       ///< n
  std::size_t learning_samples = 100;
  std::size_t mse_grid = 100;  ///< M
  OptimizerConfig optimizer;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  static std::vector<double> default_gamma_grid();  // {0, 1, ..., 20}
};

struct GammaSweep {
  std::vector<double> gamma_grid;
  std::size_t replications = 0;
  std::vector<McEstimate> excursion;
  std::vector<double> mse;
  std::vector<double> excursion_norm;
  std::vector<double> mse_norm;
  std::size_t opt_index = 0;
  double gamma_opt = 0.0;
};

/// Simulates K series of length N*n + n + 1 once (replication k from
/// make_rng(seed, k)) and, for every gamma, forecasts the last site from the
/// n before it. Returns the empirical excursion and MSE curves and
/// argmin_gamma max(normalized excursion, normalized MSE), smallest gamma on
/// ties. Throws TuningError if a curve is constant and InfeasibleError /
/// DomainError from the model spec.
GammaSweep tune_gamma(const ModelSpec& spec, const TuneSettings& settings);

/// gamma,excursion,mse,excursion_norm,mse_norm
void write_sweep_csv(std::ostream& out, const GammaSweep& sweep);

}  // namespace maxstable
