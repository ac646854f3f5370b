#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "maxstable/forecast.hpp"
#include "maxstable/frechet.hpp"
#include "maxstable/optimizer.hpp"

namespace maxstable {

struct RainfallRecord {
  int year = 0;
  std::string station;
  std::optional<double> value;  ///< annual maximum of daily rainfall; empty when missing
};

/// Parses `year,station,value` with a mandatory header row; an empty value
/// field marks a missing observation. Throws IngestError on malformed rows.
std::vector<RainfallRecord> read_rainfall_csv(std::istream& in);

struct RainfallSeries {
  std::vector<int> years;  ///< contiguous
  std::vector<double> values;
  std::vector<bool> imputed;
};

/// Assembles a complete annual series over the contiguous span of years seen
/// in the records. The primary station's value is used where present;
/// otherwise the mean of the other stations' values for that year. Throws
/// IngestError if the primary station is absent, a (year, station) pair is
/// duplicated, a value is negative, or some year has no value at any station
/// (all such years are listed).
RainfallSeries ingest_rainfall(const std::vector<RainfallRecord>& records, const std::string& primary_station);

struct RainfallConfig {
  std::size_t sample_size = 4;
  std::size_t learning_samples = 35;
  std::size_t horizon = 3;
  /// Trailing years excluded from fitting and learning (compared against the
  /// forecast); 0 forecasts beyond the last year.
  std::size_t holdout = 3;
  double gamma = 2.0;
  std::size_t bootstrap_runs = 100;
  OptimizerConfig optimizer;
  FrechetFitOptions fit;
  unsigned threads = 1;
};

struct RainfallForecast {
  FrechetParams marginal;
  std::vector<int> years;
  std::vector<double> prediction;  ///< non-bootstrap point forecast
  std::vector<double> envelope_min;
  std::vector<double> envelope_max;
  std::vector<std::optional<double>> observed;  ///< held-out values, if any
};

/// Fits the shifted Fréchet marginal on the observed years, forecasts the
/// standardized series (x - mu) / sigma with alpha = alpha-hat, and maps the
/// predictions back. The envelope is the pointwise min/max of
/// `bootstrap_runs` bootstrap-variant forecasts with independent seeds.
RainfallForecast rainfall_forecast(const RainfallSeries& series, const RainfallConfig& config);

}  // namespace maxstable
