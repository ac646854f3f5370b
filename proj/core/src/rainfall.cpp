#include "maxstable/rainfall.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "maxstable/errors.hpp"
#include "maxstable/parallel.hpp"
#include "maxstable/rng.hpp"
#include "maxstable/simulate.hpp"

namespace maxstable {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::vector<RainfallRecord> read_rainfall_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IngestError("rainfall CSV is empty");
  const auto header = split(line);
  if (header.size() != 3 || header[0] != "year" || header[1] != "station" || header[2] != "value") {
    throw IngestError("rainfall CSV header must be 'year,station,value'");
  }
  std::vector<RainfallRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split(line);
    if (f.size() != 3) throw IngestError("line " + std::to_string(line_no) + ": expected 3 fields");
    RainfallRecord r;
    auto [p, ec] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), r.year);
    if (ec != std::errc() || p != f[0].data() + f[0].size()) {
      throw IngestError("line " + std::to_string(line_no) + ": invalid year '" + f[0] + "'");
    }
    if (f[1].empty()) throw IngestError("line " + std::to_string(line_no) + ": empty station id");
    r.station = f[1];
    if (!f[2].empty()) {
      try {
        std::size_t used = 0;
        r.value = std::stod(f[2], &used);
        if (used != f[2].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw IngestError("line " + std::to_string(line_no) + ": invalid value '" + f[2] + "'");
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

RainfallSeries ingest_rainfall(const std::vector<RainfallRecord>& records, const std::string& primary_station) {
  if (records.empty()) throw IngestError("no rainfall records");
  std::map<int, std::map<std::string, std::optional<double>>> by_year;
  bool primary_seen = false;
  for (const auto& r : records) {
    if (r.value && (!(*r.value >= 0.0) || !std::isfinite(*r.value))) {
      throw IngestError("negative or non-finite rainfall value for " + r.station + " in " + std::to_string(r.year));
    }
    auto [it, inserted] = by_year[r.year].emplace(r.station, r.value);
    if (!inserted) throw IngestError("duplicate record for station " + r.station + " in " + std::to_string(r.year));
    primary_seen = primary_seen || r.station == primary_station;
  }
  if (!primary_seen) throw IngestError("primary station '" + primary_station + "' not present in the records");

  const int first = by_year.begin()->first;
  const int last = by_year.rbegin()->first;
  RainfallSeries out;
  std::vector<int> missing;
  for (int year = first; year <= last; ++year) {
    const auto it = by_year.find(year);
    std::optional<double> value;
    bool imputed = false;
    if (it != by_year.end()) {
      const auto p = it->second.find(primary_station);
      if (p != it->second.end() && p->second) {
        value = p->second;
      } else {
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& [station, v] : it->second) {
          if (station != primary_station && v) {
            sum += *v;
            ++count;
          }
        }
        if (count > 0) {
          value = sum / static_cast<double>(count);
          imputed = true;
        }
      }
    }
    if (!value) {
      missing.push_back(year);
      continue;
    }
    out.years.push_back(year);
    out.values.push_back(*value);
    out.imputed.push_back(imputed);
  }
  if (!missing.empty()) {
    std::string list;
    for (int y : missing) list += (list.empty() ? "" : ", ") + std::to_string(y);
    throw IngestError("no station has a value for year(s) " + list);
  }
  return out;
}

RainfallForecast rainfall_forecast(const RainfallSeries& series, const RainfallConfig& config) {
  const std::size_t T = series.values.size();
  if (series.years.size() != T) throw ProblemError("rainfall series years and values differ in length");
  if (config.holdout >= T) throw ProblemError("holdout covers the whole series");
  const std::size_t observed = T - config.holdout;
  const std::size_t required = series_length_for(0, config.sample_size, config.learning_samples);
  if (observed < required) {
    throw ProblemError("rainfall series has " + std::to_string(observed) + " observed years but the configuration needs " +
                       std::to_string(required) + " (N*n + n)");
  }

  RainfallForecast out;
  out.marginal = fit_quasi_ml(std::span<const double>(series.values.data(), observed), config.fit);
  const FrechetParams& f = out.marginal;

  Path standardized{GridSpec::line(T), std::vector<double>(T)};
  for (std::size_t t = 0; t < T; ++t) {
    // Held-out years may fall at or below mu-hat; they never enter the problem.
    standardized.values[t] = t < observed ? (series.values[t] - f.mu) / f.sigma : 1.0;
  }

  ForecastSettings settings;
  settings.sample_size = config.sample_size;
  settings.learning_samples = config.learning_samples;
  settings.horizon = config.horizon;
  settings.holdout = config.holdout;
  settings.alpha = f.alpha;
  settings.gamma = config.gamma;
  settings.variant = Variant::NonBootstrap;
  settings.optimizer = config.optimizer;
  settings.threads = config.threads;

  const auto point = forecast_values(standardized, settings);
  for (std::size_t s = 0; s < config.horizon; ++s) {
    out.years.push_back(series.years[observed - 1] + static_cast<int>(s + 1));
    out.prediction.push_back(f.mu + f.sigma * point[s]);
    const std::size_t idx = observed + s;
    out.observed.push_back(idx < T ? std::optional<double>(series.values[idx]) : std::nullopt);
  }

  out.envelope_min.assign(config.horizon, std::numeric_limits<double>::infinity());
  out.envelope_max.assign(config.horizon, -std::numeric_limits<double>::infinity());
  if (config.bootstrap_runs == 0) {
    out.envelope_min = out.prediction;
    out.envelope_max = out.prediction;
    return out;
  }
  std::vector<std::vector<double>> runs(config.bootstrap_runs);
  ForecastSettings boot = settings;
  boot.variant = Variant::Bootstrap;
  boot.threads = 1;
  parallel_for(config.bootstrap_runs, config.threads, [&](std::size_t r) {
    ForecastSettings local = boot;
    Rng seeder = make_rng(config.optimizer.seed, 1000 + r);
    local.optimizer.seed = seeder();
    runs[r] = forecast_values(standardized, local);
  });
  for (const auto& run : runs) {
    for (std::size_t s = 0; s < config.horizon; ++s) {
      const double v = f.mu + f.sigma * run[s];
      out.envelope_min[s] = std::min(out.envelope_min[s], v);
      out.envelope_max[s] = std::max(out.envelope_max[s], v);
    }
  }
  return out;
}

}  // namespace maxstable
