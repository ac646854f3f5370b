#include "maxstable/problem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxstable/errors.hpp"
#include "maxstable/simulate.hpp"

namespace maxstable {

namespace {

std::string describe(const Site& s) { return "(" + std::to_string(s.row) + "," + std::to_string(s.col) + ")"; }

bool contains(const std::vector<Site>& sites, const Site& s) {
  return std::find(sites.begin(), sites.end(), s) != sites.end();
}

}  // namespace

void Weights::validate() const {
  if (lambda.empty()) throw DomainError("weights must be nonempty");
  bool nonzero = false;
  for (double v : lambda) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("weights must be finite and nonnegative");
    nonzero = nonzero || v > 0.0;
  }
  if (!nonzero) throw DomainError("weights must not all be zero");
}

std::string_view to_string(Variant v) { return v == Variant::Bootstrap ? "bootstrap" : "non-bootstrap"; }

Variant parse_variant(std::string_view name) {
  if (name == "bootstrap") return Variant::Bootstrap;
  if (name == "non-bootstrap" || name == "nonbootstrap") return Variant::NonBootstrap;
  throw DomainError("unknown variant '" + std::string(name) + "' (expected bootstrap or non-bootstrap)");
}

void ForecastProblem::validate() const {
  if (forecast_sites.empty()) throw ProblemError("forecast sample is empty");
  if (shifts.empty()) throw ProblemError("no learning samples");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ProblemError("alpha must be positive");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ProblemError("gamma must be nonnegative");
  if (forecast_values.size() != n() || learning_values.rows != N() || learning_values.cols != n() ||
      learning_targets.size() != N()) {
    throw ProblemError("problem data do not match its site layout");
  }
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!std::all_of(forecast_values.begin(), forecast_values.end(), positive) ||
      !std::all_of(learning_values.data.begin(), learning_values.data.end(), positive) ||
      !std::all_of(learning_targets.begin(), learning_targets.end(), positive)) {
    throw ProblemError("observations must be positive and finite");
  }
}

ForecastProblem make_problem(const Path& observations, std::vector<Site> forecast_sites, Site target,
                             std::vector<Site> shifts, double alpha, double gamma, Variant variant) {
  ForecastProblem p;
  p.forecast_sites = std::move(forecast_sites);
  p.target = target;
  p.shifts = std::move(shifts);
  p.alpha = alpha;
  p.gamma = gamma;
  p.variant = variant;
  if (p.forecast_sites.empty()) throw ProblemError("forecast sample is empty");
  if (p.shifts.empty()) throw ProblemError("no learning samples");
  if (contains(p.forecast_sites, target)) throw ProblemError("target " + describe(target) + " lies in the forecast sample");

  const std::size_t n = p.n();
  const std::size_t N = p.N();
  p.forecast_values.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.forecast_values[i] = observations.at(p.forecast_sites[i]);
  p.learning_values = Matrix(N, n);
  p.learning_targets.resize(N);
  for (std::size_t j = 0; j < N; ++j) {
    const Site k = p.shifts[j];
    for (std::size_t i = 0; i < n; ++i) {
      const Site s = p.forecast_sites[i] + k;
      if (contains(p.forecast_sites, s)) {
        throw ProblemError("learning window " + std::to_string(j + 1) + " intersects the forecast sample at " +
                           describe(s));
      }
      if (!observations.grid.contains(s)) {
        throw ProblemError("learning site " + describe(s) + " of window " + std::to_string(j + 1) + " is not observed");
      }
      p.learning_values(j, i) = observations.at(s);
    }
    const Site t = target + k;
    if (!observations.grid.contains(t)) {
      throw ProblemError("learning target " + describe(t) + " of window " + std::to_string(j + 1) + " is not observed");
    }
    p.learning_targets[j] = observations.at(t);
  }
  p.validate();
  return p;
}

ForecastProblem build_learning_samples(const Path& series, const LearningLayout& layout, double alpha, double gamma,
                                       Variant variant) {
  if (series.grid.dimension() != 1) throw ProblemError("learning-sample builder expects a 1D series");
  const std::size_t n = layout.sample_size;
  const std::size_t N = layout.learning_samples;
  if (n == 0 || N == 0) throw ProblemError("sample size and number of learning samples must be positive");
  if (layout.step == 0) throw ProblemError("forecast step must be at least 1");
  const std::size_t required = series_length_for(layout.reserved, n, N);
  const std::size_t length = series.grid.size();
  if (length < required) {
    throw ProblemError("series has length " + std::to_string(length) + " but " + std::to_string(required) +
                       " observations are required (N*n + n + reserved)");
  }
  if (layout.step > n) {
    throw ProblemError("forecast step " + std::to_string(layout.step) + " exceeds the sample size " +
                       std::to_string(n) + "; learning targets would fall into the forecast sample's future");
  }
  const int observed_end = static_cast<int>(length - layout.reserved);
  std::vector<Site> sites;
  for (std::size_t i = 0; i < n; ++i) sites.push_back({observed_end - static_cast<int>(n) + 1 + static_cast<int>(i), 0});
  const Site target{observed_end + static_cast<int>(layout.step), 0};
  std::vector<Site> shifts;
  for (std::size_t j = 1; j <= N; ++j) shifts.push_back({-static_cast<int>(j * n), 0});

  // The observations handed to make_problem are restricted to the observed
  // part so held-out values can never leak into the learning samples. The
  // target itself may lie in the held-out part or beyond the series.
  Path observed{GridSpec::line(static_cast<std::size_t>(observed_end)),
                std::vector<double>(series.values.begin(), series.values.begin() + observed_end)};
  return make_problem(observed, std::move(sites), target, std::move(shifts), alpha, gamma, variant);
}

}  // namespace maxstable
