#include "maxstable/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "maxstable/errors.hpp"
#include "maxstable/parallel.hpp"

namespace maxstable {

namespace {

// Below this log-value a drifted walk with drift -s^2/2 returns to exp-representable
// range with probability e^-55, so the remaining sites are set to zero.
constexpr double kLogCutoff = -800.0;

double rayleigh(Rng& rng) { return std::sqrt(-2.0 * std::log(uniform_open(rng))); }

class BrownResnickLine final : public ExtremalFunctionSampler {
 public:
  BrownResnickLine(double sigma, std::size_t size) : sigma_(sigma), size_(size) {}

  Extent propose(std::size_t anchor, double zeta, std::span<const double> field, Rng& rng,
                      std::span<double> out) override {
    const double drift = -0.5 * sigma_ * sigma_;
    const double log_zeta = std::log(zeta);
    double v = log_zeta;
    std::size_t begin = anchor;
    for (; begin > 0 && v >= kLogCutoff; --begin) {
      const std::size_t i = begin - 1;
      v += sigma_ * normal_(rng) + drift;
      const double value = std::exp(v);
      if (value >= field[i]) return {};
      out[i] = value;
    }
    out[anchor] = zeta;
    v = log_zeta;
    for (std::size_t i = anchor + 1; i < size_; ++i) {
      if (v < kLogCutoff) return {begin, i};
      v += sigma_ * normal_(rng) + drift;
      out[i] = std::exp(v);
    }
    return {begin, size_};
  }

 private:
  double sigma_;
  std::size_t size_;
  NormalDist normal_;
};

class SmithSampler final : public ExtremalFunctionSampler {
 public:
  SmithSampler(double sigma, const GridSpec& grid) : sigma_(sigma), grid_(grid) {}

  Extent propose(std::size_t anchor, double zeta, std::span<const double> field, Rng& rng,
                      std::span<double> out) override {
    const double inv_var = 1.0 / (sigma_ * sigma_);
    const double y1 = normal_(rng) / sigma_;
    const double y2 = grid_.dimension() == 2 ? normal_(rng) / sigma_ : 0.0;
    const Site& x0 = grid_.site(anchor);
    const double log_zeta = std::log(zeta);
    auto log_at = [&](std::size_t i) {
      const Site d = grid_.site(i) - x0;
      const double h1 = d.row;
      const double h2 = d.col;
      return log_zeta + h1 * y1 + h2 * y2 - 0.5 * (h1 * h1 + h2 * h2) * inv_var;
    };
    // In 1D the exponent is a concave parabola in the lag; past its vertex and
    // below the cutoff it only decreases, so the sweep can stop there.
    const bool line = grid_.dimension() == 1;
    const double vertex = y1 / inv_var;
    std::size_t begin = anchor;
    for (; begin > 0; --begin) {
      const std::size_t i = begin - 1;
      const double v = log_at(i);
      if (line && v < kLogCutoff && -(static_cast<double>(anchor) - static_cast<double>(i)) < vertex) break;
      const double value = std::exp(v);
      if (value >= field[i]) return {};
      out[i] = value;
    }
    out[anchor] = zeta;
    std::size_t end = anchor + 1;
    for (; end < grid_.size(); ++end) {
      const double v = log_at(end);
      if (line && v < kLogCutoff && static_cast<double>(end - anchor) > vertex) break;
      out[end] = std::exp(v);
    }
    return {begin, end};
  }

 private:
  double sigma_;
  GridSpec grid_;
  NormalDist normal_;
};

class ExtremalGaussianLine final : public ExtremalFunctionSampler {
 public:
  ExtremalGaussianLine(double sigma, std::size_t size)
      : r_(std::exp(-1.0 / sigma)), innovation_(std::sqrt(1.0 - r_ * r_)), size_(size) {}

  Extent propose(std::size_t anchor, double zeta, std::span<const double> field, Rng& rng,
                      std::span<double> out) override {
    const double w = rayleigh(rng);
    const double w0 = normal_(rng);
    double state = w0;
    double rho = 1.0;
    for (std::size_t i = anchor; i-- > 0;) {
      state = r_ * state + innovation_ * normal_(rng);
      rho *= r_;
      const double value = zeta * std::max(rho + (state - rho * w0) / w, 0.0);
      if (value >= field[i]) return {};
      out[i] = value;
    }
    out[anchor] = zeta;
    state = w0;
    rho = 1.0;
    for (std::size_t i = anchor + 1; i < size_; ++i) {
      state = r_ * state + innovation_ * normal_(rng);
      rho *= r_;
      out[i] = zeta * std::max(rho + (state - rho * w0) / w, 0.0);
    }
    return {0, size_};
  }

 private:
  double r_;
  double innovation_;
  std::size_t size_;
  NormalDist normal_;
};

// Generic lattice sampler: the underlying Gaussian field is drawn through one
// Cholesky factor, row by row, so rejected proposals stop early.
class CholeskyFieldSampler final : public ExtremalFunctionSampler {
 public:
  CholeskyFieldSampler(const ModelSpec& spec, const GridSpec& grid)
      : spec_(spec),
        grid_(grid),
        factor_(covariance_matrix(grid, spec.kind == ModelKind::BrownResnick ? brownian_covariance(spec.sigma)
                                                                             : exponential_correlation(spec.sigma))),
        z_(grid.size()) {}

  Extent propose(std::size_t anchor, double zeta, std::span<const double> field, Rng& rng,
                      std::span<double> out) override {
    const std::size_t n = grid_.size();
    for (std::size_t i = 0; i <= anchor; ++i) z_[i] = normal_(rng);
    const double w_anchor = factor_.row_dot(anchor, z_);
    const Site& x0 = grid_.site(anchor);
    const bool br = spec_.kind == ModelKind::BrownResnick;
    const double radius = br ? 0.0 : rayleigh(rng);
    auto value_at = [&](std::size_t i, double wi) {
      const double h = GridSpec::distance(grid_.site(i), x0);
      if (br) return zeta * std::exp(wi - w_anchor - 0.5 * spec_.sigma * spec_.sigma * h);
      const double rho = std::exp(-h / spec_.sigma);
      return zeta * std::max(rho + (wi - rho * w_anchor) / radius, 0.0);
    };
    for (std::size_t i = anchor; i-- > 0;) {
      const double value = value_at(i, factor_.row_dot(i, z_));
      if (value >= field[i]) return {};
      out[i] = value;
    }
    out[anchor] = zeta;
    for (std::size_t i = anchor + 1; i < n; ++i) z_[i] = normal_(rng);
    for (std::size_t i = anchor + 1; i < n; ++i) out[i] = value_at(i, factor_.row_dot(i, z_));
    return {0, n};
  }

 private:
  ModelSpec spec_;
  GridSpec grid_;
  CholeskyFactor factor_;
  std::vector<double> z_;
  NormalDist normal_;
};

}  // namespace

CovarianceFn brownian_covariance(double sigma) {
  if (!(sigma > 0.0)) throw DomainError("Brownian volatility must be positive");
  const double s2 = sigma * sigma;
  return [s2](const Site& s, const Site& t) {
    const Site origin{0, 0};
    return 0.5 * s2 * (GridSpec::distance(s, origin) + GridSpec::distance(t, origin) - GridSpec::distance(s, t));
  };
}

CovarianceFn exponential_correlation(double sigma) {
  if (!(sigma > 0.0)) throw DomainError("correlation length must be positive");
  return [sigma](const Site& s, const Site& t) { return std::exp(-GridSpec::distance(s, t) / sigma); };
}

std::unique_ptr<ExtremalFunctionSampler> ExtremalFunctionSampler::create(const ModelSpec& spec,
                                                                         const GridSpec& grid) {
  spec.validate();
  if (spec.dimension != grid.dimension()) {
    throw DomainError("model dimension " + std::to_string(spec.dimension) + " does not match grid dimension " +
                      std::to_string(grid.dimension()));
  }
  if (spec.kind == ModelKind::Smith) return std::make_unique<SmithSampler>(spec.sigma, grid);
  if (grid.dimension() == 1) {
    if (spec.kind == ModelKind::BrownResnick) return std::make_unique<BrownResnickLine>(spec.sigma, grid.size());
    return std::make_unique<ExtremalGaussianLine>(spec.sigma, grid.size());
  }
  return std::make_unique<CholeskyFieldSampler>(spec, grid);
}

Path simulate_max_stable(const ModelSpec& spec, const GridSpec& grid, Rng& rng) {
  auto sampler = ExtremalFunctionSampler::create(spec, grid);
  const std::size_t n = grid.size();
  std::vector<double> field(n, 0.0);
  std::vector<double> proposal(n, 0.0);
  for (std::size_t site = 0; site < n; ++site) {
    double gamma = standard_exponential(rng);
    double zeta = 1.0 / gamma;
    while (zeta > field[site]) {
      const auto extent = sampler->propose(site, zeta, field, rng, proposal);
      for (std::size_t i = extent.begin; i < extent.end; ++i) field[i] = std::max(field[i], proposal[i]);
      gamma += standard_exponential(rng);
      zeta = 1.0 / gamma;
    }
  }
  return Path{grid, std::move(field)};
}

std::vector<Path> simulate_replications(const ModelSpec& spec, const GridSpec& grid, std::size_t count,
                                        std::uint64_t seed, unsigned threads) {
  std::vector<Path> out(count);
  parallel_for(count, threads, [&](std::size_t k) {
    Rng rng = make_rng(seed, k);
    out[k] = simulate_max_stable(spec, grid, rng);
  });
  return out;
}

std::size_t series_length_for(std::size_t horizon, std::size_t sample_size, std::size_t learning_samples) {
  return learning_samples * sample_size + sample_size + horizon;
}

}  // namespace maxstable
