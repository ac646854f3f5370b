#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "maxstable/gaussian.hpp"
#include "maxstable/grid.hpp"
#include "maxstable/rng.hpp"
#include "maxstable/taildep.hpp"

namespace maxstable {

/// sigma^2 * min(s, t) on a 1D grid; in 2D the Lévy field
/// sigma^2/2 (|s| + |t| - |s - t|) relative to the origin (0, 0).
CovarianceFn brownian_covariance(double sigma);

/// exp(-|s - t| / sigma).
CovarianceFn exponential_correlation(double sigma);

/// Draws of normalized spectral functions Y ~ P_x (Y(x) = 1) of a max-stable
/// model, evaluated lazily so that dominated proposals can be rejected early.
class ExtremalFunctionSampler {
 public:
  virtual ~ExtremalFunctionSampler() = default;

  /// Half-open site range [begin, end); empty when the proposal was rejected.
  struct Extent {
    std::size_t begin = 0;
    std::size_t end = 0;
  };

  /// Draws Y ~ P_{site anchor} and compares zeta*Y with `field` at the sites
  /// processed before `anchor`. Returns an empty extent as soon as
  /// zeta*Y(x_i) >= field[i] for some i < anchor. Otherwise writes zeta*Y into
  /// out over the returned extent, outside of which zeta*Y vanishes in double
  /// precision.
  virtual Extent propose(std::size_t anchor, double zeta, std::span<const double> field, Rng& rng,
                       std::span<double> out) = 0;

  static std::unique_ptr<ExtremalFunctionSampler> create(const ModelSpec& spec, const GridSpec& grid);
};

/// Exact draw of the max-stable field with unit Fréchet margins by the
/// extremal-functions sweep. Throws DomainError if the spec and grid
/// dimensions differ.
Path simulate_max_stable(const ModelSpec& spec, const GridSpec& grid, Rng& rng);

/// `count` independent draws; replication k uses make_rng(seed, k), so the
/// result does not depend on `threads`.
std::vector<Path> simulate_replications(const ModelSpec& spec, const GridSpec& grid, std::size_t count,
                                        std::uint64_t seed, unsigned threads = 0);

/// N*n + n + L: learning windows, forecast window and reserved horizon.
std::size_t series_length_for(std::size_t horizon, std::size_t sample_size, std::size_t learning_samples);

}  // namespace maxstable
