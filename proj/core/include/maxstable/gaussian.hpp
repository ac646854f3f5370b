#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "maxstable/grid.hpp"
#include "maxstable/rng.hpp"

namespace maxstable {

/// Dense row-major matrix, used for covariance inputs and factors.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Lower-triangular Cholesky factor L with A + jitter*I = L L^T.
class CholeskyFactor {
 public:
  /// Factorizes a symmetric positive (semi)definite matrix. On failure adds
  /// 1e-10 * trace/n to the diagonal, escalating tenfold up to three times,
  /// then throws CholeskyError.
  explicit CholeskyFactor(const Matrix& covariance);

  std::size_t size() const { return n_; }
  double jitter() const { return jitter_; }
  double operator()(std::size_t i, std::size_t j) const { return lower_[i * n_ + j]; }

  /// out = L z.
  void multiply(std::span<const double> z, std::span<double> out) const;

  /// Entry i of L z, using only z[0..i].
  double row_dot(std::size_t i, std::span<const double> z) const;

 private:
  std::size_t n_ = 0;
  double jitter_ = 0.0;
  std::vector<double> lower_;
};

using CovarianceFn = std::function<double(const Site&, const Site&)>;

/// Covariance matrix of the grid sites under `cov`.
Matrix covariance_matrix(const GridSpec& grid, const CovarianceFn& cov);

/// Repeated draws of a centered Gaussian vector from a cached factor.
class GaussianSampler {
 public:
  explicit GaussianSampler(const Matrix& covariance) : factor_(covariance) {}

  std::size_t size() const { return factor_.size(); }
  const CholeskyFactor& factor() const { return factor_; }

  void draw(Rng& rng, std::span<double> out) const;
  std::vector<double> draw(Rng& rng) const;

 private:
  CholeskyFactor factor_;
};

/// One draw of the centered Gaussian field with covariance `cov` on the grid.
Path simulate_gaussian(const GridSpec& grid, const CovarianceFn& cov, Rng& rng);

}  // namespace maxstable
