#include "maxstable/gaussian.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <cmath>
#include <string>

#include "maxstable/errors.hpp"

namespace maxstable {

CholeskyFactor::CholeskyFactor(const Matrix& covariance) : n_(covariance.rows) {
  if (covariance.rows != covariance.cols) throw DomainError("covariance matrix must be square");
  if (n_ == 0) throw DomainError("covariance matrix is empty");

  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> a(covariance.data.data(), static_cast<Eigen::Index>(n_),
                               static_cast<Eigen::Index>(n_));
  Eigen::MatrixXd work = a;
  const double base = 1e-10 * work.trace() / static_cast<double>(n_);

  Eigen::LLT<Eigen::MatrixXd> llt(work);
  int escalation = 0;
  while (llt.info() != Eigen::Success) {
    if (escalation == 3) {
      throw CholeskyError("covariance matrix of size " + std::to_string(n_) +
                          " is not positive definite after jitter " + std::to_string(jitter_));
    }
    const double add = base * std::pow(10.0, escalation) - jitter_;
    jitter_ += add;
    work.diagonal().array() += add;
    llt.compute(work);
    ++escalation;
  }

  lower_.assign(n_ * n_, 0.0);
  const Eigen::MatrixXd l = llt.matrixL();
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      lower_[i * n_ + j] = l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
}

double CholeskyFactor::row_dot(std::size_t i, std::span<const double> z) const {
  const double* row = lower_.data() + i * n_;
  double s = 0.0;
  for (std::size_t j = 0; j <= i; ++j) s += row[j] * z[j];
  return s;
}

void CholeskyFactor::multiply(std::span<const double> z, std::span<double> out) const {
  for (std::size_t i = 0; i < n_; ++i) out[i] = row_dot(i, z);
}

Matrix covariance_matrix(const GridSpec& grid, const CovarianceFn& cov) {
  const std::size_t n = grid.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double c = cov(grid.site(i), grid.site(j));
      m(i, j) = c;
      m(j, i) = c;
    }
  }
  return m;
}

void GaussianSampler::draw(Rng& rng, std::span<double> out) const {
  NormalDist normal;
  std::vector<double> z(size());
  for (auto& v : z) v = normal(rng);
  factor_.multiply(z, out);
}

std::vector<double> GaussianSampler::draw(Rng& rng) const {
  std::vector<double> out(size());
  draw(rng, out);
  return out;
}

Path simulate_gaussian(const GridSpec& grid, const CovarianceFn& cov, Rng& rng) {
  GaussianSampler sampler(covariance_matrix(grid, cov));
  return {grid, sampler.draw(rng)};
}

}  // namespace maxstable
