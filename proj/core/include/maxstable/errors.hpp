#pragma once

#include <stdexcept>
#include <string>

namespace maxstable {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Quasi-likelihood fit failed (degenerate data or optimizer breakdown).
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Covariance matrix could not be factorized even after diagonal jitter.
class CholeskyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested extremal coefficient cannot be reached by the model.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Forecast problem cannot be assembled from the given observations.
class ProblemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rainfall records cannot be assembled into a complete series.
class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Penalty tuning produced curves that cannot be normalized.
class TuningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace maxstable
