#ifndef RICSEL_ERRORS_HPP
#define RICSEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ricsel {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix or vector dimensions are inconsistent or out of range.
class dimension_error : public error {
 public:
  using error::error;
};

/// Correlation parameter outside the family's validity region.
class invalid_correlation_error : public error {
 public:
  using error::error;
};

/// Matrix is not symmetric positive definite (pivot below tolerance).
class not_spd_error : public error {
 public:
  using error::error;
};

/// Scalar argument outside its domain (e.g. sigma2 <= 0).
class domain_error : public error {
 public:
  using error::error;
};

/// Residual sum of squares is zero within tolerance; criteria undefined.
class perfect_fit_error : public error {
 public:
  using error::error;
};

/// Criterion requested where its degrees-of-freedom condition fails.
class undefined_criterion_error : public error {
 public:
  using error::error;
};

/// Exhaustive enumeration guard tripped (p too large).
class too_large_error : public error {
 public:
  using error::error;
};

/// Dataset or config file could not be parsed.
class parse_error : public error {
 public:
  using error::error;
};

/// Simulation experiment aborted (not a per-candidate skip).
class experiment_error : public error {
 public:
  using error::error;
};

/// Selection produced no feasible candidate for a criterion.
class empty_winner_error : public error {
 public:
  using error::error;
};

}  // namespace ricsel

#endif  // RICSEL_ERRORS_HPP
