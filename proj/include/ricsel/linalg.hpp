#ifndef RICSEL_LINALG_HPP
#define RICSEL_LINALG_HPP

#include "ricsel/types.hpp"

namespace ricsel {

/// Cholesky factor of a symmetric positive definite matrix with its
/// log-determinant cached. Diagonal inputs (the identity correlation in
/// particular) are stored as a diagonal factor so solves stay O(n) per
/// column. Immutable after construction.
class SpdFactor {
 public:
  /// Factor of the n x n identity.
  static SpdFactor identity(Index n);

  double log_det() const { return log_det_; }
  Index dim() const { return diagonal_ ? diag_sqrt_.size() : lower_.rows(); }
  bool is_diagonal() const { return diagonal_; }

  /// Dense lower-triangular factor (materialized for diagonal inputs).
  Matrix lower() const;

  /// Solve M x = b for one or more right-hand sides.
  Matrix solve(const Matrix& rhs) const;
  Vector solve(const Vector& rhs) const;

  /// L * v, the half-solve used when sampling with covariance M.
  Vector apply_lower(const Vector& v) const;

 private:
  friend SpdFactor spd_factorize(const Matrix& M);
  SpdFactor() = default;

  bool diagonal_ = false;
  Vector diag_sqrt_;
  Matrix lower_;
  double log_det_ = 0.0;
};

/// Factor a symmetric positive definite matrix. Pivots below
/// 1e-12 * max diagonal entry raise not_spd_error; asymmetry beyond
/// 1e-10 relative raises dimension_error.
SpdFactor spd_factorize(const Matrix& M);

/// Build the n x n correlation matrix W(theta) for a family.
/// ar1: entry (i,j) = theta^|i-j|, theta in (-1, 1).
/// exchangeable: constant off-diagonal theta in (-1/(n-1), 1).
Matrix build_correlation(const CorrelationSpec& spec, Index n);

/// Factor W(theta) without materializing the matrix for the identity family.
SpdFactor correlation_factor(const CorrelationSpec& spec, Index n);

/// True when theta lies strictly inside the family's validity region at n.
bool correlation_valid(const CorrelationSpec& spec, Index n);

/// The quadratic form and determinant pieces of the residual likelihood
/// for one candidate: q = y'(W^-1 - H_A)y with H_A the GLS projector,
/// plus log|X_A' W^-1 X_A| and log|X_A' X_A|. Both log-determinants are 0
/// for the empty model, where q = y' W^-1 y.
struct ProjectorPieces {
  double q = 0.0;
  double logdet_xwx = 0.0;
  double logdet_xx = 0.0;
};

ProjectorPieces projector_pieces(const Dataset& data, const CandidateModel& model,
                                 const SpdFactor& w_factor);

/// Same pieces plus the GLS coefficients; shared by gls_fit.
struct GlsPieces {
  ProjectorPieces pieces;
  Vector beta_hat;  // length k
};

GlsPieces gls_pieces(const Dataset& data, const CandidateModel& model,
                     const SpdFactor& w_factor);

}  // namespace ricsel

#endif  // RICSEL_LINALG_HPP
