#include "ricsel/linalg.hpp"

#include <cmath>

namespace ricsel {

SpdFactor SpdFactor::identity(Index n) {
  SpdFactor f;
  f.diagonal_ = true;
  f.diag_sqrt_ = Vector::Ones(n);
  f.log_det_ = 0.0;
  return f;
}

Matrix SpdFactor::lower() const {
  if (!diagonal_) return lower_;
  Matrix L = Matrix::Zero(diag_sqrt_.size(), diag_sqrt_.size());
  L.diagonal() = diag_sqrt_;
  return L;
}

Matrix SpdFactor::solve(const Matrix& rhs) const {
  if (diagonal_) {
    return rhs.array().colwise() / diag_sqrt_.array().square();
  }
  Matrix x = lower_.triangularView<Eigen::Lower>().solve(rhs);
  lower_.transpose().triangularView<Eigen::Upper>().solveInPlace(x);
  return x;
}

Vector SpdFactor::solve(const Vector& rhs) const {
  if (diagonal_) {
    return rhs.array() / diag_sqrt_.array().square();
  }
  Vector x = lower_.triangularView<Eigen::Lower>().solve(rhs);
  lower_.transpose().triangularView<Eigen::Upper>().solveInPlace(x);
  return x;
}

Vector SpdFactor::apply_lower(const Vector& v) const {
  if (diagonal_) {
    return diag_sqrt_.cwiseProduct(v);
  }
  return lower_.triangularView<Eigen::Lower>() * v;
}

SpdFactor spd_factorize(const Matrix& M) {
  const Index n = M.rows();
  if (n != M.cols()) {
    throw dimension_error("spd_factorize requires a square matrix");
  }
  SpdFactor factor;
  if (n == 0) {
    factor.lower_ = Matrix(0, 0);
    return factor;
  }
  const double scale = M.cwiseAbs().maxCoeff();
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(scale, 1.0)) {
    throw dimension_error("spd_factorize requires a symmetric matrix");
  }
  const double pivot_floor = 1e-12 * M.diagonal().maxCoeff();

  if (M.isDiagonal(0.0)) {
    if ((M.diagonal().array() <= pivot_floor).any()) {
      throw not_spd_error("diagonal matrix has a non-positive entry");
    }
    factor.diagonal_ = true;
    factor.diag_sqrt_ = M.diagonal().array().sqrt();
    factor.log_det_ = M.diagonal().array().log().sum();
    if (!std::isfinite(factor.log_det_)) {
      throw not_spd_error("log-determinant is not finite");
    }
    return factor;
  }

  Matrix L = Matrix::Zero(n, n);
  double log_det = 0.0;
  for (Index j = 0; j < n; ++j) {
    const double d = M(j, j) - L.row(j).head(j).squaredNorm();
    if (!(d > pivot_floor)) {
      throw not_spd_error("matrix is not positive definite (pivot " +
                          std::to_string(d) + " at index " + std::to_string(j) + ")");
    }
    const double ljj = std::sqrt(d);
    L(j, j) = ljj;
    log_det += 2.0 * std::log(ljj);
    const Index rest = n - j - 1;
    if (rest > 0) {
      L.col(j).tail(rest) =
          (M.col(j).tail(rest) -
           L.bottomLeftCorner(rest, j) * L.row(j).head(j).transpose()) /
          ljj;
    }
  }
  if (!std::isfinite(log_det)) {
    throw not_spd_error("log-determinant is not finite");
  }
  factor.lower_ = std::move(L);
  factor.log_det_ = log_det;
  return factor;
}

bool correlation_valid(const CorrelationSpec& spec, Index n) {
  switch (spec.family) {
    case CorrelationFamily::Identity:
      return spec.theta.size() == 0;
    case CorrelationFamily::Ar1:
      return spec.theta.size() == 1 && spec.theta[0] > -1.0 && spec.theta[0] < 1.0;
    case CorrelationFamily::Exchangeable:
      return spec.theta.size() == 1 && n >= 2 &&
             spec.theta[0] > -1.0 / static_cast<double>(n - 1) && spec.theta[0] < 1.0;
  }
  return false;
}

namespace {

void check_correlation_args(const CorrelationSpec& spec, Index n) {
  if (n < 1) {
    throw dimension_error("correlation matrix requires n >= 1");
  }
  if (spec.family != CorrelationFamily::Identity && n < 2) {
    throw dimension_error("non-identity correlation requires n >= 2");
  }
  if (!correlation_valid(spec, n)) {
    throw invalid_correlation_error(
        family_name(spec.family) + " parameter outside validity region at n = " +
        std::to_string(n));
  }
}

}  // namespace

Matrix build_correlation(const CorrelationSpec& spec, Index n) {
  check_correlation_args(spec, n);
  switch (spec.family) {
    case CorrelationFamily::Identity:
      return Matrix::Identity(n, n);
    case CorrelationFamily::Ar1: {
      const double theta = spec.theta[0];
      Matrix W(n, n);
      for (Index i = 0; i < n; ++i) {
        W(i, i) = 1.0;
        for (Index j = i + 1; j < n; ++j) {
          const double v = std::pow(theta, static_cast<double>(j - i));
          W(i, j) = v;
          W(j, i) = v;
        }
      }
      return W;
    }
    case CorrelationFamily::Exchangeable: {
      const double theta = spec.theta[0];
      Matrix W = Matrix::Constant(n, n, theta);
      W.diagonal().setOnes();
      return W;
    }
  }
  throw dimension_error("unknown correlation family");
}

SpdFactor correlation_factor(const CorrelationSpec& spec, Index n) {
  check_correlation_args(spec, n);
  if (spec.family == CorrelationFamily::Identity) {
    return SpdFactor::identity(n);
  }
  return spd_factorize(build_correlation(spec, n));
}

GlsPieces gls_pieces(const Dataset& data, const CandidateModel& model,
                     const SpdFactor& w_factor) {
  if (w_factor.dim() != data.n()) {
    throw dimension_error("correlation matrix size does not match n");
  }
  const Vector wi_y = w_factor.solve(data.y);
  GlsPieces out;
  if (model.k() == 0) {
    out.pieces.q = data.y.dot(wi_y);
    out.beta_hat = Vector(0);
    return out;
  }
  const Matrix Xa = model.design(data.X);
  const Matrix wi_X = w_factor.solve(Xa);
  const Matrix gram_w = Xa.transpose() * wi_X;
  const Matrix gram = Xa.transpose() * Xa;

  SpdFactor gram_w_factor = [&] {
    try {
      return spd_factorize(0.5 * (gram_w + gram_w.transpose()));
    } catch (const not_spd_error&) {
      throw not_spd_error("rank-deficient active design for model " +
                          model.describe());
    }
  }();
  SpdFactor gram_factor = [&] {
    try {
      return spd_factorize(gram);
    } catch (const not_spd_error&) {
      throw not_spd_error("rank-deficient active design for model " +
                          model.describe());
    }
  }();

  const Vector xty = Xa.transpose() * wi_y;
  out.beta_hat = gram_w_factor.solve(xty);
  out.pieces.q = data.y.dot(wi_y) - xty.dot(out.beta_hat);
  out.pieces.logdet_xwx = gram_w_factor.log_det();
  out.pieces.logdet_xx = gram_factor.log_det();
  return out;
}

ProjectorPieces projector_pieces(const Dataset& data, const CandidateModel& model,
                                 const SpdFactor& w_factor) {
  return gls_pieces(data, model, w_factor).pieces;
}

}  // namespace ricsel
