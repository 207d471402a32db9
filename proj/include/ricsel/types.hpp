#ifndef RICSEL_TYPES_HPP
#define RICSEL_TYPES_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ricsel/errors.hpp"

namespace ricsel {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Response vector plus named design matrix.
struct Dataset {
  Vector y;
  Matrix X;
  std::vector<std::string> names;

  Dataset(Vector y_, Matrix X_, std::vector<std::string> names_ = {});

  Index n() const { return y.size(); }
  Index p() const { return X.cols(); }
};

/// An active covariate subset. Indices are 1-based, sorted, duplicate-free;
/// the empty set is the null model.
struct CandidateModel {
  std::vector<int> active;

  CandidateModel() = default;
  explicit CandidateModel(std::vector<int> active_indices);

  int k() const { return static_cast<int>(active.size()); }
  bool contains(int j) const;
  bool contains_all(const CandidateModel& other) const;

  /// Extract the active columns of X (n x k).
  Matrix design(const Matrix& X) const;

  friend bool operator==(const CandidateModel&, const CandidateModel&) = default;

  std::string describe() const;
};

enum class CorrelationFamily { Identity, Ar1, Exchangeable };

std::string family_name(CorrelationFamily family);
CorrelationFamily family_from_name(const std::string& name);

/// A correlation family with its parameter vector (empty for identity,
/// one element otherwise).
struct CorrelationSpec {
  CorrelationFamily family = CorrelationFamily::Identity;
  Vector theta;

  static CorrelationSpec identity() { return {}; }
  static CorrelationSpec ar1(double theta);
  static CorrelationSpec exchangeable(double theta);

  int m() const { return static_cast<int>(theta.size()); }
};

/// Data-generating truth: beta0 (zeros off the active set), sigma0^2,
/// the true correlation, and the design the oracles evaluate on.
struct TrueModelSpec {
  Vector beta0;
  double sigma0_sq = 1.0;
  CorrelationSpec correlation;
  Matrix design;

  TrueModelSpec(Vector beta0_, double sigma0_sq_, CorrelationSpec correlation_,
                Matrix design_);

  CandidateModel active_set() const;
  Index n() const { return design.rows(); }
  Index p() const { return design.cols(); }
};

}  // namespace ricsel

#endif  // RICSEL_TYPES_HPP
