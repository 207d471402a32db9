#include "ricsel/types.hpp"

#include <algorithm>
#include <sstream>

namespace ricsel {

namespace {

void require_finite(const Matrix& M, const char* what) {
  if (!M.allFinite()) {
    throw dimension_error(std::string(what) + " contains non-finite entries");
  }
}

}  // namespace

Dataset::Dataset(Vector y_, Matrix X_, std::vector<std::string> names_)
    : y(std::move(y_)), X(std::move(X_)), names(std::move(names_)) {
  if (y.size() < 1 || X.cols() < 1) {
    throw dimension_error("dataset requires n >= 1 and p >= 1");
  }
  if (X.rows() != y.size()) {
    throw dimension_error("design row count does not match response length");
  }
  require_finite(y, "response");
  require_finite(X, "design");
  if (names.empty()) {
    names.reserve(static_cast<std::size_t>(X.cols()));
    for (Index j = 0; j < X.cols(); ++j) {
      names.push_back("x" + std::to_string(j + 1));
    }
  } else if (names.size() != static_cast<std::size_t>(X.cols())) {
    throw dimension_error("column name count does not match design width");
  }
}

CandidateModel::CandidateModel(std::vector<int> active_indices)
    : active(std::move(active_indices)) {
  std::sort(active.begin(), active.end());
  if (std::adjacent_find(active.begin(), active.end()) != active.end()) {
    throw dimension_error("candidate model has duplicate indices");
  }
  if (!active.empty() && active.front() < 1) {
    throw dimension_error("candidate model indices are 1-based");
  }
}

bool CandidateModel::contains(int j) const {
  return std::binary_search(active.begin(), active.end(), j);
}

bool CandidateModel::contains_all(const CandidateModel& other) const {
  return std::includes(active.begin(), active.end(), other.active.begin(),
                       other.active.end());
}

Matrix CandidateModel::design(const Matrix& X) const {
  Matrix Xa(X.rows(), k());
  for (int j = 0; j < k(); ++j) {
    if (active[static_cast<std::size_t>(j)] > X.cols()) {
      throw dimension_error("candidate index exceeds design width");
    }
    Xa.col(j) = X.col(active[static_cast<std::size_t>(j)] - 1);
  }
  return Xa;
}

std::string CandidateModel::describe() const {
  if (active.empty()) return "{}";
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < active.size(); ++i) {
    if (i > 0) os << ',';
    os << active[i];
  }
  os << '}';
  return os.str();
}

std::string family_name(CorrelationFamily family) {
  switch (family) {
    case CorrelationFamily::Identity: return "identity";
    case CorrelationFamily::Ar1: return "ar1";
    case CorrelationFamily::Exchangeable: return "exchangeable";
  }
  throw dimension_error("unknown correlation family");
}

CorrelationFamily family_from_name(const std::string& name) {
  if (name == "identity") return CorrelationFamily::Identity;
  if (name == "ar1") return CorrelationFamily::Ar1;
  if (name == "exchangeable") return CorrelationFamily::Exchangeable;
  throw parse_error("unknown correlation family: " + name);
}

CorrelationSpec CorrelationSpec::ar1(double theta) {
  CorrelationSpec spec;
  spec.family = CorrelationFamily::Ar1;
  spec.theta = Vector::Constant(1, theta);
  return spec;
}

CorrelationSpec CorrelationSpec::exchangeable(double theta) {
  CorrelationSpec spec;
  spec.family = CorrelationFamily::Exchangeable;
  spec.theta = Vector::Constant(1, theta);
  return spec;
}

TrueModelSpec::TrueModelSpec(Vector beta0_, double sigma0_sq_,
                             CorrelationSpec correlation_, Matrix design_)
    : beta0(std::move(beta0_)),
      sigma0_sq(sigma0_sq_),
      correlation(std::move(correlation_)),
      design(std::move(design_)) {
  if (sigma0_sq <= 0.0) {
    throw domain_error("sigma0_sq must be positive");
  }
  if (beta0.size() != design.cols()) {
    throw dimension_error("beta0 length does not match design width");
  }
  require_finite(design, "design");
  require_finite(beta0, "beta0");
}

CandidateModel TrueModelSpec::active_set() const {
  std::vector<int> idx;
  for (Index j = 0; j < beta0.size(); ++j) {
    if (beta0[j] != 0.0) idx.push_back(static_cast<int>(j) + 1);
  }
  return CandidateModel(std::move(idx));
}

}  // namespace ricsel
