#ifndef RICSEL_SELECTION_HPP
#define RICSEL_SELECTION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ricsel/criteria.hpp"
#include "ricsel/fit.hpp"

namespace ricsel {

/// One candidate's outcome: either a fit with all requested criterion
/// values, or a skip reason.
struct SelectionRow {
  CandidateModel model;
  std::optional<FittedModel> fit;
  std::map<CriterionKind, double> values;
  std::string skip_reason;  // empty when the row is feasible

  bool feasible() const { return skip_reason.empty(); }
};

struct Winner {
  CriterionKind kind;
  CandidateModel model;
  double value;
};

struct SelectionReport {
  std::vector<SelectionRow> rows;
  std::vector<Winner> winners;  // one per requested criterion, in request order

  const Winner& winner(CriterionKind kind) const;
};

/// All subsets of {1..p} containing `forced` with cardinality <= max_k,
/// ordered by k then lexicographically. Guard: p <= 25.
std::vector<CandidateModel> enumerate_candidates(int p, const std::vector<int>& forced,
                                                 int max_k);

/// Fit every candidate by profile REML and evaluate the requested criteria.
/// Infeasible candidates (rank deficiency, perfect fit, n-k-2 <= 0 for a
/// requested criterion) become skipped rows. Ties break to smaller k, then
/// lexicographic index order.
SelectionReport select(const Dataset& data, CorrelationFamily family,
                       const std::vector<CandidateModel>& candidates,
                       const std::vector<CriterionKind>& kinds);

}  // namespace ricsel

#endif  // RICSEL_SELECTION_HPP
