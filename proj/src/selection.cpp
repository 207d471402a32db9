#include "ricsel/selection.hpp"

#include <algorithm>

namespace ricsel {

const Winner& SelectionReport::winner(CriterionKind kind) const {
  for (const Winner& w : winners) {
    if (w.kind == kind) return w;
  }
  throw empty_winner_error("no winner recorded for " + criterion_name(kind));
}

std::vector<CandidateModel> enumerate_candidates(int p, const std::vector<int>& forced,
                                                 int max_k) {
  if (p > 25) {
    throw too_large_error(
        "exhaustive enumeration limited to p <= 25; restrict max_k and the "
        "forced set, or pre-screen covariates");
  }
  if (p < 1) {
    throw dimension_error("enumerate_candidates requires p >= 1");
  }
  CandidateModel forced_model(forced);
  if (!forced_model.active.empty() && forced_model.active.back() > p) {
    throw domain_error("forced index exceeds p");
  }
  if (max_k > p) max_k = p;
  if (max_k < forced_model.k()) {
    throw dimension_error("max_k smaller than the forced set");
  }

  std::vector<int> free_indices;
  for (int j = 1; j <= p; ++j) {
    if (!forced_model.contains(j)) free_indices.push_back(j);
  }
  std::vector<CandidateModel> out;
  const std::size_t nfree = free_indices.size();
  for (std::uint32_t mask = 0; mask < (1u << nfree); ++mask) {
    std::vector<int> active = forced_model.active;
    for (std::size_t b = 0; b < nfree; ++b) {
      if (mask & (1u << b)) active.push_back(free_indices[b]);
    }
    if (static_cast<int>(active.size()) <= max_k) {
      out.emplace_back(std::move(active));
    }
  }
  std::sort(out.begin(), out.end(), [](const CandidateModel& a, const CandidateModel& b) {
    if (a.k() != b.k()) return a.k() < b.k();
    return a.active < b.active;
  });
  return out;
}

SelectionReport select(const Dataset& data, CorrelationFamily family,
                       const std::vector<CandidateModel>& candidates,
                       const std::vector<CriterionKind>& kinds) {
  SelectionReport report;
  report.rows.reserve(candidates.size());

  for (const CandidateModel& model : candidates) {
    SelectionRow row;
    row.model = model;
    try {
      FittedModel fit = profile_reml(data, model, family);
      for (CriterionKind kind : kinds) {
        row.values[kind] = evaluate_criterion(fit, kind, data.n());
      }
      row.fit = std::move(fit);
    } catch (const error& e) {
      row.fit.reset();
      row.values.clear();
      row.skip_reason = e.what();
    }
    report.rows.push_back(std::move(row));
  }

  for (CriterionKind kind : kinds) {
    const SelectionRow* best = nullptr;
    for (const SelectionRow& row : report.rows) {
      if (!row.feasible()) continue;
      // Candidate order is (k, lexicographic); strict less implements the
      // smaller-k-then-lexicographic tie break.
      if (best == nullptr || row.values.at(kind) < best->values.at(kind)) {
        best = &row;
      }
    }
    if (best == nullptr) {
      throw empty_winner_error("every candidate infeasible for " +
                               criterion_name(kind));
    }
    report.winners.push_back({kind, best->model, best->values.at(kind)});
  }
  return report;
}

}  // namespace ricsel
