#pragma once

// Elementwise constraint systems equivalent to "X is PSD" for m = 4: one
// system per pattern of the two interior diagonal entries and the interior
// 2x2 minor.

#include <optional>
#include <string>
#include <vector>

#include "psdcert/constraints.hpp"

namespace psdcert {

struct CaseSystem {
  int id = 0;
  std::vector<ElementConstraint> constraints;
  std::string description;

  friend bool operator==(const CaseSystem&, const CaseSystem&) = default;
};

std::vector<CaseSystem> psd_cases_m4();

struct ConstraintOutcome {
  ElementConstraint constraint;
  Sign sign = Sign::zero;
  bool holds = false;
};

struct CaseEvaluation {
  int id = 0;
  bool holds = true;
  std::vector<ConstraintOutcome> report;
};

template <class T>
CaseEvaluation evaluate_case(const SymMatrix<T>& x, const CaseSystem& s, const Tolerance& tol = {}) {
  CaseEvaluation e;
  e.id = s.id;
  for (const auto& c : s.constraints) {
    ConstraintOutcome o{c, c.sign(x, tol), c.holds(x, tol)};
    e.holds = e.holds && o.holds;
    e.report.push_back(std::move(o));
  }
  return e;
}

struct CaseCover {
  bool covered = false;
  std::optional<int> first_case;  // smallest id that holds
};

template <class T>
CaseCover psd_case_cover_check(const SymMatrix<T>& x, const Tolerance& tol = {}) {
  if (x.dim() != 4) throw DimensionError("case systems are defined for 4x4 matrices, got " + std::to_string(x.dim()));
  for (const auto& s : psd_cases_m4())
    if (evaluate_case(x, s, tol).holds) return {true, s.id};
  return {};
}

// Indices are written 1-based.
std::string cases_to_json(const std::vector<CaseSystem>& cases, int indent = 2);
std::vector<CaseSystem> cases_from_json(const std::string& text);
// Header "case,kind,indices"; one row per constraint, indices space-separated.
std::string cases_to_csv(const std::vector<CaseSystem>& cases);
std::vector<CaseSystem> cases_from_csv(const std::string& text);

}  // namespace psdcert
