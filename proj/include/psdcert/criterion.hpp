#pragma once

// Determinant-based definiteness checks.
//
//   check_pd_classic   leading principal minors positive (m determinants)
//   check_psd_classic  every principal minor nonnegative (2^m - 1 determinants)
//   check_psd_strong   for each of the m(m+1)/2 consecutive blocks X[a:b, a:b],
//                      one inner-saturated submatrix has det >= 0
//
// An inner-saturated submatrix of an n x n block keeps the block's first and
// last index plus a maximal linearly independent set J of columns of the
// block's interior X[a+1:b-1, a+1:b-1]. Blocks of size <= 2 have J empty.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "psdcert/determinant.hpp"
#include "psdcert/matrix.hpp"

namespace psdcert {

enum class Mode { pd, psd };

inline const char* mode_name(Mode m) { return m == Mode::pd ? "pd" : "psd"; }

struct CheckStats {
  std::size_t det_evaluations = 0;
};

// `witness` is present iff `positive` is false. It names a principal
// submatrix (global, 0-based) whose determinant violates the requirement.
struct Verdict {
  bool positive = true;
  std::optional<IndexSet> witness;
  CheckStats stats;
};

struct InnerSaturated {
  ConsecutiveRange parent;
  IndexSet indices;  // global; always contains parent.first and parent.last
};

// Zero band used for determinant signs in float mode: a k x k block with
// max|entry| = s has its determinant compared against tol.band(s^k).
template <class T>
double det_scale(const SymMatrix<T>& block) {
  return std::pow(block.max_abs(), static_cast<double>(block.dim()));
}

template <class T>
Sign det_sign(const SymMatrix<T>& block, const T& d, const Tolerance& tol) {
  return sign_of(d, det_scale(block), tol);
}

template <class T>
Verdict check_pd_classic(const SymMatrix<T>& x, const Tolerance& tol = {}) {
  Verdict v;
  for (std::size_t b = 1; b <= x.dim(); ++b) {
    const auto block = submatrix(x, IndexSet::range(0, b));
    const T d = det(block);
    ++v.stats.det_evaluations;
    if (v.positive && det_sign(block, d, tol) != Sign::positive) {
      v.positive = false;
      v.witness = IndexSet::range(0, b);
    }
  }
  return v;
}

inline constexpr std::size_t default_classic_cap = 16;

// Oracle: all 2^m - 1 principal minors, visited in lexicographic order of
// the index set so the witness is the lexicographically first violation.
template <class T>
Verdict check_psd_classic(const SymMatrix<T>& x, std::size_t cap = default_classic_cap,
                          const Tolerance& tol = {}) {
  const std::size_t m = x.dim();
  if (m > cap)
    throw DimensionError("classic PSD check limited to dimension " + std::to_string(cap) + ", got " +
                         std::to_string(m));
  Verdict v;
  std::vector<std::size_t> idx;
  // Depth-first generation yields {1} < {1,2} < {1,2,3} < ... < {1,3} < ...
  auto visit = [&](auto&& self, std::size_t next) -> void {
    for (std::size_t i = next; i < m; ++i) {
      idx.push_back(i);
      const auto block = x.reindexed(idx);
      const T d = det(block);
      ++v.stats.det_evaluations;
      if (v.positive && det_sign(block, d, tol) == Sign::negative) {
        v.positive = false;
        v.witness = IndexSet(idx);
      }
      self(self, i + 1);
      idx.pop_back();
    }
  };
  visit(visit, 0);
  return v;
}

namespace detail {

inline std::vector<std::size_t> inner_saturated_of_range(const ConsecutiveRange& r,
                                                         const std::vector<std::size_t>& inner_cols) {
  std::vector<std::size_t> idx{r.first};
  for (std::size_t c : inner_cols) idx.push_back(r.first + 1 + c);
  if (r.last != r.first) idx.push_back(r.last);
  return idx;
}

template <class T>
std::optional<SymMatrix<T>> inner_block(const SymMatrix<T>& x, const ConsecutiveRange& r) {
  if (r.size() <= 2) return std::nullopt;
  return submatrix(x, ConsecutiveRange{r.first + 1, r.last - 1});
}

}  // namespace detail

// Canonical inner-saturated index set of the block X[r]: J is the greedy
// (smallest indices first) maximal independent column set of the interior.
template <class T>
InnerSaturated canonical_inner_saturated(const SymMatrix<T>& x, const ConsecutiveRange& r,
                                         const Tolerance& tol = {}) {
  std::vector<std::size_t> cols;
  if (auto inner = detail::inner_block(x, r)) cols = max_independent_columns(*inner, tol);
  return {r, IndexSet(detail::inner_saturated_of_range(r, cols))};
}

template <class T>
InnerSaturated canonical_inner_saturated(const SymMatrix<T>& x, const Tolerance& tol = {}) {
  return canonical_inner_saturated(x, ConsecutiveRange{0, x.dim() - 1}, tol);
}

// Every inner-saturated index set of X[r], lexicographic.
template <class T>
std::vector<InnerSaturated> enumerate_inner_saturated(const SymMatrix<T>& x, const ConsecutiveRange& r,
                                                      const Tolerance& tol = {}) {
  std::vector<InnerSaturated> out;
  if (auto inner = detail::inner_block(x, r)) {
    for (const auto& cols : all_max_independent_columns(*inner, tol))
      out.push_back({r, IndexSet(detail::inner_saturated_of_range(r, cols))});
  } else {
    out.push_back({r, IndexSet(detail::inner_saturated_of_range(r, {}))});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.indices < b.indices; });
  return out;
}

template <class T>
std::vector<InnerSaturated> enumerate_inner_saturated(const SymMatrix<T>& x, const Tolerance& tol = {}) {
  return enumerate_inner_saturated(x, ConsecutiveRange{0, x.dim() - 1}, tol);
}

// Nonnegativity of an inner-saturated determinant. Float mode accepts
// det >= -tol.band(max|entry|^k); the exact backend has no slack.
template <class T>
bool inner_saturated_nonnegative(const SymMatrix<T>& x, const IndexSet& idx, const Tolerance& tol = {}) {
  const auto block = submatrix(x, idx);
  return det_sign(block, det(block), tol) != Sign::negative;
}

// Strong criterion. Evaluates exactly one determinant per consecutive range,
// m(m+1)/2 in total, in (length, start) order; the witness is the first
// failing inner-saturated set.
template <class T>
Verdict check_psd_strong(const SymMatrix<T>& x, const Tolerance& tol = {}) {
  Verdict v;
  for (const auto& r : consecutive_ranges(x.dim())) {
    const auto sat = canonical_inner_saturated(x, r, tol);
    const bool ok = inner_saturated_nonnegative(x, sat.indices, tol);
    ++v.stats.det_evaluations;
    if (v.positive && !ok) {
      v.positive = false;
      v.witness = sat.indices;
    }
  }
  return v;
}

// PD via leading minors, PSD via the strong criterion.
template <class T>
Verdict check_definite(const SymMatrix<T>& x, Mode mode, const Tolerance& tol = {}) {
  return mode == Mode::pd ? check_pd_classic(x, tol) : check_psd_strong(x, tol);
}

}  // namespace psdcert
