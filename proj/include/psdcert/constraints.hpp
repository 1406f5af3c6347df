#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "psdcert/criterion.hpp"
#include "psdcert/determinant.hpp"
#include "psdcert/matrix.hpp"

namespace psdcert {

enum class ConstraintKind { det_ge_0, det_gt_0, det_eq_0, entry_ge_0, entry_gt_0, entry_eq_0 };

std::string_view kind_name(ConstraintKind k);
std::optional<ConstraintKind> parse_kind(std::string_view name);

// A sign condition on a principal minor or on a single entry. `indices` is
// the principal index set for determinant kinds and the pair {i, j} (i <= j,
// possibly equal) for entry kinds; 0-based.
struct ElementConstraint {
  ConstraintKind kind = ConstraintKind::det_ge_0;
  std::vector<std::size_t> indices;

  static ElementConstraint det(ConstraintKind k, IndexSet idx) { return {k, idx.indices()}; }
  static ElementConstraint entry(ConstraintKind k, std::size_t i, std::size_t j) {
    return {k, {std::min(i, j), std::max(i, j)}};
  }

  bool is_det() const {
    return kind == ConstraintKind::det_ge_0 || kind == ConstraintKind::det_gt_0 || kind == ConstraintKind::det_eq_0;
  }

  // Every entry position the constraint reads (upper triangle).
  std::vector<std::pair<std::size_t, std::size_t>> reads() const;

  void check_within(std::size_t m) const;

  // "det(X[{1,2,4}]) >= 0", "X(2,3) = 0"
  std::string to_string() const;

  template <class T>
  Sign sign(const SymMatrix<T>& x, const Tolerance& tol = {}) const {
    check_within(x.dim());
    if (is_det()) {
      const auto block = submatrix(x, IndexSet(indices));
      return det_sign(block, psdcert::det(block), tol);
    }
    return sign_of(x(indices[0], indices[1]), x.max_abs(), tol);
  }

  template <class T>
  bool holds(const SymMatrix<T>& x, const Tolerance& tol = {}) const {
    const Sign s = sign(x, tol);
    switch (kind) {
      case ConstraintKind::det_ge_0:
      case ConstraintKind::entry_ge_0:
        return s != Sign::negative;
      case ConstraintKind::det_gt_0:
      case ConstraintKind::entry_gt_0:
        return s == Sign::positive;
      default:
        return s == Sign::zero;
    }
  }

  friend bool operator==(const ElementConstraint&, const ElementConstraint&) = default;
};

}  // namespace psdcert
