#include "psdcert/constraints.hpp"

#include <array>

namespace psdcert {

namespace {

constexpr std::array<std::pair<ConstraintKind, std::string_view>, 6> kNames{{
    {ConstraintKind::det_ge_0, "det_ge_0"},
    {ConstraintKind::det_gt_0, "det_gt_0"},
    {ConstraintKind::det_eq_0, "det_eq_0"},
    {ConstraintKind::entry_ge_0, "entry_ge_0"},
    {ConstraintKind::entry_gt_0, "entry_gt_0"},
    {ConstraintKind::entry_eq_0, "entry_eq_0"},
}};

}  // namespace

std::string_view kind_name(ConstraintKind k) {
  for (const auto& [kind, name] : kNames)
    if (kind == k) return name;
  return "?";
}

std::optional<ConstraintKind> parse_kind(std::string_view name) {
  for (const auto& [kind, n] : kNames)
    if (n == name) return kind;
  return std::nullopt;
}

std::vector<std::pair<std::size_t, std::size_t>> ElementConstraint::reads() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (!is_det()) {
    out.emplace_back(indices[0], indices[1]);
    return out;
  }
  for (std::size_t a = 0; a < indices.size(); ++a)
    for (std::size_t b = a; b < indices.size(); ++b) out.emplace_back(indices[a], indices[b]);
  return out;
}

void ElementConstraint::check_within(std::size_t m) const {
  if (is_det()) {
    IndexSet(indices).check_within(m);
    return;
  }
  if (indices.size() != 2 || indices[0] > indices[1] || indices[1] >= m)
    throw DimensionError("entry constraint needs a position (i,j) with i <= j <= " + std::to_string(m));
}

std::string ElementConstraint::to_string() const {
  std::string lhs;
  if (is_det())
    lhs = "det(X[" + IndexSet(indices).to_string() + "])";
  else
    lhs = "X(" + std::to_string(indices[0] + 1) + "," + std::to_string(indices[1] + 1) + ")";
  switch (kind) {
    case ConstraintKind::det_ge_0:
    case ConstraintKind::entry_ge_0:
      return lhs + " >= 0";
    case ConstraintKind::det_gt_0:
    case ConstraintKind::entry_gt_0:
      return lhs + " > 0";
    default:
      return lhs + " = 0";
  }
}

}  // namespace psdcert
