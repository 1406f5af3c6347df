#include "psdcert/entry_order.hpp"

namespace psdcert {

std::vector<Position> k_diagonal(std::size_t m, std::size_t k) {
  if (k >= m) throw DimensionError("diagonal offset " + std::to_string(k) + " out of range for dimension " + std::to_string(m));
  std::vector<Position> out;
  for (std::size_t i = 0; i + k < m; ++i) out.push_back({i, i + k});
  return out;
}

EntryOrderDag::EntryOrderDag(std::size_t m) : m_(m) {
  if (m == 0) throw DimensionError("dimension must be at least 1");
}

std::vector<Position> EntryOrderDag::nodes() const {
  std::vector<Position> out;
  for (std::size_t k = 0; k < m_; ++k)
    for (const auto& p : k_diagonal(m_, k)) out.push_back(p);
  return out;
}

std::vector<Position> EntryOrderDag::predecessors(const Position& p) const {
  if (p.i > p.j || p.j >= m_) throw DimensionError("position " + p.to_string() + " is not an upper-triangular entry");
  if (p.i == p.j) return {};
  return {{p.i, p.j - 1}, {p.i + 1, p.j}};
}

bool EntryOrderDag::reaches(const Position& a, const Position& b) const {
  if (a == b) return false;
  std::vector<Position> stack{b};
  std::vector<bool> seen(m_ * m_, false);
  while (!stack.empty()) {
    const Position p = stack.back();
    stack.pop_back();
    for (const auto& q : predecessors(p)) {
      if (q == a) return true;
      if (!seen[q.i * m_ + q.j]) {
        seen[q.i * m_ + q.j] = true;
        stack.push_back(q);
      }
    }
  }
  return false;
}

const char* variant_name(EntryVariant v) {
  switch (v) {
    case EntryVariant::pd:
      return "pd";
    case EntryVariant::psd:
      return "psd";
    case EntryVariant::psd_zero_row2:
      return "psd_zero_row2";
    default:
      return "psd_zero_row3";
  }
}

std::string EntryCondition::to_string() const {
  std::string s = test.to_string();
  if (!holds) {
    const auto eq = s.rfind(" = 0");
    if (eq != std::string::npos) s.replace(eq, 4, " != 0");
  }
  return "when " + s;
}

std::string EntryRule::to_string() const {
  std::string s = "X" + entry.to_string() + ": " + constraint.to_string();
  if (when) s += " " + when->to_string();
  return s;
}

namespace {

using K = ConstraintKind;

ElementConstraint det(K k, std::initializer_list<std::size_t> one_based) {
  std::vector<std::size_t> v;
  for (std::size_t i : one_based) v.push_back(i - 1);
  return ElementConstraint::det(k, IndexSet(v));
}

ElementConstraint entry(K k, std::size_t i, std::size_t j) { return ElementConstraint::entry(k, i - 1, j - 1); }

Position pos(std::size_t i, std::size_t j) { return Position::of(i - 1, j - 1); }

std::vector<Position> positions(std::initializer_list<std::pair<std::size_t, std::size_t>> one_based) {
  std::vector<Position> v;
  for (const auto& [i, j] : one_based) v.push_back(pos(i, j));
  return v;
}

// Full 4x4 list, PD or PSD.
std::vector<EntryRule> full_rules(bool strict) {
  const K diag = strict ? K::entry_gt_0 : K::entry_ge_0;
  const K minor = strict ? K::det_gt_0 : K::det_ge_0;
  const auto d0 = positions({{1, 1}, {2, 2}, {3, 3}, {4, 4}});
  const auto d1 = positions({{1, 1}, {2, 2}, {3, 3}, {4, 4}, {1, 2}, {2, 3}, {3, 4}});
  const auto d2 = positions({{1, 1}, {2, 2}, {3, 3}, {4, 4}, {1, 2}, {2, 3}, {3, 4}, {1, 3}, {2, 4}});
  std::vector<EntryRule> r;
  for (std::size_t i = 1; i <= 4; ++i) r.push_back({pos(i, i), {}, entry(diag, i, i), std::nullopt});
  r.push_back({pos(1, 2), d0, det(minor, {1, 2}), std::nullopt});
  r.push_back({pos(2, 3), d0, det(minor, {2, 3}), std::nullopt});
  r.push_back({pos(3, 4), d0, det(minor, {3, 4}), std::nullopt});
  r.push_back({pos(1, 3), d1, det(minor, {1, 2, 3}), std::nullopt});
  r.push_back({pos(2, 4), d1, det(minor, {2, 3, 4}), std::nullopt});
  if (strict) {
    r.push_back({pos(1, 4), d2, det(minor, {1, 2, 3, 4}), std::nullopt});
  } else {
    r.push_back({pos(1, 4), d2, det(minor, {1, 2, 3, 4}), EntryCondition{det(K::det_eq_0, {2, 3}), false}});
    r.push_back({pos(1, 4), d2, det(minor, {1, 2, 4}), EntryCondition{det(K::det_eq_0, {2, 3}), true}});
  }
  return r;
}

// Row/column z is zero; the remaining three indices a < b < c form a PSD
// block whose interior is the single entry X(b,b).
std::vector<EntryRule> zero_row_rules(std::size_t z) {
  std::vector<std::size_t> rest;
  for (std::size_t i = 1; i <= 4; ++i)
    if (i != z) rest.push_back(i);
  const std::size_t a = rest[0], b = rest[1], c = rest[2];
  std::vector<EntryRule> r;
  for (std::size_t i = 1; i <= 4; ++i) {
    const Position p = pos(z, i);
    r.push_back({p, {}, ElementConstraint::entry(K::entry_eq_0, p.i, p.j), std::nullopt});
  }
  const auto d0 = positions({{a, a}, {b, b}, {c, c}});
  const auto d1 = positions({{a, a}, {b, b}, {c, c}, {a, b}, {b, c}});
  for (std::size_t i : rest) r.push_back({pos(i, i), {}, entry(K::entry_ge_0, i, i), std::nullopt});
  r.push_back({pos(a, b), d0, det(K::det_ge_0, {a, b}), std::nullopt});
  r.push_back({pos(b, c), d0, det(K::det_ge_0, {b, c}), std::nullopt});
  r.push_back({pos(a, c), d1, det(K::det_ge_0, {a, b, c}), EntryCondition{entry(K::entry_eq_0, b, b), false}});
  r.push_back({pos(a, c), d1, det(K::det_ge_0, {a, c}), EntryCondition{entry(K::entry_eq_0, b, b), true}});
  return r;
}

}  // namespace

std::vector<EntryRule> entry_rules_4x4(EntryVariant v) {
  switch (v) {
    case EntryVariant::pd:
      return full_rules(true);
    case EntryVariant::psd:
      return full_rules(false);
    case EntryVariant::psd_zero_row2:
      return zero_row_rules(2);
    default:
      return zero_row_rules(3);
  }
}

}  // namespace psdcert
