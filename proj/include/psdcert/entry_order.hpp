#pragma once

// Determination order of the upper-triangular entries: X(i,j) is determined
// after X(i,j-1) and X(i+1,j), i.e. after every entry of the block X[i:j].

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "psdcert/constraints.hpp"
#include "psdcert/partial.hpp"

namespace psdcert {

// Positions X(i, i+k), i = 0..m-1-k.
std::vector<Position> k_diagonal(std::size_t m, std::size_t k);

class EntryOrderDag {
 public:
  explicit EntryOrderDag(std::size_t m);

  std::size_t dim() const { return m_; }
  // Upper-triangular positions by diagonal offset, then row.
  std::vector<Position> nodes() const;
  // Direct predecessors: (i,j-1) and (i+1,j) for i < j; none on the diagonal.
  std::vector<Position> predecessors(const Position& p) const;
  // Transitive: a ~> b along edges, a != b.
  bool reaches(const Position& a, const Position& b) const;

 private:
  std::size_t m_;
};

enum class EntryVariant { pd, psd, psd_zero_row2, psd_zero_row3 };

const char* variant_name(EntryVariant v);

// The constraint applies only when `test` evaluates to `holds`.
struct EntryCondition {
  ElementConstraint test;
  bool holds = true;

  std::string to_string() const;
  friend bool operator==(const EntryCondition&, const EntryCondition&) = default;
};

struct EntryRule {
  Position entry;
  // Entries already determined when this one is (cumulative, as listed).
  std::vector<Position> given;
  ElementConstraint constraint;
  std::optional<EntryCondition> when;

  std::string to_string() const;
  friend bool operator==(const EntryRule&, const EntryRule&) = default;
};

// The full decision list for a 4x4 matrix, conditional rules included.
std::vector<EntryRule> entry_rules_4x4(EntryVariant v);

struct EntryRanges {
  EntryVariant variant = EntryVariant::pd;
  std::vector<EntryRule> rules;
};

// Picks the variant from the known diagonal (a known zero X(2,2) or X(3,3)
// in PSD mode selects the edge case) and drops conditional rules whose test
// can be decided from the known entries and comes out the other way.
template <class T>
EntryRanges entry_ranges_4x4(const PartialSymMatrix<T>& p, Mode mode, const Tolerance& tol = {}) {
  if (p.dim() != 4) throw DimensionError("entry ranges are tabulated for 4x4 matrices only");
  auto known_zero = [&](std::size_t i) {
    const auto v = p.value(i, i);
    return v && sign_of(*v, p.values().max_abs(), tol) == Sign::zero;
  };
  EntryRanges out;
  if (mode == Mode::pd)
    out.variant = EntryVariant::pd;
  else if (known_zero(1))
    out.variant = EntryVariant::psd_zero_row2;
  else if (known_zero(2))
    out.variant = EntryVariant::psd_zero_row3;
  else
    out.variant = EntryVariant::psd;
  for (auto& rule : entry_rules_4x4(out.variant)) {
    if (rule.when) {
      bool decidable = true;
      for (const auto& [i, j] : rule.when->test.reads()) decidable = decidable && !p.is_missing(i, j);
      if (decidable && rule.when->test.holds(p.values(), tol) != rule.when->holds) continue;
    }
    out.rules.push_back(std::move(rule));
  }
  return out;
}

}  // namespace psdcert
