#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psdcert/errors.hpp"
#include "psdcert/matrix.hpp"

namespace psdcert {

// Upper-triangular position (i <= j), 0-based.
struct Position {
  std::size_t i = 0;
  std::size_t j = 0;

  static Position of(std::size_t a, std::size_t b) { return a <= b ? Position{a, b} : Position{b, a}; }
  std::size_t span() const { return j - i; }
  bool diagonal() const { return i == j; }
  std::string to_string() const { return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"; }
  friend auto operator<=>(const Position&, const Position&) = default;
};

// Variable labels: x_1 is the first element. Short spans come first; among
// equal spans the lexicographically larger position comes first, so the last
// label is the widest missing entry that is lexicographically smallest.
inline bool label_before(const Position& a, const Position& b) {
  if (a.span() != b.span()) return a.span() < b.span();
  return a > b;
}

template <class T>
class PartialSymMatrix {
 public:
  explicit PartialSymMatrix(std::size_t m) : values_(m), known_(m * m, true) {}

  explicit PartialSymMatrix(const SymMatrix<T>& x) : values_(x), known_(x.dim() * x.dim(), true) {}

  std::size_t dim() const { return values_.dim(); }

  bool is_missing(std::size_t i, std::size_t j) const {
    check(i, j);
    return !known_[i * dim() + j];
  }
  std::optional<T> value(std::size_t i, std::size_t j) const {
    if (is_missing(i, j)) return std::nullopt;
    return values_(i, j);
  }

  void set(std::size_t i, std::size_t j, const T& v) {
    check(i, j);
    values_.set(i, j, v);
    known_[i * dim() + j] = known_[j * dim() + i] = true;
  }
  void set_missing(std::size_t i, std::size_t j) {
    check(i, j);
    values_.set(i, j, T(0));
    known_[i * dim() + j] = known_[j * dim() + i] = false;
  }

  // Missing positions in label order.
  std::vector<Position> missing() const {
    std::vector<Position> out;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = i; j < dim(); ++j)
        if (!known_[i * dim() + j]) out.push_back({i, j});
    std::sort(out.begin(), out.end(), label_before);
    return out;
  }
  std::size_t missing_count() const { return missing().size(); }
  bool fully_observed() const { return std::all_of(known_.begin(), known_.end(), [](bool b) { return b; }); }

  bool has_missing_diagonal() const {
    for (std::size_t i = 0; i < dim(); ++i)
      if (!known_[i * dim() + i]) return true;
    return false;
  }

  // Known values with zeros at the holes.
  const SymMatrix<T>& values() const { return values_; }

  // Completes the holes with `fill`, given in label order.
  SymMatrix<T> filled(std::span<const T> fill) const {
    const auto pos = missing();
    if (fill.size() != pos.size())
      throw DimensionError("expected " + std::to_string(pos.size()) + " values, got " + std::to_string(fill.size()));
    SymMatrix<T> x = values_;
    for (std::size_t k = 0; k < pos.size(); ++k) x.set(pos[k].i, pos[k].j, fill[k]);
    return x;
  }

  PartialSymMatrix reindexed(std::span<const std::size_t> order) const {
    PartialSymMatrix out(order.size());
    for (std::size_t a = 0; a < order.size(); ++a)
      for (std::size_t b = a; b < order.size(); ++b) {
        if (is_missing(order[a], order[b]))
          out.set_missing(a, b);
        else
          out.set(a, b, values_(order[a], order[b]));
      }
    return out;
  }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= dim() || j >= dim()) throw DimensionError("entry index out of range");
  }

  SymMatrix<T> values_;
  std::vector<bool> known_;
};

template <class To, class From>
PartialSymMatrix<To> convert_partial(const PartialSymMatrix<From>& p) {
  PartialSymMatrix<To> out(convert_matrix<To>(p.values()));
  for (const auto& pos : p.missing()) out.set_missing(pos.i, pos.j);
  return out;
}

}  // namespace psdcert
