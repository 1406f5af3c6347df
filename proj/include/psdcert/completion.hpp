#pragma once

// PD/PSD completion of a partially observed symmetric matrix by recursive
// corner ranges.
//
// The widest missing entry x_K = X(i,j) is moved to the corner of the full
// block; the two overlapping blocks (drop j, drop i) are handled the same way
// until blocks are fully observed. Every block in that tree has its widest
// missing entry at its corner, so assigning x_1, x_2, ... in label order makes
// the admissible set of each new variable an interval: the intersection of the
// corner intervals of all blocks whose corner it is. x_1..x_{K-1} are gridded
// inside those intervals; x_K is solved as the interval midpoint.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "psdcert/criterion.hpp"
#include "psdcert/graph.hpp"
#include "psdcert/partial.hpp"
#include "psdcert/quadratic.hpp"

namespace psdcert {

struct GridConfig {
  std::size_t points_per_axis = 200;
  Mode mode = Mode::pd;
  // Keep searching after the first completion to collect feasible prefixes.
  bool exhaustive = true;
  std::size_t max_prefixes = 100000;
  Tolerance tol{};

  void validate() const {
    if (points_per_axis < 2) throw std::invalid_argument("grid needs at least 2 points per axis");
    if (tol.abs < 0 || tol.rel < 0) throw std::invalid_argument("tolerances must be nonnegative");
  }
};

enum class CompletionStatus { completed, not_found_at_resolution, certified_infeasible };

inline const char* status_name(CompletionStatus s) {
  switch (s) {
    case CompletionStatus::completed:
      return "completed";
    case CompletionStatus::not_found_at_resolution:
      return "not_found_at_resolution";
    default:
      return "certified_infeasible";
  }
}

struct PlanBlock {
  // Row order of the block; a corner variable sits at (front, back).
  std::vector<std::size_t> order;
  // Label of the corner variable, none for a fully observed block.
  std::optional<std::size_t> corner;
  // Drop-last and drop-first blocks.
  std::vector<std::size_t> children;
  // Labels of every missing entry inside the block.
  std::vector<std::size_t> variables;

  IndexSet indices() const {
    auto v = order;
    std::sort(v.begin(), v.end());
    return IndexSet(v);
  }
};

struct CompletionPlan {
  std::vector<Position> variables;  // label order
  std::vector<PlanBlock> blocks;    // blocks[0] is the whole matrix
  // corner_blocks[k]: blocks whose corner is x_{k+1}
  std::vector<std::vector<std::size_t>> corner_blocks;

  // Symmetric permutation putting x_K at (1,m).
  const std::vector<std::size_t>& permutation() const { return blocks.front().order; }
};

template <class T>
CompletionPlan variable_elimination_order(const PartialSymMatrix<T>& p) {
  if (p.has_missing_diagonal()) throw PreconditionError("missing diagonal entries must be reduced first");
  CompletionPlan plan;
  plan.variables = p.missing();
  plan.corner_blocks.resize(plan.variables.size());
  std::map<std::vector<std::size_t>, std::size_t> seen;

  auto build = [&](auto&& self, std::vector<std::size_t> set) -> std::size_t {
    if (auto it = seen.find(set); it != seen.end()) return it->second;
    PlanBlock b;
    for (std::size_t k = 0; k < plan.variables.size(); ++k) {
      const auto& v = plan.variables[k];
      if (std::binary_search(set.begin(), set.end(), v.i) && std::binary_search(set.begin(), set.end(), v.j))
        b.variables.push_back(k);
    }
    if (b.variables.empty()) {
      b.order = set;
    } else {
      const std::size_t c = b.variables.back();  // labels ascend, so this is the widest
      const auto& v = plan.variables[c];
      b.corner = c;
      b.order.push_back(v.i);
      for (std::size_t x : set)
        if (x != v.i && x != v.j) b.order.push_back(x);
      b.order.push_back(v.j);
    }
    const std::size_t id = plan.blocks.size();
    seen.emplace(set, id);
    plan.blocks.push_back(b);
    if (b.corner) {
      plan.corner_blocks[*b.corner].push_back(id);
      const auto& v = plan.variables[*b.corner];
      std::vector<std::size_t> drop_last, drop_first;
      for (std::size_t x : set) {
        if (x != v.j) drop_last.push_back(x);
        if (x != v.i) drop_first.push_back(x);
      }
      const std::size_t a = self(self, drop_last);
      const std::size_t z = self(self, drop_first);
      plan.blocks[id].children = {a, z};
    }
    return id;
  };
  std::vector<std::size_t> all(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) all[i] = i;
  build(build, all);
  for (auto& cb : plan.corner_blocks) std::sort(cb.begin(), cb.end());
  return plan;
}

namespace detail {

// [-sqrt(X_ii X_jj), +sqrt(X_ii X_jj)]: the 2x2 minor on {i,j} bounds X_ij.
template <class T>
Interval<T> variable_box(const SymMatrix<T>& w, const Position& p) {
  const T prod = T(w(p.i, p.i) * w(p.j, p.j));
  if constexpr (ScalarTraits<T>::exact) {
    if (sgn(prod) <= 0) return Interval<T>::closed(QuadraticSurd(Rational(0)), QuadraticSurd(Rational(0)));
    return Interval<T>::closed(QuadraticSurd(Rational(0), Rational(-1), prod),
                               QuadraticSurd(Rational(0), Rational(1), prod));
  } else {
    const double s = std::sqrt(std::max(0.0, prod));
    return Interval<T>::closed(-s, s);
  }
}

inline Integer pow2(unsigned long bits) {
  Integer d;
  mpz_ui_pow_ui(d.get_mpz_t(), 2, bits);
  return d;
}

inline Rational make_rational(const Integer& n, const Integer& d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Up to n points of the interval: an inclusive grid when both ends are closed
// and representable, cell midpoints otherwise. Exact-mode points are dyadic
// rationals fine enough to keep the n points distinct; each one is checked
// for membership exactly.
template <class T>
std::vector<T> sample_interval(const Interval<T>& iv, std::size_t n) {
  std::vector<T> out;
  if (iv.empty) return out;
  if constexpr (ScalarTraits<T>::exact) {
    if (iv.is_point()) {
      if (iv.lo.is_rational()) out.push_back(iv.lo.rational_part());
      return out;
    }
    const bool inclusive = !iv.open_lo && !iv.open_hi && iv.lo.is_rational() && iv.hi.is_rational();
    const double width = iv.hi.to_double() - iv.lo.to_double();
    unsigned long bits = 8;
    if (width > 0) bits = static_cast<unsigned long>(std::max(8.0, std::ceil(std::log2(8.0 * double(n) / width))));
    if (width <= 0 || !std::isfinite(width)) bits = 64;
    for (int attempt = 0; attempt < 5 && out.empty(); ++attempt, bits += 32) {
      const Integer d = pow2(bits);
      const Rational lo = iv.lo.ceil_at(d), hi = iv.hi.floor_at(d);
      const Integer lo_n = Integer(lo * d), hi_n = Integer(hi * d);
      const Integer span = hi_n - lo_n;
      if (span < Integer(2 * n)) continue;
      std::vector<Rational> cand;
      if (inclusive) {
        cand.push_back(iv.lo.rational_part());
        for (std::size_t i = 1; i + 1 < n; ++i) {
          Integer step = span * static_cast<unsigned long>(i);
          mpz_fdiv_q_ui(step.get_mpz_t(), step.get_mpz_t(), static_cast<unsigned long>(n - 1));
          cand.push_back(make_rational(lo_n + step, d));
        }
        cand.push_back(iv.hi.rational_part());
      } else {
        for (std::size_t i = 0; i < n; ++i) {
          Integer step = span * static_cast<unsigned long>(2 * i + 1);
          mpz_fdiv_q_ui(step.get_mpz_t(), step.get_mpz_t(), static_cast<unsigned long>(2 * n));
          cand.push_back(make_rational(lo_n + step, d));
        }
      }
      for (auto& c : cand)
        if (iv.contains(c) && (out.empty() || out.back() != c)) out.push_back(c);
    }
  } else {
    if (iv.is_point()) return {iv.lo};
    const bool inclusive = !iv.open_lo && !iv.open_hi;
    for (std::size_t i = 0; i < n; ++i) {
      const double f = inclusive ? double(i) / double(n - 1) : (2.0 * double(i) + 1.0) / (2.0 * double(n));
      const double t = iv.lo + f * (iv.hi - iv.lo);
      if (iv.contains(t)) out.push_back(t);
    }
  }
  return out;
}

// A representable point near the middle of the interval.
template <class T>
std::optional<T> interior_point(const Interval<T>& iv) {
  if (iv.empty) return std::nullopt;
  if constexpr (ScalarTraits<T>::exact) {
    if (iv.is_point()) {
      if (iv.lo.is_rational()) return iv.lo.rational_part();
      return std::nullopt;
    }
    if (iv.lo.is_rational() && iv.hi.is_rational()) return Rational((iv.lo.rational_part() + iv.hi.rational_part()) / 2);
    const auto s = sample_interval(iv, 1);
    if (s.empty()) return std::nullopt;
    return s.front();
  } else {
    const double t = iv.is_point() ? iv.lo : 0.5 * (iv.lo + iv.hi);
    if (!iv.contains(t)) return std::nullopt;
    return t;
  }
}

// Admissible corner values of block b given every other entry of w; both
// child blocks are assumed PD (PSD).
template <class T>
Interval<T> block_corner_interval(const SymMatrix<T>& w, const PlanBlock& b, Mode mode, const Tolerance& tol) {
  const auto x = w.reindexed(b.order);
  return mode == Mode::pd ? pd_corner_interval_unchecked(x, tol) : psd_corner_interval_unchecked(x, tol);
}

template <class T>
Verdict verify_exact(const SymMatrix<T>& x, Mode mode) {
  return check_definite(convert_matrix<Rational>(x), mode);
}

}  // namespace detail

// Level predicate of the search: every plan block whose missing entries are
// all among x_1..x_k is PD (leading minors) or PSD (strong criterion) once
// those entries take the values in `prefix`. `p` must have no missing
// diagonal.
template <class T>
bool prefix_feasible(const PartialSymMatrix<T>& p, const CompletionPlan& plan, std::span<const T> prefix, Mode mode,
                     const Tolerance& tol = {}) {
  SymMatrix<T> w = p.values();
  for (std::size_t k = 0; k < prefix.size(); ++k) w.set(plan.variables[k].i, plan.variables[k].j, prefix[k]);
  for (const auto& b : plan.blocks) {
    if (!b.variables.empty() && b.variables.back() >= prefix.size()) continue;
    if (!check_definite(submatrix(w, b.indices()), mode, tol).positive) return false;
  }
  return true;
}

template <class T>
struct DiagonalReduction {
  std::optional<PartialSymMatrix<T>> reduced;  // none when every diagonal is missing
  std::vector<std::size_t> kept;               // original index of each reduced row
  std::vector<std::size_t> removed;
  std::string note;
};

template <class T>
DiagonalReduction<T> reduce_missing_diagonal(const PartialSymMatrix<T>& p) {
  DiagonalReduction<T> r;
  for (std::size_t i = 0; i < p.dim(); ++i) (p.is_missing(i, i) ? r.removed : r.kept).push_back(i);
  if (!r.kept.empty()) r.reduced = p.reindexed(r.kept);
  if (r.removed.empty()) {
    r.note = "no missing diagonal entries";
  } else {
    r.note = "removed rows/columns";
    for (std::size_t i : r.removed) r.note += " " + std::to_string(i + 1);
    r.note += "; a completion of the rest extends by choosing those diagonal entries large enough";
  }
  return r;
}

namespace detail {

// Some solution of M w = rhs, free unknowns set to 0; none if inconsistent.
template <class T>
std::optional<std::vector<T>> solve_any(Matrix<T> a, std::vector<T> rhs, const Tolerance& tol) {
  const std::size_t rows = a.rows(), cols = a.cols();
  double scale = 0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) scale = std::max(scale, std::fabs(to_double(a(i, j))));
  auto is_zero = [&](const T& v) { return sign_of(v, scale, tol) == Sign::zero; };
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!is_zero(a(i, c)) && (best == rows || T(abs(a(i, c))) > T(abs(a(best, c))))) best = i;
    if (best == rows) continue;
    a.swap_rows(r, best);
    std::swap(rhs[r], rhs[best]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == T(0)) continue;
      const T f = T(a(i, c) / a(r, c));
      for (std::size_t j = c; j < cols; ++j) a(i, j) = T(a(i, j) - T(f * a(r, j)));
      rhs[i] = T(rhs[i] - T(f * rhs[r]));
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!is_zero(rhs[i])) return std::nullopt;
  std::vector<T> w(cols, T(0));
  for (std::size_t k = 0; k < pivot_col.size(); ++k) w[pivot_col[k]] = T(rhs[k] / a(k, pivot_col[k]));
  return w;
}

}  // namespace detail

// Adds the removed rows back one at a time on top of `core` (a completion of
// the reduced matrix, absent when nothing was kept). For a removed row r over
// the placed block A, its column u must lie in the range of A (PSD) and any
// such u works: the known entries of u fix A w on those rows, the missing
// ones are set to (A w), and X(r,r) = w^T A w + 1 leaves a Schur complement
// of 1. In PD mode A is nonsingular, so this never fails.
template <class T>
std::optional<SymMatrix<T>> extend_completion(const PartialSymMatrix<T>& p, const DiagonalReduction<T>& red,
                                              const std::optional<SymMatrix<T>>& core, Mode mode,
                                              const Tolerance& tol = {}) {
  const std::size_t m = p.dim();
  SymMatrix<T> full(m);
  std::vector<std::size_t> placed = red.kept;
  if (core)
    for (std::size_t a = 0; a < red.kept.size(); ++a)
      for (std::size_t b = a; b < red.kept.size(); ++b) full.set(red.kept[a], red.kept[b], (*core)(a, b));
  for (std::size_t r : red.removed) {
    const std::size_t n = placed.size();
    std::vector<std::size_t> known;
    for (std::size_t k = 0; k < n; ++k)
      if (!p.is_missing(r, placed[k])) known.push_back(k);
    Matrix<T> rows(known.size(), n);
    std::vector<T> rhs(known.size());
    for (std::size_t t = 0; t < known.size(); ++t) {
      for (std::size_t c = 0; c < n; ++c) rows(t, c) = full(placed[known[t]], placed[c]);
      rhs[t] = p.values()(r, placed[known[t]]);
    }
    const auto w = detail::solve_any(rows, rhs, tol);
    if (!w) return std::nullopt;
    T quad(0);
    for (std::size_t k = 0; k < n; ++k) {
      T aw(0);
      for (std::size_t c = 0; c < n; ++c) aw = T(aw + T(full(placed[k], placed[c]) * (*w)[c]));
      quad = T(quad + T((*w)[k] * aw));
      full.set(r, placed[k], p.is_missing(r, placed[k]) ? aw : p.values()(r, placed[k]));
    }
    full.set(r, r, T(quad + T(1)));
    placed.push_back(r);
  }
  if (!check_definite(full, mode, tol).positive) return std::nullopt;
  return full;
}

template <class T>
struct CompletionResult {
  CompletionStatus status = CompletionStatus::not_found_at_resolution;
  std::optional<SymMatrix<T>> matrix;
  // Values of the original missing entries, label order.
  std::vector<T> values;
  // Grid prefixes (x_1..x_{K-1}) of the reduced problem that passed every
  // block check; x_K is then available analytically.
  std::vector<std::vector<T>> feasible_prefixes;
  // level_points[k]: grid-feasible prefixes (x_1..x_{k+1}), k < K-1.
  std::vector<std::vector<std::vector<T>>> level_points;
  // Fully observed principal submatrix that is not PD/PSD (original indices).
  std::optional<IndexSet> witness;
  DiagonalReduction<T> reduction;
  std::optional<CompletionPlan> plan;
  std::size_t points_per_axis = 0;
  std::size_t interval_evaluations = 0;
};

namespace detail {

template <class T>
struct GridSearch {
  const CompletionPlan& plan;
  const GridConfig& g;
  CompletionResult<T>& result;
  SymMatrix<T> w;
  std::vector<T> vals;
  std::optional<SymMatrix<T>> found;
  bool done = false;

  void run(std::size_t k) {
    if (done) return;
    const std::size_t K = plan.variables.size();
    const auto& pos = plan.variables[k];
    Interval<T> iv = variable_box(w, pos);
    for (std::size_t b : plan.corner_blocks[k]) {
      if (iv.empty) break;
      ++result.interval_evaluations;
      iv = iv.intersect(block_corner_interval(w, plan.blocks[b], g.mode, g.tol));
    }
    if (iv.empty) return;
    if (k + 1 == K) {
      if (result.feasible_prefixes.size() < g.max_prefixes)
        result.feasible_prefixes.emplace_back(vals.begin(), vals.begin() + static_cast<long>(k));
      if (!found) {
        if (const auto t = interior_point(iv)) {
          w.set(pos.i, pos.j, *t);
          if (verify_exact(w, g.mode).positive) {
            found = w;
          } else if constexpr (ScalarTraits<T>::exact) {
            throw std::logic_error("corner interval produced a matrix failing the exact check");
          }
        }
      }
      if (found && (!g.exhaustive || result.feasible_prefixes.size() >= g.max_prefixes)) done = true;
      return;
    }
    for (const T& t : sample_interval(iv, g.points_per_axis)) {
      vals[k] = t;
      w.set(pos.i, pos.j, t);
      if (result.level_points[k].size() < g.max_prefixes)
        result.level_points[k].emplace_back(vals.begin(), vals.begin() + static_cast<long>(k + 1));
      run(k + 1);
      if (done) return;
    }
  }
};

template <class T>
IndexSet map_indices(const IndexSet& local, const std::vector<std::size_t>& to_global) {
  std::vector<std::size_t> v;
  for (std::size_t i : local) v.push_back(to_global[i]);
  std::sort(v.begin(), v.end());
  return IndexSet(v);
}

}  // namespace detail

template <class T>
CompletionResult<T> complete(const PartialSymMatrix<T>& p, const GridConfig& g) {
  g.validate();
  CompletionResult<T> res;
  res.points_per_axis = g.points_per_axis;
  res.reduction = reduce_missing_diagonal(p);
  const auto& red = res.reduction;
  std::optional<SymMatrix<T>> core;

  if (red.reduced) {
    const auto& q = *red.reduced;
    for (const auto& clique : maximal_cliques(PatternGraph::of(q))) {
      const auto v = check_definite(submatrix(q.values(), clique), g.mode, g.tol);
      if (!v.positive) {
        std::vector<std::size_t> local;
        for (std::size_t i : *v.witness) local.push_back(clique[i]);
        res.status = CompletionStatus::certified_infeasible;
        res.witness = detail::map_indices<T>(IndexSet(local), red.kept);
        return res;
      }
    }
    res.plan = variable_elimination_order(q);
    const auto& plan = *res.plan;
    const std::size_t K = plan.variables.size();
    if (K == 0) {
      core = q.values();
    } else {
      res.level_points.resize(K - 1);
      detail::GridSearch<T> s{plan, g, res, q.values(), std::vector<T>(K, T(0)), std::nullopt};
      s.run(0);
      core = s.found;
      if (!core) return res;
    }
  }
  auto full = extend_completion(p, red, core, g.mode, g.tol);
  if (!full || !detail::verify_exact(*full, g.mode).positive) return res;
  res.status = CompletionStatus::completed;
  for (const auto& pos : p.missing()) res.values.push_back((*full)(pos.i, pos.j));
  res.matrix = std::move(full);
  return res;
}

template <class T>
CompletionResult<T> complete_pd(const PartialSymMatrix<T>& p, GridConfig g = {}) {
  g.mode = Mode::pd;
  return complete(p, g);
}

template <class T>
CompletionResult<T> complete_psd(const PartialSymMatrix<T>& p, GridConfig g = {}) {
  g.mode = Mode::psd;
  return complete(p, g);
}

template <class T>
struct RegionPoint {
  T x;
  T y;
  bool first = false;   // drop-last block of the whole matrix completes
  bool second = false;  // drop-first block completes
  bool both = false;    // the whole matrix completes
};

template <class T>
struct FeasibleRegion {
  std::size_t var_x = 0;  // labels, 0-based
  std::size_t var_y = 1;
  IndexSet first_block;
  IndexSet second_block;
  std::vector<RegionPoint<T>> points;
};

// Pins two variables on the closed grid of their search boxes and records,
// for each grid point, whether the two top-level overlapping blocks and the
// whole matrix still admit a completion (other variables searched with the
// same grid, first hit only).
template <class T>
FeasibleRegion<T> feasible_region(const PartialSymMatrix<T>& p, std::size_t var_x, std::size_t var_y,
                                  const GridConfig& g) {
  g.validate();
  const auto plan = variable_elimination_order(p);
  const std::size_t K = plan.variables.size();
  if (var_x >= K || var_y >= K || var_x == var_y)
    throw DimensionError("region needs two distinct variables among x1..x" + std::to_string(K));
  FeasibleRegion<T> out;
  out.var_x = var_x;
  out.var_y = var_y;
  const auto& root = plan.blocks.front();
  out.first_block = plan.blocks[root.children[0]].indices();
  out.second_block = plan.blocks[root.children[1]].indices();

  auto axis = [&](const Position& pos) {
    auto box = detail::variable_box(p.values(), pos);
    if constexpr (ScalarTraits<T>::exact) {
      // representable inner closed box
      const Integer d = detail::pow2(16);
      box = Interval<T>::closed(QuadraticSurd(box.lo.ceil_at(d)), QuadraticSurd(box.hi.floor_at(d)));
    }
    return detail::sample_interval(box, g.points_per_axis);
  };
  const auto xs = axis(plan.variables[var_x]);
  const auto ys = axis(plan.variables[var_y]);

  GridConfig inner = g;
  inner.exhaustive = false;
  auto completes = [&](const PartialSymMatrix<T>& q) {
    return complete(q, inner).status == CompletionStatus::completed;
  };
  for (const T& x : xs)
    for (const T& y : ys) {
      auto q = p;
      q.set(plan.variables[var_x].i, plan.variables[var_x].j, x);
      q.set(plan.variables[var_y].i, plan.variables[var_y].j, y);
      RegionPoint<T> pt{x, y};
      pt.first = completes(q.reindexed(out.first_block.indices()));
      pt.second = completes(q.reindexed(out.second_block.indices()));
      pt.both = pt.first && pt.second && completes(q);
      out.points.push_back(pt);
    }
  return out;
}

}  // namespace psdcert
