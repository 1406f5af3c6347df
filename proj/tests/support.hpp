#pragma once

// Shared fixtures, random generators, and brute-force oracles for the
// test suites. Nothing here calls the library's elimination routines.

#include <algorithm>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "psdcert/matrix.hpp"
#include "psdcert/partial.hpp"
#include "psdcert/scalar.hpp"

namespace psdcert::testing {

inline Rational Q(const char* s) { return parse_rational(s); }

// mpq_class(n, d) is not reduced; equality needs canonical form.
inline Rational frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

template <class T = Rational>
SymMatrix<T> from_strings(const std::vector<std::vector<const char*>>& rows) {
  std::vector<std::vector<T>> v;
  for (const auto& r : rows) {
    std::vector<T> row;
    for (const char* s : r) row.push_back(parse_scalar<T>(s));
    v.push_back(row);
  }
  return SymMatrix<T>::from_rows(v);
}

// X(i,j) = i + j - 1 (1-based): the 4x4 and 5x5 inner-saturation examples.
template <class T = Rational>
SymMatrix<T> hankel_matrix(std::size_t m) {
  SymMatrix<T> x(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) x.set(i, j, T(static_cast<long>(i + j + 1)));
  return x;
}

// Laplace expansion along the first row.
template <class T>
T cofactor_det(const Matrix<T>& a) {
  const std::size_t n = a.rows();
  if (n == 0) return T(1);
  if (n == 1) return a(0, 0);
  T total(0);
  for (std::size_t j = 0; j < n; ++j) {
    Matrix<T> minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k) {
        if (k == j) continue;
        minor(i - 1, c++) = a(i, k);
      }
    const T term = a(0, j) * cofactor_det(minor);
    if (j % 2 == 0)
      total += term;
    else
      total -= term;
  }
  return total;
}

template <class T>
T cofactor_det(const SymMatrix<T>& x) {
  return cofactor_det(x.dense());
}

// Rank as the largest k with a nonzero k x k minor (exhaustive).
inline std::size_t minor_rank(const Matrix<Rational>& a) {
  const std::size_t r = a.rows(), c = a.cols();
  std::size_t best = 0;
  for (std::size_t k = 1; k <= std::min(r, c); ++k) {
    bool found = false;
    std::vector<bool> rs(r, false), cs(c, false);
    std::fill(rs.begin(), rs.begin() + static_cast<long>(k), true);
    do {
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.begin(), cs.begin() + static_cast<long>(k), true);
      do {
        Matrix<Rational> sub(k, k);
        for (std::size_t i = 0, si = 0; i < r; ++i) {
          if (!rs[i]) continue;
          for (std::size_t j = 0, sj = 0; j < c; ++j)
            if (cs[j]) sub(si, sj++) = a(i, j);
          ++si;
        }
        if (cofactor_det(sub) != 0) found = true;
      } while (!found && std::prev_permutation(cs.begin(), cs.end()));
    } while (!found && std::prev_permutation(rs.begin(), rs.end()));
    if (!found) break;
    best = k;
  }
  return best;
}

using Rng = std::mt19937_64;

inline long uniform_int(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline SymMatrix<Rational> random_dense(Rng& rng, std::size_t m, long bound = 5) {
  SymMatrix<Rational> x(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) x.set(i, j, Rational(uniform_int(rng, -bound, bound)));
  return x;
}

// G^T G with G of shape r x m (rank <= r). r = 0 gives the zero matrix.
inline SymMatrix<Rational> random_gram(Rng& rng, std::size_t m, std::size_t r, long bound = 3) {
  Matrix<Rational> g(r, m);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m; ++j) g(i, j) = Rational(uniform_int(rng, -bound, bound));
  SymMatrix<Rational> x(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < r; ++k) s += g(k, i) * g(k, j);
      x.set(i, j, s);
    }
  return x;
}

// PSD matrix nudged by +/- one unit on a random symmetric position: lands
// on either side of the PSD boundary.
inline SymMatrix<Rational> random_boundary_perturbation(Rng& rng, std::size_t m) {
  auto x = random_gram(rng, m, static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(m))));
  const auto i = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(m) - 1));
  const auto j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(m) - 1));
  const Rational delta = uniform_int(rng, 0, 1) ? Rational(1) : Rational(-1);
  x.set(i, j, Rational(x(i, j) + delta));
  return x;
}

// A matrix with some rows/columns zeroed out; half of the time the rest is
// PSD, otherwise dense.
inline SymMatrix<Rational> random_zero_rows(Rng& rng, std::size_t m) {
  auto x = uniform_int(rng, 0, 1) ? random_gram(rng, m, static_cast<std::size_t>(uniform_int(rng, 1, static_cast<long>(m))))
                                  : random_dense(rng, m, 3);
  const long zeros = uniform_int(rng, 1, static_cast<long>(m));
  for (long z = 0; z < zeros; ++z) {
    const auto r = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(m) - 1));
    for (std::size_t j = 0; j < m; ++j) x.set(r, j, Rational(0));
  }
  // occasionally leave one off-diagonal entry in a zeroed row
  if (m >= 2 && uniform_int(rng, 0, 3) == 0) {
    const auto r = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(m) - 1));
    if (x(r, r) == 0) x.set(r, (r + 1) % m, Rational(uniform_int(rng, -1, 1)));
  }
  return x;
}

// Mixture used by the oracle-equivalence properties.
inline SymMatrix<Rational> random_mixed(Rng& rng, std::size_t m) {
  switch (uniform_int(rng, 0, 3)) {
    case 0:
      return random_dense(rng, m);
    case 1:
      return random_gram(rng, m, static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(m))));
    case 2:
      return random_boundary_perturbation(rng, m);
    default:
      return random_zero_rows(rng, m);
  }
}

inline std::vector<std::size_t> random_permutation(Rng& rng, std::size_t m) {
  std::vector<std::size_t> p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// The 3x3 fully observed block of the five-point completion example.
inline SymMatrix<Rational> example3_block() {
  return from_strings({{"1", "0.8", "0.6"}, {"0.8", "1", "0.4"}, {"0.6", "0.4", "1"}});
}

// The two overlapping 4x4 blocks of the completion example, rows reordered
// so that x2 sits at the corner and x1 at (2,4).
template <class T = Rational>
SymMatrix<T> example3_y(const T& x1, const T& x2) {
  auto y = from_strings<T>({{"1", "0.4", "0.8", "0"}, {"0.4", "1", "0.6", "0"}, {"0.8", "0.6", "1", "0.8"},
                            {"0", "0", "0.8", "1"}});
  y.set(0, 3, x2);
  y.set(1, 3, x1);
  return y;
}

template <class T = Rational>
SymMatrix<T> example3_z(const T& x1, const T& x2) {
  auto z = from_strings<T>({{"1", "0.4", "0.5", "0"}, {"0.4", "1", "0.6", "0"}, {"0.5", "0.6", "1", "0.9"},
                            {"0", "0", "0.9", "1"}});
  z.set(0, 3, x2);
  z.set(1, 3, x1);
  return z;
}

// m x m symmetric matrix with PSD overlapping blocks X[0:m-2], X[1:m-1] and
// a singular interior: a Gram matrix whose interior columns span fewer than
// m-2 directions, then an arbitrary corner.
inline SymMatrix<Rational> random_singular_interior(Rng& rng, std::size_t m) {
  const std::size_t r = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<long>(m)));
  const std::size_t s = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(m) - 3));
  Matrix<Rational> basis(r, s), g(r, m);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < s; ++k) basis(i, k) = Rational(uniform_int(rng, -3, 3));
  for (std::size_t j = 0; j < m; ++j) {
    const bool interior = j > 0 && j + 1 < m;
    std::vector<long> coef(s);
    for (auto& c : coef) c = uniform_int(rng, -2, 2);
    for (std::size_t i = 0; i < r; ++i) {
      if (interior) {
        Rational v = 0;
        for (std::size_t k = 0; k < s; ++k) v += basis(i, k) * coef[k];
        g(i, j) = v;
      } else {
        g(i, j) = Rational(uniform_int(rng, -3, 3));
      }
    }
  }
  SymMatrix<Rational> x(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      Rational v = 0;
      for (std::size_t k = 0; k < r; ++k) v += g(k, i) * g(k, j);
      x.set(i, j, v);
    }
  x.set(0, m - 1, frac(uniform_int(rng, -20, 20), uniform_int(rng, 1, 4)));
  return x;
}

// "?" marks a hole.
template <class T = Rational>
PartialSymMatrix<T> partial_from_strings(const std::vector<std::vector<const char*>>& rows) {
  PartialSymMatrix<T> p(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i; j < rows.size(); ++j) {
      if (std::string(rows[i][j]) == "?")
        p.set_missing(i, j);
      else
        p.set(i, j, ScalarTraits<T>::parse(rows[i][j]));
    }
  return p;
}

// 5x5 completion example: holes at (3,4), (2,4), (1,5).
template <class T = Rational>
PartialSymMatrix<T> example3_partial() {
  return partial_from_strings<T>({{"1", "0.8", "0.6", "0.8", "?"},
                                  {"0.8", "1", "0.4", "?", "0.5"},
                                  {"0.6", "0.4", "1", "?", "0.6"},
                                  {"0.8", "?", "?", "1", "0.9"},
                                  {"?", "0.5", "0.6", "0.9", "1"}});
}

// G^T G + I with small integer G: PD.
inline SymMatrix<Rational> random_pd(Rng& rng, std::size_t m) {
  auto x = random_gram(rng, m, m, 2);
  for (std::size_t i = 0; i < m; ++i) x.set(i, i, x(i, i) + 1);
  return x;
}

// Hides k distinct off-diagonal entries.
inline PartialSymMatrix<Rational> hide_random(Rng& rng, const SymMatrix<Rational>& x, std::size_t k) {
  PartialSymMatrix<Rational> p(x);
  std::vector<Position> off;
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t j = i + 1; j < x.dim(); ++j) off.push_back({i, j});
  std::shuffle(off.begin(), off.end(), rng);
  for (std::size_t t = 0; t < k && t < off.size(); ++t) p.set_missing(off[t].i, off[t].j);
  return p;
}

// Edges of a random chordal graph: each new vertex joins a random clique of
// the earlier ones, so reverse insertion order eliminates perfectly.
inline std::vector<std::vector<bool>> random_chordal_adjacency(Rng& rng, std::size_t m) {
  std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
  for (std::size_t v = 1; v < m; ++v) {
    std::vector<std::size_t> clique{static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(v) - 1))};
    std::vector<std::size_t> others(v);
    for (std::size_t w = 0; w < v; ++w) others[w] = w;
    std::shuffle(others.begin(), others.end(), rng);
    for (std::size_t w : others) {
      if (w == clique.front() || uniform_int(rng, 0, 1) == 0) continue;
      bool ok = true;
      for (std::size_t c : clique) ok = ok && adj[w][c];
      if (ok) clique.push_back(w);
    }
    for (std::size_t c : clique) adj[v][c] = adj[c][v] = true;
  }
  return adj;
}

}  // namespace psdcert::testing
