#pragma once

// Matrix files: whitespace text (m lines of m tokens, "?" for a hole, "#"
// starts a comment) or JSON {"m": int, "entries": [[number|string|null]]}.
// Numbers are kept as their source text so decimals load exactly.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "psdcert/completion.hpp"
#include "psdcert/criterion.hpp"
#include "psdcert/partial.hpp"
#include "psdcert/quadratic.hpp"

namespace psdcert {

struct MatrixToken {
  std::optional<std::string> text;  // none for a hole
  std::size_t line = 0;
  std::size_t column = 0;
};

struct RawMatrix {
  std::size_t m = 0;
  std::vector<std::vector<MatrixToken>> rows;
};

RawMatrix read_matrix_text(std::string_view text);
RawMatrix read_matrix_json(std::string_view text);
// JSON when the first non-blank character is '{', text otherwise.
RawMatrix read_matrix(std::string_view text);
std::string read_file(const std::string& path);

namespace detail {

template <class T>
T parse_token(const MatrixToken& t) {
  try {
    return parse_scalar<T>(*t.text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(e.what()), t.line, t.column);
  }
}

inline std::string where(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace detail

// Symmetry is checked on load: exactly for the exact backend, within the
// zero band for floats. A hole must be mirrored by a hole.
template <class T>
PartialSymMatrix<T> to_partial(const RawMatrix& raw, const Tolerance& tol = {}) {
  const std::size_t m = raw.m;
  PartialSymMatrix<T> p(m);
  std::vector<std::vector<std::optional<T>>> v(m, std::vector<std::optional<T>>(m));
  double scale = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (raw.rows[i][j].text) {
        v[i][j] = detail::parse_token<T>(raw.rows[i][j]);
        scale = std::max(scale, std::fabs(to_double(*v[i][j])));
      }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      const auto &a = v[i][j], &b = v[j][i];
      if (a.has_value() != b.has_value())
        throw SymmetryError("entry " + detail::where(i, j) + " and its mirror " + detail::where(j, i) +
                            " must both be holes or both be given");
      if (!a) {
        p.set_missing(i, j);
        continue;
      }
      if (sign_of(T(*a - *b), scale, tol) != Sign::zero)
        throw SymmetryError("matrix is not symmetric at " + detail::where(i, j) + ": " + scalar_to_string(*a) +
                            " vs " + scalar_to_string(*b));
      p.set(i, j, *a);
    }
  return p;
}

template <class T>
SymMatrix<T> to_matrix(const RawMatrix& raw, const Tolerance& tol = {}) {
  const auto p = to_partial<T>(raw, tol);
  const auto holes = p.missing();
  if (!holes.empty()) throw PreconditionError("matrix has missing entries, first at " + holes.front().to_string());
  return p.values();
}

template <class T>
nlohmann::json scalar_json(const T& x) {
  if constexpr (ScalarTraits<T>::exact)
    return scalar_to_string(x);
  else
    return x;
}

template <class T>
std::string matrix_to_text(const SymMatrix<T>& x) {
  std::string out;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    for (std::size_t j = 0; j < x.dim(); ++j) out += (j ? " " : "") + scalar_to_string(x(i, j));
    out += '\n';
  }
  return out;
}

template <class T>
nlohmann::json matrix_json(const SymMatrix<T>& x) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < x.dim(); ++i) {
    auto r = nlohmann::json::array();
    for (std::size_t j = 0; j < x.dim(); ++j) r.push_back(scalar_json(x(i, j)));
    rows.push_back(r);
  }
  return {{"m", x.dim()}, {"entries", rows}};
}

nlohmann::json index_set_json(const std::optional<IndexSet>& s);
nlohmann::json verdict_json(const Verdict& v, Mode mode);

// Exact endpoints "p/q + r/s*sqrt(d)" come with their three parts.
template <class T>
nlohmann::json interval_json(const Interval<T>& iv) {
  nlohmann::json j{{"empty", iv.empty}, {"text", iv.to_string()}};
  if (iv.empty) return j;
  auto end = [&](const char* name, const Endpoint<T>& e) {
    const std::string n(name);
    if constexpr (ScalarTraits<T>::exact) {
      j[n] = e.to_string();
      j[n + "_rational"] = e.rational_part().get_str();
      j[n + "_coefficient"] = e.coefficient().get_str();
      j[n + "_radicand"] = e.radicand().get_str();
    } else {
      j[n] = e;
    }
  };
  end("lo", iv.lo);
  end("hi", iv.hi);
  j["open_lo"] = iv.open_lo;
  j["open_hi"] = iv.open_hi;
  return j;
}

template <class T>
nlohmann::json quadratic_json(const CornerQuadratic<T>& q) {
  return {{"a", scalar_json(q.a)}, {"b", scalar_json(q.b)}, {"c", scalar_json(q.c)},
          {"discriminant", scalar_json(q.discriminant())}};
}

template <class T>
std::string region_csv(const FeasibleRegion<T>& r) {
  std::string out = "x1,x2,feasible_Y,feasible_Z,feasible_both\n";
  for (const auto& p : r.points)
    out += scalar_to_string(p.x) + "," + scalar_to_string(p.y) + "," + (p.first ? "1" : "0") + "," +
           (p.second ? "1" : "0") + "," + (p.both ? "1" : "0") + "\n";
  return out;
}

}  // namespace psdcert
