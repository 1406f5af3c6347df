#pragma once

#include <cstddef>
#include <vector>

#include "psdcert/matrix.hpp"
#include "psdcert/partial.hpp"

namespace psdcert {

// Undirected graph on 0..m-1 with an edge i-j for every observed
// off-diagonal entry.
class PatternGraph {
 public:
  explicit PatternGraph(std::size_t m) : adj_(m, std::vector<bool>(m, false)) {}

  template <class T>
  static PatternGraph of(const PartialSymMatrix<T>& p) {
    PatternGraph g(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i)
      for (std::size_t j = i + 1; j < p.dim(); ++j)
        if (!p.is_missing(i, j)) g.add_edge(i, j);
    return g;
  }

  std::size_t size() const { return adj_.size(); }
  bool adjacent(std::size_t i, std::size_t j) const { return adj_[i][j]; }
  void add_edge(std::size_t i, std::size_t j);
  std::size_t edge_count() const;
  std::vector<std::size_t> neighbors(std::size_t v) const;

 private:
  std::vector<std::vector<bool>> adj_;
};

struct ChordalityResult {
  bool chordal = true;
  // Perfect elimination ordering when chordal.
  std::vector<std::size_t> elimination_order;
  // A chordless cycle of length >= 4 otherwise, as a vertex sequence.
  std::vector<std::size_t> cycle;
};

// Lexicographic breadth-first search order, ties broken by smallest vertex.
std::vector<std::size_t> lex_bfs(const PatternGraph& g);

ChordalityResult is_chordal(const PatternGraph& g);

// Shortest chordless cycle of length >= 4, first in (v, u, w) order where
// v is a cycle vertex and u < w its two cycle neighbours; empty if none.
std::vector<std::size_t> find_chordless_cycle(const PatternGraph& g);

// All maximal cliques, each sorted, in lexicographic order. Isolated
// vertices are singleton cliques.
std::vector<IndexSet> maximal_cliques(const PatternGraph& g);

}  // namespace psdcert
