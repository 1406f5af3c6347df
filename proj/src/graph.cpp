#include "psdcert/graph.hpp"

#include <algorithm>
#include <deque>
#include <optional>

namespace psdcert {

void PatternGraph::add_edge(std::size_t i, std::size_t j) {
  if (i >= size() || j >= size()) throw DimensionError("vertex out of range");
  if (i == j) throw DimensionError("pattern graph has no self-loops");
  adj_[i][j] = adj_[j][i] = true;
}

std::size_t PatternGraph::edge_count() const {
  std::size_t e = 0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j) e += adj_[i][j];
  return e;
}

std::vector<std::size_t> PatternGraph::neighbors(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < size(); ++u)
    if (adj_[v][u]) out.push_back(u);
  return out;
}

std::vector<std::size_t> lex_bfs(const PatternGraph& g) {
  const std::size_t n = g.size();
  // label[v] is the decreasing list of visit times of visited neighbours;
  // lexicographically largest label goes next.
  std::vector<std::vector<std::size_t>> label(n);
  std::vector<bool> done(n, false);
  std::vector<std::size_t> order;
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> best;
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v]) continue;
      if (!best || label[v] > label[*best]) best = v;
    }
    const std::size_t v = *best;
    done[v] = true;
    order.push_back(v);
    for (std::size_t u = 0; u < n; ++u)
      if (!done[u] && g.adjacent(u, v)) label[u].push_back(n - step);
  }
  return order;
}

std::vector<std::size_t> find_chordless_cycle(const PatternGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> best;
  for (std::size_t v = 0; v < n; ++v) {
    const auto nv = g.neighbors(v);
    for (std::size_t a = 0; a < nv.size(); ++a)
      for (std::size_t b = a + 1; b < nv.size(); ++b) {
        const std::size_t u = nv[a], w = nv[b];
        if (g.adjacent(u, w)) continue;
        // shortest w -> u path avoiding v and its other neighbours
        std::vector<bool> blocked(n, false);
        blocked[v] = true;
        for (std::size_t x : nv) blocked[x] = x != u && x != w;
        std::vector<std::optional<std::size_t>> parent(n);
        std::vector<bool> seen(n, false);
        std::deque<std::size_t> queue{w};
        seen[w] = true;
        while (!queue.empty() && !seen[u]) {
          const std::size_t x = queue.front();
          queue.pop_front();
          for (std::size_t y = 0; y < n; ++y)
            if (!seen[y] && !blocked[y] && g.adjacent(x, y)) {
              seen[y] = true;
              parent[y] = x;
              queue.push_back(y);
            }
        }
        if (!seen[u]) continue;
        std::vector<std::size_t> path{u};
        while (path.back() != w) path.push_back(*parent[path.back()]);
        std::reverse(path.begin(), path.end());
        path.insert(path.begin(), v);
        if (best.empty() || path.size() < best.size()) best = path;
      }
  }
  return best;
}

ChordalityResult is_chordal(const PatternGraph& g) {
  ChordalityResult r;
  auto order = lex_bfs(g);
  std::reverse(order.begin(), order.end());
  std::vector<std::size_t> pos(g.size());
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
  for (std::size_t k = 0; k < order.size() && r.chordal; ++k) {
    const std::size_t v = order[k];
    std::vector<std::size_t> later;
    for (std::size_t u : g.neighbors(v))
      if (pos[u] > k) later.push_back(u);
    if (later.empty()) continue;
    const std::size_t parent = *std::min_element(later.begin(), later.end(),
                                                 [&](std::size_t a, std::size_t b) { return pos[a] < pos[b]; });
    for (std::size_t u : later)
      if (u != parent && !g.adjacent(u, parent)) r.chordal = false;
  }
  if (r.chordal)
    r.elimination_order = order;
  else
    r.cycle = find_chordless_cycle(g);
  return r;
}

namespace {

void bron_kerbosch(const PatternGraph& g, std::vector<std::size_t>& r, std::vector<std::size_t> p,
                   std::vector<std::size_t> x, std::vector<IndexSet>& out) {
  if (p.empty() && x.empty()) {
    auto c = r;
    std::sort(c.begin(), c.end());
    out.emplace_back(std::move(c));
    return;
  }
  // pivot with the most neighbours in p
  std::size_t pivot = p.empty() ? x.front() : p.front();
  std::size_t most = 0;
  for (const auto* set : {&p, &x})
    for (std::size_t u : *set) {
      std::size_t c = 0;
      for (std::size_t v : p) c += g.adjacent(u, v);
      if (c > most) most = c, pivot = u;
    }
  const auto candidates = p;
  for (std::size_t v : candidates) {
    if (g.adjacent(v, pivot)) continue;
    std::vector<std::size_t> np, nx;
    for (std::size_t u : p)
      if (g.adjacent(u, v)) np.push_back(u);
    for (std::size_t u : x)
      if (g.adjacent(u, v)) nx.push_back(u);
    r.push_back(v);
    bron_kerbosch(g, r, np, nx, out);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

}  // namespace

std::vector<IndexSet> maximal_cliques(const PatternGraph& g) {
  std::vector<IndexSet> out;
  if (g.size() == 0) return out;
  std::vector<std::size_t> r, p(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) p[v] = v;
  bron_kerbosch(g, r, p, {}, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace psdcert
