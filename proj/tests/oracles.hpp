#pragma once

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qtreekit/metric.hpp"
#include "qtreekit/trees.hpp"

namespace oracle {

using qtreekit::FiniteMetricSpace;
using qtreekit::Graph;
using qtreekit::PointId;

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Blocks as sorted vectors, sorted by first element.
inline std::vector<std::vector<PointId>> coarse_blocks(const FiniteMetricSpace& space, double c) {
  UnionFind uf(space.size());
  for (PointId a = 0; a < space.size(); ++a) {
    for (PointId b = a + 1; b < space.size(); ++b) {
      if (space.distance(a, b) <= c + 1e-9) uf.unite(a, b);
    }
  }
  std::vector<std::vector<PointId>> by_root(space.size());
  for (PointId a = 0; a < space.size(); ++a) by_root[uf.find(a)].push_back(a);
  std::vector<std::vector<PointId>> out;
  for (auto& b : by_root) {
    if (!b.empty()) out.push_back(b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<long> bfs(const Graph& g, PointId src) {
  std::vector<long> d(g.vertex_count(), -1);
  std::deque<PointId> q{src};
  d[src] = 0;
  while (!q.empty()) {
    const PointId v = q.front();
    q.pop_front();
    for (PointId w : g.neighbors(v)) {
      if (d[w] < 0) {
        d[w] = d[v] + 1;
        q.push_back(w);
      }
    }
  }
  return d;
}

// Random tree on n vertices: vertex i > 0 hangs from a uniform earlier vertex.
inline Graph random_tree(std::size_t n, std::mt19937_64& rng) {
  Graph g(n);
  for (std::size_t i = 1; i < n; ++i) {
    g.add_edge(std::uniform_int_distribution<std::size_t>(0, i - 1)(rng), i);
  }
  return g;
}

// Smallest subtree containing s: prune leaves outside s until none remain.
inline std::vector<PointId> closure_by_pruning(const Graph& tree, const std::vector<PointId>& s) {
  const std::size_t n = tree.vertex_count();
  std::set<PointId> keep(s.begin(), s.end());
  std::vector<bool> alive(n, true);
  std::vector<std::size_t> degree(n);
  for (PointId v = 0; v < n; ++v) degree[v] = tree.neighbors(v).size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (PointId v = 0; v < n; ++v) {
      if (alive[v] && degree[v] <= 1 && !keep.count(v)) {
        alive[v] = false;
        changed = true;
        for (PointId w : tree.neighbors(v)) {
          if (alive[w]) --degree[w];
        }
      }
    }
  }
  std::vector<PointId> out;
  for (PointId v = 0; v < n; ++v) {
    if (alive[v]) out.push_back(v);
  }
  return out;
}

inline std::size_t count_substring(const std::string& hay, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) {
    ++count;
  }
  return count;
}

inline double hausdorff(const std::vector<PointId>& a, const std::vector<PointId>& b,
                        const FiniteMetricSpace& m) {
  auto directed = [&](const std::vector<PointId>& x, const std::vector<PointId>& y) {
    double worst = 0.0;
    for (PointId p : x) {
      double best = 1e300;
      for (PointId q : y) best = std::min(best, m.distance(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

// Exhaustive minimum number of radius-r0 balls (centres in the target set)
// covering it. Small inputs only.
inline std::size_t min_cover(const FiniteMetricSpace& m, const std::vector<PointId>& target, double r0) {
  const std::size_t n = target.size();
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
    do {
      bool covered = true;
      for (PointId p : target) {
        bool hit = false;
        for (std::size_t i = 0; i < n && !hit; ++i) hit = pick[i] && m.distance(p, target[i]) <= r0 + 1e-9;
        covered = covered && hit;
      }
      if (covered) return k;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return n;
}

// Random subset that is c-coarse connected in a tree: grow from a seed by
// adding points within c of the current set.
inline std::vector<PointId> random_coarse_subset(const FiniteMetricSpace& m, double c, std::size_t size,
                                                 std::mt19937_64& rng) {
  std::vector<PointId> s{std::uniform_int_distribution<PointId>(0, m.size() - 1)(rng)};
  std::set<PointId> in(s.begin(), s.end());
  while (s.size() < size) {
    std::vector<PointId> candidates;
    for (PointId p = 0; p < m.size(); ++p) {
      if (in.count(p)) continue;
      for (PointId q : s) {
        if (m.distance(p, q) <= c) {
          candidates.push_back(p);
          break;
        }
      }
    }
    if (candidates.empty()) break;
    const PointId p = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
    s.push_back(p);
    in.insert(p);
  }
  std::sort(s.begin(), s.end());
  return s;
}

inline Graph path_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 1; i < n; ++i) g.add_edge(i - 1, i);
  return g;
}

// Z_n x {0,1} as a ladder; i and i + n are the two rails.
inline Graph ladder(std::size_t n) {
  Graph g(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    g.add_edge(i, i + n);
    if (i + 1 < n) {
      g.add_edge(i, i + 1);
      g.add_edge(i + n, i + 1 + n);
    }
  }
  return g;
}

inline Graph grid(std::size_t n) {
  Graph g(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (c + 1 < n) g.add_edge(r * n + c, r * n + c + 1);
      if (r + 1 < n) g.add_edge(r * n + c, (r + 1) * n + c);
    }
  }
  return g;
}

// Ball of radius r in the d-regular tree, root 0, breadth-first ids.
inline Graph regular_tree_ball(std::size_t d, std::size_t r) {
  std::vector<std::pair<PointId, PointId>> edges;
  std::vector<PointId> frontier{0};
  PointId next = 1;
  for (std::size_t level = 0; level < r; ++level) {
    std::vector<PointId> grown;
    for (PointId v : frontier) {
      const std::size_t children = v == 0 ? d : d - 1;
      for (std::size_t c = 0; c < children; ++c) {
        edges.emplace_back(v, next);
        grown.push_back(next++);
      }
    }
    frontier = std::move(grown);
  }
  Graph g(next);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

}  // namespace oracle
