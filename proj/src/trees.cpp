#include "qtreekit/trees.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <set>

namespace qtreekit {

SimplicialTree::SimplicialTree(Graph graph, PointId root) : graph_(std::move(graph)), root_(root) {
  const std::size_t n = graph_.vertex_count();
  if (n == 0) throw Error("a tree needs at least one vertex");
  if (graph_.edge_count() + 1 != n) throw Error("not a tree: edge count must be vertex count - 1");
  if (root_ >= n) throw Error("tree root out of range");
  parent_.assign(n, root_);
  depth_.assign(n, 0);
  std::vector<bool> seen(n, false);
  std::deque<PointId> queue{root_};
  seen[root_] = true;
  std::size_t visited = 0;
  while (!queue.empty()) {
    const PointId u = queue.front();
    queue.pop_front();
    ++visited;
    for (PointId v : graph_.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = true;
        parent_[v] = u;
        depth_[v] = depth_[u] + 1;
        queue.push_back(v);
      }
    }
  }
  if (visited != n) throw Error("not a tree: graph is disconnected");
}

std::size_t SimplicialTree::distance(PointId u, PointId v) const {
  std::size_t steps = 0;
  while (u != v) {
    if (depth_[u] >= depth_[v]) {
      u = parent_[u];
    } else {
      v = parent_[v];
    }
    ++steps;
  }
  return steps;
}

std::vector<PointId> tree_geodesic(const SimplicialTree& tree, PointId u, PointId v) {
  if (u >= tree.size() || v >= tree.size()) throw Error("geodesic endpoint outside tree");
  std::vector<PointId> front{u};
  std::vector<PointId> back{v};
  while (front.back() != back.back()) {
    if (tree.depth(front.back()) >= tree.depth(back.back())) {
      front.push_back(tree.parent(front.back()));
    } else {
      back.push_back(tree.parent(back.back()));
    }
  }
  back.pop_back();
  front.insert(front.end(), back.rbegin(), back.rend());
  return front;
}

bool Subtree::contains(PointId host) const {
  return std::binary_search(vertices.begin(), vertices.end(), host);
}

Subtree convex_closure(const SimplicialTree& tree, std::span<const PointId> subset) {
  if (subset.empty()) throw Error("convex closure of an empty set");
  for (PointId s : subset) {
    if (s >= tree.size()) throw Error("subset vertex outside tree");
  }
  // Union of geodesics to one anchor equals the union of all pairwise
  // geodesics in a tree.
  std::vector<bool> in(tree.size(), false);
  const PointId anchor = subset.front();
  for (PointId s : subset) {
    for (PointId v : tree_geodesic(tree, s, anchor)) {
      if (in[v]) continue;
      in[v] = true;
    }
  }
  Subtree out;
  for (PointId v = 0; v < tree.size(); ++v) {
    if (in[v]) out.vertices.push_back(v);
  }
  const auto root_it = std::lower_bound(out.vertices.begin(), out.vertices.end(), anchor);
  out.tree = SimplicialTree(tree.graph().induced(out.vertices),
                            static_cast<PointId>(root_it - out.vertices.begin()));
  return out;
}

ClosureDensityReport verify_closure_density(const SimplicialTree& tree,
                                            std::span<const PointId> subset, double c) {
  ClosureDensityReport report;
  report.bound = std::ceil(c / 2.0);
  const FiniteMetricSpace host = FiniteMetricSpace::from_graph(tree.graph());
  const FiniteMetricSpace induced = host.subspace(subset);
  if (coarse_components(induced, c).size() != 1) {
    report.diagnostic = "subset is not " + std::to_string(c) + "-coarse connected";
    return report;
  }
  report.precondition_ok = true;
  const Subtree closure = convex_closure(tree, subset);
  std::vector<PointId> local_subset;
  for (PointId s : subset) {
    local_subset.push_back(static_cast<PointId>(
        std::lower_bound(closure.vertices.begin(), closure.vertices.end(), s) -
        closure.vertices.begin()));
  }
  const FiniteMetricSpace closure_space = host.subspace(closure.vertices);
  const DensityCheck density = is_coarse_dense(local_subset, closure_space, report.bound);
  report.achieved = density.farthest_distance;
  report.dense = density.dense;
  if (density.witness) {
    Witness w = *density.witness;
    for (PointId& p : w.points) p = closure.vertices[p];
    report.witness = w;
  }
  return report;
}

std::vector<PointId> lex_geodesic(const Graph& graph, PointId x, PointId y) {
  const auto to_y = graph.distances_from(y);
  if (to_y[x] < 0) throw Error("no path between geodesic endpoints");
  std::vector<PointId> path{x};
  while (path.back() != y) {
    const PointId u = path.back();
    for (PointId v : graph.neighbors(u)) {  // neighbours are sorted
      if (to_y[v] == to_y[u] - 1) {
        path.push_back(v);
        break;
      }
    }
  }
  return path;
}

namespace {

std::vector<PointId> bfs_path(const Graph& graph, PointId from, PointId to,
                              const std::vector<bool>& blocked) {
  std::vector<long> parent(graph.vertex_count(), -1);
  std::deque<PointId> queue{from};
  parent[from] = static_cast<long>(from);
  while (!queue.empty()) {
    const PointId u = queue.front();
    queue.pop_front();
    if (u == to) break;
    for (PointId v : graph.neighbors(u)) {
      if (parent[v] < 0 && !blocked[v]) {
        parent[v] = static_cast<long>(u);
        queue.push_back(v);
      }
    }
  }
  std::vector<PointId> path;
  if (parent[to] < 0) return path;
  for (PointId v = to; v != from; v = static_cast<PointId>(parent[v])) path.push_back(v);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

BottleneckResult bottleneck_check(const Graph& graph, double C,
                                  std::span<const std::pair<PointId, PointId>> pairs) {
  if (!graph.is_connected()) throw Error("bottleneck check needs a connected graph");
  if (C < 0.0) throw Error("bottleneck constant must be nonnegative");
  const long radius = static_cast<long>(std::floor(C + kTolerance));
  BottleneckResult result;
  std::map<PointId, std::vector<long>> dist_cache;
  auto dist_from = [&](PointId v) -> const std::vector<long>& {
    auto it = dist_cache.find(v);
    if (it == dist_cache.end()) it = dist_cache.emplace(v, graph.distances_from(v)).first;
    return it->second;
  };
  for (const auto& [x, y] : pairs) {
    ++result.pairs_checked;
    if (x == y) continue;
    const std::vector<PointId> geodesic = lex_geodesic(graph, x, y);
    for (PointId z : geodesic) {
      const auto& dz = dist_from(z);
      if (dz[x] <= radius || dz[y] <= radius) continue;
      std::vector<bool> blocked(graph.vertex_count(), false);
      for (PointId v = 0; v < graph.vertex_count(); ++v) blocked[v] = dz[v] <= radius;
      std::vector<PointId> detour = bfs_path(graph, x, y, blocked);
      if (!detour.empty()) {
        result.pass = false;
        result.witness = BottleneckWitness{x, y, z, std::move(detour)};
        return result;
      }
    }
  }
  return result;
}

std::vector<std::pair<PointId, PointId>> all_pairs(std::size_t n) {
  std::vector<std::pair<PointId, PointId>> out;
  for (PointId i = 0; i < n; ++i) {
    for (PointId j = i + 1; j < n; ++j) out.emplace_back(i, j);
  }
  return out;
}

std::vector<std::pair<PointId, PointId>> sample_pairs(std::size_t n, std::size_t count,
                                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<PointId> pick(0, n == 0 ? 0 : n - 1);
  std::vector<std::pair<PointId, PointId>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(pick(rng), pick(rng));
  return out;
}

std::string to_string(EndVerdict verdict) {
  switch (verdict) {
    case EndVerdict::zero: return "0";
    case EndVerdict::one: return "1";
    case EndVerdict::two: return "2";
    case EndVerdict::three_or_more: return ">=3";
    case EndVerdict::unstable: return "unstable";
  }
  return "unstable";
}

namespace {

EndProfile end_profile_from(std::size_t n, const std::vector<double>& dist,
                            const std::function<std::vector<PointId>(PointId)>& neighbors,
                            double radius,
                            std::vector<double> ladder) {
  if (ladder.empty()) throw Error("end profile needs a non-empty ladder");
  for (double b : ladder) {
    if (b < 0.0 || b > radius / 2.0 + kTolerance) {
      throw Error("ladder value " + std::to_string(b) + " exceeds R/2 = " +
                  std::to_string(radius / 2.0));
    }
  }
  std::sort(ladder.begin(), ladder.end());
  EndProfile profile;
  profile.radius = radius;
  profile.ladder = ladder;
  for (double b : ladder) {
    std::vector<PointId> region;
    std::vector<bool> in_region(n, false);
    for (PointId v = 0; v < n; ++v) {
      if (dist[v] > b + kTolerance && dist[v] <= radius + kTolerance) {
        region.push_back(v);
        in_region[v] = true;
      }
    }
    std::vector<bool> seen(n, false);
    std::size_t escaping = 0;
    for (PointId s : region) {
      if (seen[s]) continue;
      bool reaches_sphere = false;
      std::deque<PointId> queue{s};
      seen[s] = true;
      while (!queue.empty()) {
        const PointId u = queue.front();
        queue.pop_front();
        if (dist[u] >= radius - kTolerance) reaches_sphere = true;
        for (PointId v : neighbors(u)) {
          if (in_region[v] && !seen[v]) {
            seen[v] = true;
            queue.push_back(v);
          }
        }
      }
      if (reaches_sphere) ++escaping;
    }
    profile.counts.push_back(escaping);
  }
  // Stable when the capped count is constant over the upper half of the ladder.
  auto category = [](std::size_t c) { return std::min<std::size_t>(c, 3); };
  const std::size_t first = profile.counts.size() / 2;
  const std::size_t settled = category(profile.counts.back());
  bool stable = true;
  for (std::size_t i = first; i < profile.counts.size(); ++i) {
    stable = stable && category(profile.counts[i]) == settled;
  }
  if (!stable) {
    profile.verdict = EndVerdict::unstable;
  } else {
    constexpr EndVerdict by_count[] = {EndVerdict::zero, EndVerdict::one, EndVerdict::two,
                                       EndVerdict::three_or_more};
    profile.verdict = by_count[settled];
  }
  return profile;
}

}  // namespace

EndProfile end_profile(const Graph& graph, PointId x0, double radius, std::vector<double> ladder) {
  if (x0 >= graph.vertex_count()) throw Error("end profile basepoint outside graph");
  const auto bfs = graph.distances_from(x0);
  std::vector<double> dist(bfs.size());
  for (std::size_t v = 0; v < bfs.size(); ++v) {
    dist[v] = bfs[v] < 0 ? std::numeric_limits<double>::infinity() : static_cast<double>(bfs[v]);
  }
  return end_profile_from(
      graph.vertex_count(), dist, [&](PointId u) { return graph.neighbors(u); }, radius,
      std::move(ladder));
}

EndProfile end_profile(const FiniteMetricSpace& space, PointId x0, double radius,
                       std::vector<double> ladder) {
  if (x0 >= space.size()) throw Error("end profile basepoint outside space");
  std::vector<double> dist(space.size());
  for (PointId v = 0; v < space.size(); ++v) dist[v] = space.distance(x0, v);
  return end_profile_from(
      space.size(), dist,
      [&](PointId u) {
        std::vector<PointId> out;
        for (PointId v = 0; v < space.size(); ++v) {
          if (v != u && space.distance(u, v) <= 1.0 + kTolerance) out.push_back(v);
        }
        return out;
      },
      radius, std::move(ladder));
}

SubtreeFromQi subtree_from_qi(const Graph& graph, const SimplicialTree& tree,
                              std::span<const PointId> map, double K, double eps) {
  if (map.size() != graph.vertex_count()) throw Error("map must cover every graph vertex");
  for (PointId t : map) {
    if (t >= tree.size()) throw Error("map sends a vertex outside the tree");
  }
  const auto graph_dist = graph.all_distances();
  for (const auto& row : graph_dist) {
    for (long d : row) {
      if (d < 0) throw Error("graph must be connected");
    }
  }
  const QieCheck check = check_qie(
      graph.vertex_count(),
      [&](PointId a, PointId b) { return static_cast<double>(graph_dist[a][b]); },
      [&](PointId a, PointId b) { return static_cast<double>(tree.distance(map[a], map[b])); },
      QieConstants{K, eps, 0.0});
  if (!check.ok()) {
    throw Error("map is not a (" + std::to_string(K) + ", " + std::to_string(eps) +
                ") quasi-isometric embedding: " + to_string(check.witness->kind) + " at (" +
                std::to_string(check.witness->points[0]) + ", " +
                std::to_string(check.witness->points[1]) + ")");
  }

  SubtreeFromQi out;
  std::vector<PointId> image(map.begin(), map.end());
  out.subtree = convex_closure(tree, image);
  out.ball_radius = 2.0 * K * K + 3.0 * K * eps;
  const long ball_radius = static_cast<long>(std::floor(out.ball_radius + kTolerance));

  std::vector<std::size_t> ball_size(graph.vertex_count(), 0);
  for (PointId p = 0; p < graph.vertex_count(); ++p) {
    ball_size[p] = static_cast<std::size_t>(std::count_if(
        graph_dist[p].begin(), graph_dist[p].end(), [&](long d) { return d <= ball_radius; }));
  }
  for (PointId local = 0; local < out.subtree.vertices.size(); ++local) {
    const PointId s = out.subtree.vertices[local];
    const std::size_t valence = out.subtree.tree.valence(local);
    bool certified = false;
    for (PointId p = 0; p < graph.vertex_count() && !certified; ++p) {
      const double d = static_cast<double>(tree.distance(map[p], s));
      if (d <= K + eps + kTolerance && ball_size[p] >= valence) {
        out.certificates.push_back(ValenceCertificate{s, valence, p, d, ball_size[p]});
        certified = true;
      }
    }
    if (!certified) {
      throw Error("no valence certificate for subtree vertex " + std::to_string(s) +
                  "; the map is not a valid quasi-isometry onto its image");
    }
  }
  return out;
}

ApproximatingTree approximating_tree(const Graph& graph, PointId x0, double C,
                                     std::span<const std::pair<PointId, PointId>> pairs) {
  if (x0 >= graph.vertex_count()) throw Error("basepoint outside graph");
  if (!graph.is_connected()) throw Error("approximating tree needs a connected graph");
  std::vector<std::pair<PointId, PointId>> default_pairs;
  if (pairs.empty()) {
    for (PointId v = 0; v < graph.vertex_count(); ++v) default_pairs.emplace_back(x0, v);
    const auto extra = sample_pairs(graph.vertex_count(), 200, 0);
    default_pairs.insert(default_pairs.end(), extra.begin(), extra.end());
    pairs = default_pairs;
  }
  const BottleneckResult bottleneck = bottleneck_check(graph, C, pairs);
  if (!bottleneck.pass) {
    throw Error("bottleneck criterion fails at C = " + std::to_string(C) + " (x=" +
                std::to_string(bottleneck.witness->x) + ", y=" +
                std::to_string(bottleneck.witness->y) + ", z=" +
                std::to_string(bottleneck.witness->z) + "); refusing to build a tree");
  }

  const std::size_t n = graph.vertex_count();
  const auto dist = graph.distances_from(x0);
  const auto width = static_cast<long>(std::floor(2.0 * C + 1.0 + kTolerance));
  const double scale = std::max(3.0 * C, 1.0);
  std::vector<std::size_t> shell(n);
  std::size_t shells = 0;
  for (PointId v = 0; v < n; ++v) {
    shell[v] = static_cast<std::size_t>(dist[v] / width);
    shells = std::max(shells, shell[v] + 1);
  }
  const auto all_dist = graph.all_distances();

  ApproximatingTree out;
  out.vertex_map.assign(n, 0);
  std::vector<std::vector<std::size_t>> nodes_in_shell(shells);
  for (std::size_t k = 0; k < shells; ++k) {
    std::vector<PointId> members;
    for (PointId v = 0; v < n; ++v) {
      if (shell[v] == k) members.push_back(v);
    }
    const FiniteMetricSpace shell_space = FiniteMetricSpace::from_function(
        members.size(), [&](PointId a, PointId b) {
          return static_cast<double>(all_dist[members[a]][members[b]]);
        });
    for (const auto& block : coarse_components(shell_space, scale)) {
      std::vector<PointId> vertices;
      for (PointId local : block) vertices.push_back(members[local]);
      const std::size_t id = out.nodes.size();
      for (PointId v : vertices) out.vertex_map[v] = id;
      nodes_in_shell[k].push_back(id);
      out.nodes.emplace_back(k, std::move(vertices));
    }
  }

  Graph tree_graph(out.nodes.size());
  for (std::size_t id = 0; id < out.nodes.size(); ++id) {
    const auto& [k, members] = out.nodes[id];
    if (k == 0) continue;
    std::set<std::size_t> parents;
    for (PointId v : members) {
      for (PointId u : graph.neighbors(v)) {
        if (shell[u] + 1 == k) parents.insert(out.vertex_map[u]);
      }
    }
    if (parents.empty()) throw Error("shell component without a parent; graph is disconnected");
    if (parents.size() > 1) {
      out.warnings.push_back("node " + std::to_string(id) + " adjoins " +
                             std::to_string(parents.size()) +
                             " components of the previous shell; attached to the lowest id");
    }
    tree_graph.add_edge(*parents.begin(), id);
  }
  if (out.nodes.size() > 1 && nodes_in_shell[0].size() != 1) {
    throw Error("innermost shell is not a single component");
  }
  out.tree = SimplicialTree(std::move(tree_graph), out.vertex_map[x0]);

  // Nodes are shells of width 2C+1, so that is the multiplicative scale;
  // eps absorbs the spread inside a node.
  const double K = 2.0 * C + 1.0;
  double eps = 0.0;
  for (PointId a = 0; a < n; ++a) {
    for (PointId b = a + 1; b < n; ++b) {
      const double dx = static_cast<double>(all_dist[a][b]);
      const double dt =
          static_cast<double>(out.tree.distance(out.vertex_map[a], out.vertex_map[b]));
      eps = std::max({eps, dt - K * dx, dx / K - dt});
    }
  }
  out.fitted = QieConstants{K, eps, 0.0};
  return out;
}

std::vector<PointId> prune_leaves(const Graph& graph) {
  const std::size_t n = graph.vertex_count();
  std::vector<std::size_t> degree(n);
  std::vector<bool> removed(n, false);
  std::deque<PointId> queue;
  for (PointId v = 0; v < n; ++v) {
    degree[v] = graph.neighbors(v).size();
    if (degree[v] <= 1) queue.push_back(v);
  }
  std::size_t alive = n;
  while (!queue.empty() && alive > 1) {
    const PointId v = queue.front();
    queue.pop_front();
    if (removed[v]) continue;
    removed[v] = true;
    --alive;
    for (PointId u : graph.neighbors(v)) {
      if (!removed[u] && --degree[u] == 1) queue.push_back(u);
    }
  }
  std::vector<PointId> out;
  for (PointId v = 0; v < n; ++v) {
    if (!removed[v]) out.push_back(v);
  }
  return out;
}

}  // namespace qtreekit
