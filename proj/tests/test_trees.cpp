#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qtreekit/trees.hpp"

using namespace qtreekit;

namespace {

std::vector<PointId> random_subset(std::size_t n, std::mt19937_64& rng, std::size_t max_size) {
  std::vector<PointId> s;
  const std::size_t k = 1 + rng() % max_size;
  for (std::size_t i = 0; i < k; ++i) s.push_back(rng() % n);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

TEST_CASE("simplicial tree rejects cycles and disconnected graphs") {
  Graph cycle(3);
  cycle.add_edge(0, 1);
  cycle.add_edge(1, 2);
  cycle.add_edge(2, 0);
  CHECK_THROWS_AS(SimplicialTree{cycle}, Error);
  CHECK_THROWS_AS(SimplicialTree(Graph(2)), Error);
  CHECK_NOTHROW(SimplicialTree(oracle::path_graph(4)));
}

TEST_CASE("tree geodesics") {
  const SimplicialTree path(oracle::path_graph(6));
  CHECK(tree_geodesic(path, 2, 2) == std::vector<PointId>{2});
  CHECK(tree_geodesic(path, 0, 5) == std::vector<PointId>{0, 1, 2, 3, 4, 5});
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng() % 60;
    const Graph g = oracle::random_tree(n, rng);
    const SimplicialTree t(g);
    const PointId u = rng() % n;
    const PointId v = rng() % n;
    const auto path_uv = tree_geodesic(t, u, v);
    const auto d = oracle::bfs(g, u);
    CHECK(static_cast<long>(path_uv.size()) - 1 == d[v]);
    CHECK(t.distance(u, v) == static_cast<std::size_t>(d[v]));
    for (std::size_t i = 1; i < path_uv.size(); ++i) CHECK(g.has_edge(path_uv[i - 1], path_uv[i]));
  }
}

TEST_CASE("convex closure examples") {
  const SimplicialTree path(oracle::path_graph(7));
  const std::vector<PointId> two{1, 5};
  CHECK(convex_closure(path, two).vertices == std::vector<PointId>{1, 2, 3, 4, 5});
  // tripod: centre 0, legs 1-2, 3-4, 5-6
  Graph tri(7);
  tri.add_edge(0, 1);
  tri.add_edge(1, 2);
  tri.add_edge(0, 3);
  tri.add_edge(3, 4);
  tri.add_edge(0, 5);
  tri.add_edge(5, 6);
  const SimplicialTree tripod(tri);
  const std::vector<PointId> leaves{2, 4, 6};
  CHECK(convex_closure(tripod, leaves).vertices.size() == 7);
  CHECK_THROWS_AS(convex_closure(tripod, std::vector<PointId>{}), Error);
}

TEST_CASE("convex closure agrees with leaf pruning") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 80;
    const Graph g = oracle::random_tree(n, rng);
    const SimplicialTree t(g);
    const auto s = random_subset(n, rng, 6);
    const Subtree closure = convex_closure(t, s);
    CHECK(closure.vertices == oracle::closure_by_pruning(g, s));
    CHECK(closure.tree.size() == closure.vertices.size());
    for (PointId p : s) CHECK(closure.contains(p));
  }
}

TEST_CASE("convex closure is idempotent and monotone") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = oracle::random_tree(50, rng);
    const SimplicialTree t(g);
    auto s = random_subset(50, rng, 5);
    const Subtree c1 = convex_closure(t, s);
    CHECK(convex_closure(t, c1.vertices).vertices == c1.vertices);
    s.push_back(rng() % 50);
    const Subtree c2 = convex_closure(t, s);
    for (PointId v : c1.vertices) CHECK(c2.contains(v));
  }
}

TEST_CASE("closure density examples") {
  const SimplicialTree path(oracle::path_graph(9));
  const std::vector<PointId> all{0, 1, 2, 3, 4, 5, 6, 7, 8};
  const ClosureDensityReport whole = verify_closure_density(path, all, 1.0);
  CHECK(whole.precondition_ok);
  CHECK(whole.dense);
  CHECK(whole.achieved == 0.0);
  const std::vector<PointId> even{0, 2, 4, 6, 8};
  const ClosureDensityReport half = verify_closure_density(path, even, 2.0);
  CHECK(half.precondition_ok);
  CHECK(half.dense);
  CHECK(half.bound == 1.0);
  CHECK(half.achieved == 1.0);
  const std::vector<PointId> gap{0, 8};
  const ClosureDensityReport bad = verify_closure_density(path, gap, 2.0);
  CHECK_FALSE(bad.precondition_ok);
  CHECK_FALSE(bad.diagnostic.empty());
}

TEST_CASE("coarse connected subsets are ceil(c/2)-dense in their closure") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = oracle::random_tree(60, rng);
    const SimplicialTree t(g);
    const FiniteMetricSpace m = FiniteMetricSpace::from_graph(g);
    const double c = 1.0 + static_cast<double>(rng() % 4);
    const auto s = oracle::random_coarse_subset(m, c, 2 + rng() % 10, rng);
    const ClosureDensityReport rep = verify_closure_density(t, s, c);
    CHECK(rep.precondition_ok);
    CHECK(rep.dense);
    CHECK(rep.achieved <= std::ceil(c / 2));
    // converse direction: the inclusion into the closure is a QI, so the
    // closure at scale 1 makes S coarse connected at 2 * achieved + 1
    CHECK(coarse_components(m.subspace(s), 2 * rep.achieved + 1).size() == 1);
  }
}

TEST_CASE("lex geodesic picks the smallest sequence") {
  const Graph g = oracle::grid(3);
  CHECK(lex_geodesic(g, 0, 8) == std::vector<PointId>{0, 1, 2, 5, 8});
  CHECK(lex_geodesic(g, 4, 4) == std::vector<PointId>{4});
}

TEST_CASE("bottleneck on trees, ladders and grids") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph t = oracle::random_tree(30, rng);
    CHECK(bottleneck_check(t, 0.0, all_pairs(30)).pass);
  }
  for (std::size_t n = 3; n <= 8; ++n) {
    const Graph l = oracle::ladder(n);
    CHECK(bottleneck_check(l, 1.0, all_pairs(2 * n)).pass);
    const BottleneckResult zero = bottleneck_check(l, 0.0, all_pairs(2 * n));
    REQUIRE_FALSE(zero.pass);
    REQUIRE(zero.witness);
    const auto& w = *zero.witness;
    // the detour avoids z and runs x..y along graph edges
    CHECK(w.detour.front() == w.x);
    CHECK(w.detour.back() == w.y);
    for (std::size_t i = 1; i < w.detour.size(); ++i) CHECK(l.has_edge(w.detour[i - 1], w.detour[i]));
    for (PointId v : w.detour) CHECK(v != w.z);
  }
  for (std::size_t n = 8; n <= 20; n += 4) {
    const Graph g = oracle::grid(n);
    const auto pairs = sample_pairs(n * n, 200, 5);
    const BottleneckResult r = bottleneck_check(g, 1.0, pairs);
    REQUIRE_FALSE(r.pass);
    const auto d = oracle::bfs(g, r.witness->z);
    for (PointId v : r.witness->detour) CHECK(d[v] > 1);
  }
}

TEST_CASE("sampled pairs are deterministic") {
  CHECK(sample_pairs(40, 30, 9) == sample_pairs(40, 30, 9));
  CHECK(all_pairs(4).size() == 6);
}

TEST_CASE("end profiles") {
  const Graph t3 = oracle::regular_tree_ball(3, 12);
  const EndProfile bushy = end_profile(t3, 0, 12, {0, 1, 2, 3, 4});
  CHECK(bushy.verdict == EndVerdict::three_or_more);
  CHECK(bushy.counts == std::vector<std::size_t>{3, 6, 12, 24, 48});

  const Graph line = oracle::path_graph(41);
  const EndProfile two = end_profile(line, 20, 12, {0, 1, 2, 3, 4, 5, 6});
  CHECK(two.verdict == EndVerdict::two);
  for (std::size_t c : two.counts) CHECK(c == 2);

  Graph star(10);
  for (PointId a = 0; a < 3; ++a) {
    star.add_edge(0, 1 + 3 * a);
    star.add_edge(1 + 3 * a, 2 + 3 * a);
    star.add_edge(2 + 3 * a, 3 + 3 * a);
  }
  const EndProfile none = end_profile(star, 0, 8, {0, 1, 2});
  CHECK(none.verdict == EndVerdict::zero);

  CHECK_THROWS_AS(end_profile(line, 20, 4, {0, 3}), Error);
  const std::vector<double> xs{0, 1, 2, 3, 4, 5, 6, 7, 8};
  const EndProfile metric = end_profile(FiniteMetricSpace::on_line(xs), 4, 4, {0, 1, 2});
  CHECK(metric.verdict == EndVerdict::two);
}

TEST_CASE("end count at b = 0 equals the root valence") {
  for (std::size_t d = 2; d <= 5; ++d) {
    const Graph t = oracle::regular_tree_ball(d, 6);
    CHECK(end_profile(t, 0, 6, {0}).counts.front() == d);
  }
}

TEST_CASE("subtree from the identity map") {
  std::mt19937_64 rng(26);
  const Graph g = oracle::random_tree(30, rng);
  const SimplicialTree t(g);
  std::vector<PointId> id(30);
  std::iota(id.begin(), id.end(), PointId{0});
  const SubtreeFromQi s = subtree_from_qi(g, t, id, 1.0, 0.0);
  CHECK(s.subtree.vertices == id);
  CHECK(s.ball_radius == 2.0);
  for (const auto& c : s.certificates) {
    CHECK(c.image_distance <= 1.0);
    CHECK(c.ball_size >= c.valence);
  }
}

TEST_CASE("subtree from a collapse map certifies valence 4") {
  // T4 ball with each edge doubled into a digon and the digon subdivided:
  // the extra midpoint vertices collapse onto the lower endpoint.
  const Graph t4 = oracle::regular_tree_ball(4, 3);
  const std::size_t n = t4.vertex_count();
  const auto edges = t4.edges();
  Graph g(n + 2 * edges.size());
  std::vector<PointId> map(g.vertex_count());
  std::iota(map.begin(), map.begin() + static_cast<long>(n), PointId{0});
  PointId next = n;
  for (const auto& [u, v] : edges) {
    for (int copy = 0; copy < 2; ++copy) {
      g.add_edge(u, next);
      g.add_edge(next, v);
      map[next] = u;
      ++next;
    }
  }
  const SimplicialTree tree(t4);
  const double K = 2.0;
  const double eps = 1.0;
  const SubtreeFromQi s = subtree_from_qi(g, tree, map, K, eps);
  CHECK(s.ball_radius == 2 * K * K + 3 * K * eps);
  CHECK(s.subtree.vertices.size() == n);
  std::size_t max_valence = 0;
  for (const auto& c : s.certificates) {
    CHECK(c.image_distance <= K + eps);
    CHECK(c.ball_size >= c.valence);
    max_valence = std::max(max_valence, c.valence);
  }
  CHECK(max_valence == 4);
}

TEST_CASE("subtree from qi rejects a map that is not a qie") {
  const Graph g = oracle::path_graph(10);
  const SimplicialTree t(oracle::path_graph(10));
  std::vector<PointId> collapse(10, 0);
  CHECK_THROWS_AS(subtree_from_qi(g, t, collapse, 1.0, 0.0), Error);
}

TEST_CASE("bounded valence graphs give uniformly bounded subtree valence") {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph tree_graph = oracle::random_tree(40, rng);
    const SimplicialTree t(tree_graph);
    // the graph is the tree plus chords between vertices at distance 2
    Graph g = tree_graph;
    const FiniteMetricSpace m = FiniteMetricSpace::from_graph(tree_graph);
    for (int k = 0; k < 5; ++k) {
      const PointId u = rng() % 40;
      for (PointId v = 0; v < 40; ++v) {
        if (m.distance(u, v) == 2 && !g.has_edge(u, v)) {
          g.add_edge(u, v);
          break;
        }
      }
    }
    std::vector<PointId> id(40);
    std::iota(id.begin(), id.end(), PointId{0});
    const SubtreeFromQi s = subtree_from_qi(g, t, id, 2.0, 0.0);
    std::size_t max_ball = 0;
    for (const auto& c : s.certificates) max_ball = std::max(max_ball, c.ball_size);
    for (const auto& c : s.certificates) CHECK(c.valence <= max_ball);
  }
}

TEST_CASE("approximating tree of a tree ball") {
  const Graph t = oracle::regular_tree_ball(3, 5);
  const ApproximatingTree a = approximating_tree(t, 0, 0.0);
  CHECK(a.tree.size() == t.vertex_count());
  CHECK(a.fitted.K <= 1.0 + 1e-9);
  CHECK(a.warnings.empty());
  CHECK(bottleneck_check(a.tree.graph(), 0.0, all_pairs(a.tree.size())).pass);
  const ApproximatingTree coarse = approximating_tree(t, 0, 1.0);
  CHECK(coarse.fitted.K <= 3.0 + 1e-9);
  const FiniteMetricSpace m = FiniteMetricSpace::from_graph(t);
  const FiniteMetricSpace tm = FiniteMetricSpace::from_graph(coarse.tree.graph());
  CHECK(verify_qie(coarse.vertex_map, m, tm, coarse.fitted).ok());
  CHECK(bottleneck_check(coarse.tree.graph(), 0.0, all_pairs(coarse.tree.size())).pass);
}

TEST_CASE("approximating tree of a ladder is a path") {
  const Graph l = oracle::ladder(10);
  const ApproximatingTree a = approximating_tree(l, 0, 1.0, all_pairs(20));
  for (PointId v = 0; v < a.tree.size(); ++v) CHECK(a.tree.valence(v) <= 2);
  CHECK(a.fitted.K >= 1.0);
  CHECK(std::isfinite(a.fitted.eps));
}

TEST_CASE("approximating tree refuses a grid") {
  CHECK_THROWS_AS(approximating_tree(oracle::grid(8), 0, 1.0), Error);
}

TEST_CASE("bushy bottleneck balls give bushy approximating trees") {
  const Graph t = oracle::regular_tree_ball(3, 8);
  REQUIRE(bottleneck_check(t, 1.0, sample_pairs(t.vertex_count(), 200, 3)).pass);
  REQUIRE(end_profile(t, 0, 8, {0, 1, 2}).verdict == EndVerdict::three_or_more);
  const ApproximatingTree a = approximating_tree(t, 0, 1.0);
  const PointId root = a.vertex_map[0];
  const EndProfile p = end_profile(a.tree.graph(), root, 2, {0, 1});
  CHECK(p.verdict == EndVerdict::three_or_more);
}

TEST_CASE("prune leaves") {
  CHECK(prune_leaves(oracle::path_graph(5)).size() == 1);
  Graph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 0);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  CHECK(prune_leaves(g) == std::vector<PointId>{0, 1, 2});
}
