#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "qtreekit/corpus.hpp"
#include "qtreekit/io.hpp"

using namespace qtreekit;

namespace {

std::string error_of(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_graph(in, "test");
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

std::string gens_error(const Graph& g, const std::string& text) {
  std::istringstream in(text);
  try {
    parse_generator_maps(in, g, "gens");
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse a path") {
  std::istringstream in("g 3\ne 0 1\ne 1 2\n");
  const Graph g = parse_graph(in);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edges() == std::vector<std::pair<PointId, PointId>>{{0, 1}, {1, 2}});
}

TEST_CASE("comments and blank lines") {
  std::istringstream in("# a triangle\n\ng 3   # three\ne 0 1\ne 1 2\ne 2 0\n");
  CHECK(parse_graph(in).edge_count() == 3);
}

TEST_CASE("graph format errors carry line numbers") {
  CHECK(error_of("g 3\ne 0 1\ne 0 0\n").find("test:3") == 0);
  CHECK(error_of("g 3\ne 0 0\n").find("self-loop") != std::string::npos);
  CHECK(error_of("g 3\ne 0 1\ne 1 0\n").find("test:3") == 0);
  CHECK(error_of("e 0 1\n").find("test:1") == 0);
  CHECK(error_of("g 2\ne 0 5\n").find("test:2") == 0);
  CHECK(error_of("g 2\nx 0 1\n").find("test:2") == 0);
  CHECK(error_of("g 2\ne 0\n").find("test:2") == 0);
  CHECK(error_of("g two\n").find("test:1") == 0);
  CHECK(error_of("g 2\ng 3\n").find("test:2") == 0);
  CHECK(error_of("").find("test") == 0);
}

TEST_CASE("emit and ingest round trip") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    Graph g = n > 1 ? oracle::random_tree(n, rng) : Graph(1);
    for (int k = 0; k < 10 && n > 2; ++k) {
      const PointId u = rng() % n;
      const PointId v = rng() % n;
      if (u != v && !g.has_edge(u, v)) g.add_edge(u, v);
    }
    std::stringstream buf;
    emit_graph(g, buf);
    const Graph back = parse_graph(buf);
    CHECK(back.vertex_count() == g.vertex_count());
    CHECK(back.edges() == g.edges());
  }
}

TEST_CASE("bundled graph files") {
  const Graph tree = ingest_graph("data/tree31.txt");
  CHECK(tree.vertex_count() == 31);
  CHECK_NOTHROW(SimplicialTree(tree));
  CHECK(ingest_graph("data/ladder8.txt").vertex_count() == 16);
  CHECK_THROWS_AS(ingest_graph("data/missing.txt"), Error);
}

TEST_CASE("generator maps") {
  const Graph cycle = ingest_graph("data/cycle6.txt");
  const GeneratorMaps maps = ingest_generator_maps("data/cycle6.gens", cycle);
  REQUIRE(maps.size() == 2);
  for (const auto& perm : maps) {
    std::vector<PointId> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (PointId v = 0; v < sorted.size(); ++v) CHECK(sorted[v] == v);
  }
  const QuasiActionSpec spec = graph_action(cycle, maps);
  CHECK(classify_trichotomy(spec, spec.basepoint, 4, 6).verdict == Trichotomy::point);
}

TEST_CASE("generator map validation") {
  Graph path(3);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  CHECK(gens_error(path, "gens 1\nm 1 0 2\nm 1 2 0\n").empty());
  // not a bijection
  CHECK(gens_error(path, "gens 1\nm 1 0 2\nm 1 1 2\n").find("gens:") == 0);
  // not an automorphism
  CHECK_FALSE(gens_error(path, "gens 1\nm 1 0 1\nm 1 1 0\n").empty());
  // generator out of range
  CHECK(gens_error(path, "gens 1\nm 2 0 1\n").find("gens:2") == 0);
  CHECK(gens_error(path, "m 1 0 1\n").find("gens:1") == 0);
  // a vertex mapped twice
  CHECK(gens_error(path, "gens 1\nm 1 0 2\nm 1 0 1\n").find("gens:3") == 0);
}

TEST_CASE("named corpus actions") {
  for (const std::string& name : named_actions()) {
    ActionArgs args;
    args.name = name;
    args.graph_path = "data/cycle6.txt";
    args.gens_path = "data/cycle6.gens";
    args.base = "f2-on-t4";
    const QuasiActionSpec spec = make_named_action(args);
    CHECK(spec.rank >= 1);
    CHECK(spec.target->contains(spec.basepoint));
    CHECK_NOTHROW(apply(spec, Word::generator(1), spec.basepoint));
  }
  ActionArgs bad;
  bad.name = "nope";
  CHECK_THROWS_AS(make_named_action(bad), Error);
}

TEST_CASE("subgroup rewriting") {
  // x = a, y = b a B, z = b b with t = b
  CHECK(rewrite_in_subgroup(Word::parse("a"), 2) == Word::parse("a"));
  CHECK(rewrite_in_subgroup(Word::parse("baB"), 2) == Word::parse("b"));
  CHECK(rewrite_in_subgroup(Word::parse("bb"), 2) == Word::parse("c"));
  CHECK(rewrite_in_subgroup(Word::parse("abAB"), 2) == Word::parse("aB"));
  CHECK_THROWS_AS(rewrite_in_subgroup(Word::parse("b"), 2), Error);
}
