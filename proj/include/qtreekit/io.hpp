#pragma once

// Line-oriented text formats: graphs ("g n", "e u v") and generator maps
// for graph actions ("gens k", "m gen u v"). '#' starts a comment.

#include <iosfwd>
#include <string>
#include <vector>

#include "qtreekit/metric.hpp"

namespace qtreekit {

Graph parse_graph(std::istream& in, const std::string& source = "<input>");
Graph ingest_graph(const std::string& path);
void emit_graph(const Graph& graph, std::ostream& out);

// perms[i][v] is the image of v under generator i + 1; unlisted vertices
// are fixed. Each map must be a bijection on its listed vertices and an
// automorphism of `graph`.
using GeneratorMaps = std::vector<std::vector<PointId>>;

GeneratorMaps parse_generator_maps(std::istream& in, const Graph& graph,
                                   const std::string& source = "<input>");
GeneratorMaps ingest_generator_maps(const std::string& path, const Graph& graph);

}  // namespace qtreekit
