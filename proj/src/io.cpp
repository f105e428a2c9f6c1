#include "qtreekit/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace qtreekit {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    std::istringstream words(text);
    Line line{number, {}};
    for (std::string w; words >> w;) line.tokens.push_back(w);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw Error(source + ":" + std::to_string(line) + ": " + what);
}

std::size_t parse_index(const std::string& source, std::size_t line, const std::string& token) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(token, &used);
  } catch (const std::exception&) {
    fail(source, line, "expected a non-negative integer, got '" + token + "'");
  }
  if (used != token.size() || token.front() == '-' || token.front() == '+') {
    fail(source, line, "expected a non-negative integer, got '" + token + "'");
  }
  return static_cast<std::size_t>(v);
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

}  // namespace

Graph parse_graph(std::istream& in, const std::string& source) {
  const std::vector<Line> lines = tokenize(in);
  if (lines.empty()) throw Error(source + ": empty graph file");
  const Line& header = lines.front();
  if (header.tokens.size() != 2 || header.tokens[0] != "g") {
    fail(source, header.number, "expected header 'g <n>'");
  }
  Graph graph(parse_index(source, header.number, header.tokens[1]));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.tokens.size() != 3 || line.tokens[0] != "e") {
      fail(source, line.number, "expected 'e <u> <v>'");
    }
    const std::size_t u = parse_index(source, line.number, line.tokens[1]);
    const std::size_t v = parse_index(source, line.number, line.tokens[2]);
    try {
      graph.add_edge(u, v);
    } catch (const Error& e) {
      fail(source, line.number, e.what());
    }
  }
  return graph;
}

Graph ingest_graph(const std::string& path) {
  std::ifstream in = open(path);
  return parse_graph(in, path);
}

void emit_graph(const Graph& graph, std::ostream& out) {
  out << "g " << graph.vertex_count() << '\n';
  for (const auto& [u, v] : graph.edges()) out << "e " << u << ' ' << v << '\n';
}

GeneratorMaps parse_generator_maps(std::istream& in, const Graph& graph, const std::string& source) {
  const std::vector<Line> lines = tokenize(in);
  if (lines.empty()) throw Error(source + ": empty generator-map file");
  const Line& header = lines.front();
  if (header.tokens.size() != 2 || header.tokens[0] != "gens") {
    fail(source, header.number, "expected header 'gens <k>'");
  }
  const std::size_t k = parse_index(source, header.number, header.tokens[1]);
  if (k == 0) fail(source, header.number, "need at least one generator");
  const std::size_t n = graph.vertex_count();
  std::vector<std::vector<long>> image(k, std::vector<long>(n, -1));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.tokens.size() != 4 || line.tokens[0] != "m") {
      fail(source, line.number, "expected 'm <gen> <u> <v>'");
    }
    const std::size_t gen = parse_index(source, line.number, line.tokens[1]);
    const std::size_t u = parse_index(source, line.number, line.tokens[2]);
    const std::size_t v = parse_index(source, line.number, line.tokens[3]);
    if (gen < 1 || gen > k) fail(source, line.number, "generator out of range 1.." + std::to_string(k));
    if (u >= n || v >= n) fail(source, line.number, "vertex out of range");
    if (image[gen - 1][u] != -1) fail(source, line.number, "vertex " + std::to_string(u) + " mapped twice");
    image[gen - 1][u] = static_cast<long>(v);
  }
  GeneratorMaps maps(k, std::vector<PointId>(n));
  for (std::size_t g = 0; g < k; ++g) {
    std::set<long> domain;
    std::set<long> range;
    for (std::size_t v = 0; v < n; ++v) {
      if (image[g][v] == -1) continue;
      domain.insert(static_cast<long>(v));
      if (!range.insert(image[g][v]).second) {
        throw Error(source + ": generator " + std::to_string(g + 1) + " is not injective");
      }
    }
    if (domain != range) {
      throw Error(source + ": generator " + std::to_string(g + 1) +
                  " is not a bijection on its listed vertices");
    }
    for (std::size_t v = 0; v < n; ++v) {
      maps[g][v] = image[g][v] == -1 ? v : static_cast<PointId>(image[g][v]);
    }
    for (const auto& [u, v] : graph.edges()) {
      if (!graph.has_edge(maps[g][u], maps[g][v])) {
        throw Error(source + ": generator " + std::to_string(g + 1) + " does not preserve edge " +
                    std::to_string(u) + "-" + std::to_string(v));
      }
    }
  }
  return maps;
}

GeneratorMaps ingest_generator_maps(const std::string& path, const Graph& graph) {
  std::ifstream in = open(path);
  return parse_generator_maps(in, graph, path);
}

}  // namespace qtreekit
