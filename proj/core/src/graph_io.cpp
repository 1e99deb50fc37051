#include "polymc/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "polymc/errors.hpp"

namespace polymc {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line.substr(0, line.find('#')));
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  return tokens;
}

std::uint64_t parse_uint(const std::string& tok, std::size_t line) {
  std::uint64_t value = 0;
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ParseError(line, "expected an integer, got '" + tok + "'");
  return value;
}

}  // namespace

HostGraph parse_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_tokens = [&](std::vector<std::string>& tokens) {
    while (std::getline(in, line)) {
      ++lineno;
      tokens = tokenize(line);
      if (!tokens.empty()) return true;
    }
    return false;
  };

  std::vector<std::string> tokens;
  if (!next_tokens(tokens)) throw ParseError(lineno, "missing header");
  if (tokens.size() < 2 || tokens.size() > 3) throw ParseError(lineno, "header must be 'n m [bipartite]'");
  const std::uint64_t n = parse_uint(tokens[0], lineno);
  const std::uint64_t m = parse_uint(tokens[1], lineno);
  const bool bipartite = tokens.size() == 3;
  if (bipartite && tokens[2] != "bipartite") throw ParseError(lineno, "unknown header flag '" + tokens[2] + "'");
  if (n == 0) throw ParseError(lineno, "vertex count must be positive");

  std::optional<std::vector<std::uint8_t>> sides;
  if (bipartite) {
    if (!next_tokens(tokens)) throw ParseError(lineno, "missing part-0 line");
    sides.emplace(n, 1);
    for (const auto& tok : tokens) {
      const auto v = parse_uint(tok, lineno);
      if (v >= n) throw ParseError(lineno, "part-0 vertex " + tok + " out of range");
      (*sides)[v] = 0;
    }
  }

  std::vector<Edge> edges;
  edges.reserve(m);
  while (next_tokens(tokens)) {
    if (tokens.size() != 2) throw ParseError(lineno, "edge line must be 'u v'");
    if (edges.size() == m) throw ParseError(lineno, "more than " + std::to_string(m) + " edges");
    const auto u = parse_uint(tokens[0], lineno);
    const auto v = parse_uint(tokens[1], lineno);
    if (u >= n || v >= n) throw ParseError(lineno, "edge endpoint out of range");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (edges.size() != m) {
    throw ParseError(lineno, "expected " + std::to_string(m) + " edges, found " +
                                 std::to_string(edges.size()));
  }
  return HostGraph::from_edges(n, edges, std::move(sides));
}

HostGraph parse_graph_string(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

HostGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open graph file " + path.string());
  return parse_graph(in);
}

void write_graph(std::ostream& out, const HostGraph& g) {
  out << g.size() << ' ' << g.num_edges();
  if (g.is_bipartite()) {
    out << " bipartite\n";
    const auto& part0 = g.part(0);
    for (std::size_t j = 0; j < part0.size(); ++j) out << (j ? " " : "") << part0[j];
  }
  out << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

std::string graph_to_string(const HostGraph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

void save_graph(const std::filesystem::path& path, const HostGraph& g) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write graph file " + path.string());
  write_graph(out, g);
}

}  // namespace polymc
