#include "polymc/host_graph.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "polymc/errors.hpp"
#include "polymc/rng.hpp"

namespace polymc {

namespace {

void validate_sides(std::size_t n, const std::vector<std::uint8_t>& sides) {
  if (sides.size() != n) {
    throw ValidationError("bipartition has " + std::to_string(sides.size()) +
                          " labels for " + std::to_string(n) + " vertices");
  }
  for (auto s : sides) {
    if (s > 1) throw ValidationError("bipartition labels must be 0 or 1");
  }
}

}  // namespace

HostGraph HostGraph::from_edges(std::size_t n, const std::vector<Edge>& edges,
                                std::optional<std::vector<std::uint8_t>> sides) {
  if (n == 0) throw ValidationError("graph must have at least one vertex");
  std::vector<std::vector<Vertex>> adj(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw ValidationError("edge " + std::to_string(u) + " " + std::to_string(v) +
                            " out of range");
    }
    if (u == v) throw ValidationError("self-loop at vertex " + std::to_string(u));
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return from_adjacency(adj, std::move(sides));
}

HostGraph HostGraph::from_adjacency(const std::vector<std::vector<Vertex>>& adjacency,
                                    std::optional<std::vector<std::uint8_t>> sides) {
  const std::size_t n = adjacency.size();
  if (n == 0) throw ValidationError("graph must have at least one vertex");
  if (n > std::numeric_limits<Vertex>::max()) throw ValidationError("too many vertices");

  HostGraph g;
  g.offsets_.assign(n + 1, 0);
  std::vector<std::vector<Vertex>> sorted = adjacency;
  for (std::size_t v = 0; v < n; ++v) {
    auto& list = sorted[v];
    std::sort(list.begin(), list.end());
    for (std::size_t j = 0; j < list.size(); ++j) {
      if (list[j] >= n) {
        throw ValidationError("neighbour " + std::to_string(list[j]) + " of vertex " +
                              std::to_string(v) + " out of range");
      }
      if (list[j] == v) throw ValidationError("self-loop at vertex " + std::to_string(v));
      if (j > 0 && list[j] == list[j - 1]) {
        throw ValidationError("duplicate edge " + std::to_string(v) + " " +
                              std::to_string(list[j]));
      }
    }
    g.offsets_[v + 1] = g.offsets_[v] + list.size();
    g.max_degree_ = std::max(g.max_degree_, list.size());
  }
  g.adjacency_.reserve(g.offsets_[n]);
  for (const auto& list : sorted) g.adjacency_.insert(g.adjacency_.end(), list.begin(), list.end());

  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u : g.neighbors(v)) {
      if (!g.has_edge(u, v)) {
        throw ValidationError("asymmetric adjacency: " + std::to_string(v) + " lists " +
                              std::to_string(u) + " but not conversely");
      }
    }
  }

  if (sides) {
    validate_sides(n, *sides);
    for (Vertex v = 0; v < n; ++v) {
      for (Vertex u : g.neighbors(v)) {
        if ((*sides)[u] == (*sides)[v]) {
          throw ValidationError("edge " + std::to_string(v) + " " + std::to_string(u) +
                                " lies inside part " + std::to_string((*sides)[v]));
        }
      }
      g.parts_[(*sides)[v]].push_back(v);
    }
    g.sides_ = std::move(*sides);
  }
  return g;
}

bool HostGraph::has_edge(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> HostGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Vertex u = 0; u < size(); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

HostGraph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  std::vector<std::uint8_t> sides(n);
  for (std::size_t v = 0; v < n; ++v) sides[v] = static_cast<std::uint8_t>(v % 2);
  return HostGraph::from_edges(n, edges, n > 1 ? std::optional(sides) : std::nullopt);
}

HostGraph cycle_graph(std::size_t n, bool bipartite) {
  if (n < 3) throw ValidationError("cycle needs at least 3 vertices");
  if (bipartite && n % 2 != 0) throw ValidationError("odd cycle is not bipartite");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  std::optional<std::vector<std::uint8_t>> sides;
  if (bipartite) {
    sides.emplace(n);
    for (std::size_t v = 0; v < n; ++v) (*sides)[v] = static_cast<std::uint8_t>(v % 2);
  }
  return HostGraph::from_edges(n, edges, sides);
}

HostGraph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return HostGraph::from_edges(n, edges);
}

HostGraph complete_bipartite_graph(std::size_t a, std::size_t b) {
  std::vector<Edge> edges;
  std::vector<std::uint8_t> sides(a + b, 0);
  for (std::size_t v = a; v < a + b; ++v) sides[v] = 1;
  for (Vertex u = 0; u < a; ++u) {
    for (Vertex v = static_cast<Vertex>(a); v < a + b; ++v) edges.emplace_back(u, v);
  }
  return HostGraph::from_edges(a + b, edges, sides);
}

HostGraph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return HostGraph::from_edges(leaves + 1, edges);
}

HostGraph empty_graph(std::size_t n, std::optional<std::size_t> part0_size) {
  std::optional<std::vector<std::uint8_t>> sides;
  if (part0_size) {
    if (*part0_size > n) throw ValidationError("part size exceeds vertex count");
    sides.emplace(n, 1);
    std::fill_n(sides->begin(), *part0_size, 0);
  }
  return HostGraph::from_edges(n, {}, sides);
}

HostGraph power_graph(const HostGraph& g, int exponent) {
  if (exponent != 2) throw ValidationError("only the graph square is supported");
  const std::size_t n = g.size();
  std::vector<std::vector<Vertex>> adj(n);
  std::vector<std::size_t> stamp(n, std::numeric_limits<std::size_t>::max());
  for (Vertex v = 0; v < n; ++v) {
    stamp[v] = v;
    auto& out = adj[v];
    for (Vertex u : g.neighbors(v)) {
      if (stamp[u] != v) {
        stamp[u] = v;
        out.push_back(u);
      }
      for (Vertex w : g.neighbors(u)) {
        if (stamp[w] != v) {
          stamp[w] = v;
          out.push_back(w);
        }
      }
    }
  }
  return HostGraph::from_adjacency(adj);
}

std::vector<std::size_t> bfs_distances(const HostGraph& g, Vertex source) {
  std::vector<std::size_t> dist(g.size(), std::numeric_limits<std::size_t>::max());
  std::queue<Vertex> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    Vertex v = frontier.front();
    frontier.pop();
    for (Vertex u : g.neighbors(v)) {
      if (dist[u] == std::numeric_limits<std::size_t>::max()) {
        dist[u] = dist[v] + 1;
        frontier.push(u);
      }
    }
  }
  return dist;
}

bool is_connected_set(const HostGraph& g, std::span<const Vertex> vertices) {
  if (vertices.empty()) return false;
  std::vector<Vertex> members(vertices.begin(), vertices.end());
  std::sort(members.begin(), members.end());
  auto contains = [&](Vertex v) { return std::binary_search(members.begin(), members.end(), v); };
  std::vector<Vertex> seen{members.front()};
  std::vector<Vertex> stack{members.front()};
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex u : g.neighbors(v)) {
      if (contains(u) && std::find(seen.begin(), seen.end(), u) == seen.end()) {
        seen.push_back(u);
        stack.push_back(u);
      }
    }
  }
  return seen.size() == members.size();
}

namespace {

using Mask = std::uint32_t;

std::vector<Mask> adjacency_masks(const HostGraph& g) {
  std::vector<Mask> masks(g.size(), 0);
  for (Vertex v = 0; v < g.size(); ++v) {
    for (Vertex u : g.neighbors(v)) masks[v] |= Mask{1} << u;
  }
  return masks;
}

std::vector<Vertex> mask_vertices(Mask s) {
  std::vector<Vertex> out;
  while (s != 0) {
    out.push_back(static_cast<Vertex>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

}  // namespace

ExpansionReport check_edge_expansion(const HostGraph& g, double alpha,
                                     std::size_t exact_cutoff) {
  if (!(alpha > 0)) throw ValidationError("alpha must be positive");
  ExpansionReport report;
  report.kind = ExpansionKind::edge;
  report.alpha = alpha;
  report.certified_alpha = std::numeric_limits<double>::infinity();
  const std::size_t n = g.size();
  if (n > exact_cutoff || n > 31) {
    report.verification = Verification::unverified;
    report.certified_alpha = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  report.verification = Verification::exact;
  const auto adj = adjacency_masks(g);
  const Mask full = static_cast<Mask>((std::uint64_t{1} << n) - 1);
  const int max_size = static_cast<int>(n / 2);
  for (Mask s = 1; s <= full && s != 0; ++s) {
    const int size = std::popcount(s);
    if (size > max_size) continue;
    std::size_t boundary = 0;
    for (Mask rest = s; rest != 0; rest &= rest - 1) {
      boundary += static_cast<std::size_t>(std::popcount(adj[std::countr_zero(rest)] & ~s));
    }
    const double ratio = static_cast<double>(boundary) / size;
    report.certified_alpha = std::min(report.certified_alpha, ratio);
    if (!report.witness && static_cast<double>(boundary) < alpha * size) {
      report.witness = mask_vertices(s);
    }
    if (s == full) break;
  }
  return report;
}

ExpansionReport check_bipartite_vertex_expansion(const HostGraph& g, double alpha,
                                                 std::size_t exact_cutoff) {
  if (!g.is_bipartite()) throw ValidationError("bipartite expansion needs a bipartition");
  if (!(alpha > 0 && alpha < 1)) throw ValidationError("alpha must lie in (0, 1)");
  ExpansionReport report;
  report.kind = ExpansionKind::bipartite_vertex;
  report.alpha = alpha;
  report.certified_alpha = std::numeric_limits<double>::infinity();
  const std::size_t n = g.size();
  if (n > exact_cutoff || n > 31) {
    report.verification = Verification::unverified;
    report.certified_alpha = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  report.verification = Verification::exact;
  const auto adj = adjacency_masks(g);
  for (int i = 0; i < 2; ++i) {
    const auto& part = g.part(i);
    const std::size_t k = part.size();
    const std::size_t max_size = k / 2;
    for (std::uint64_t sub = 1; sub < (std::uint64_t{1} << k); ++sub) {
      const auto size = static_cast<std::size_t>(std::popcount(sub));
      if (size > max_size) continue;
      Mask nb = 0;
      Mask set = 0;
      for (std::uint64_t rest = sub; rest != 0; rest &= rest - 1) {
        const Vertex v = part[static_cast<std::size_t>(std::countr_zero(rest))];
        nb |= adj[v];
        set |= Mask{1} << v;
      }
      const auto nsize = static_cast<double>(std::popcount(nb));
      report.certified_alpha =
          std::min(report.certified_alpha, nsize / static_cast<double>(size) - 1.0);
      if (!report.witness && nsize < (1.0 + alpha) * static_cast<double>(size)) {
        report.witness = mask_vertices(set);
        report.witness_side = i;
      }
    }
  }
  return report;
}

HostGraph generate_random_regular_bipartite(std::size_t n_per_side, std::size_t delta,
                                            std::uint64_t seed, std::size_t max_attempts) {
  if (n_per_side == 0) throw ValidationError("parts must be nonempty");
  if (delta > n_per_side) {
    throw ValidationError("degree " + std::to_string(delta) + " exceeds part size " +
                          std::to_string(n_per_side));
  }
  Rng rng(derive_seed(seed, 0x6267));
  const std::size_t n = n_per_side;
  std::vector<std::vector<Vertex>> right_of(n);  // right_of[u] = matched part-1 offsets
  std::vector<Vertex> perm(n);
  for (std::size_t layer = 0; layer < delta; ++layer) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < max_attempts && !placed; ++attempt) {
      std::iota(perm.begin(), perm.end(), Vertex{0});
      shuffle(std::span<Vertex>(perm), rng);
      placed = true;
      for (std::size_t u = 0; u < n && placed; ++u) {
        const auto& used = right_of[u];
        placed = std::find(used.begin(), used.end(), perm[u]) == used.end();
      }
    }
    if (!placed) {
      throw GenerationError("no multi-edge-free matching for layer " + std::to_string(layer) +
                            " after " + std::to_string(max_attempts) + " attempts");
    }
    for (std::size_t u = 0; u < n; ++u) right_of[u].push_back(perm[u]);
  }
  std::vector<Edge> edges;
  edges.reserve(n * delta);
  for (std::size_t u = 0; u < n; ++u) {
    for (Vertex r : right_of[u]) edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(n + r));
  }
  std::vector<std::uint8_t> sides(2 * n, 0);
  std::fill(sides.begin() + static_cast<std::ptrdiff_t>(n), sides.end(), 1);
  return HostGraph::from_edges(2 * n, edges, sides);
}

}  // namespace polymc
