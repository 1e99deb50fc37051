#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace polymc {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Immutable simple undirected graph in CSR form with an optional
/// bipartition. Adjacency lists are sorted; max_degree is exact.
class HostGraph {
 public:
  /// Builds from an edge list. `sides[v]` in {0,1} declares a bipartition.
  /// Throws ValidationError on self-loops, duplicates, out-of-range ids or
  /// intra-part edges.
  static HostGraph from_edges(std::size_t n, const std::vector<Edge>& edges,
                              std::optional<std::vector<std::uint8_t>> sides = std::nullopt);

  /// Builds from per-vertex neighbour lists, which must be symmetric.
  static HostGraph from_adjacency(const std::vector<std::vector<Vertex>>& adjacency,
                                  std::optional<std::vector<std::uint8_t>> sides = std::nullopt);

  std::size_t size() const { return offsets_.size() - 1; }
  std::size_t num_edges() const { return adjacency_.size() / 2; }
  std::size_t max_degree() const { return max_degree_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(Vertex u, Vertex v) const;

  bool is_bipartite() const { return !sides_.empty(); }
  /// Part index of v; requires is_bipartite().
  int side(Vertex v) const { return sides_[v]; }
  /// Sorted vertex ids of part i; requires is_bipartite().
  const std::vector<Vertex>& part(int i) const { return parts_[static_cast<std::size_t>(i)]; }
  const std::vector<std::uint8_t>& sides() const { return sides_; }

  /// Edges with u < v, in increasing (u, v) order.
  std::vector<Edge> edges() const;

  bool operator==(const HostGraph&) const = default;

 private:
  HostGraph() = default;

  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
  std::size_t max_degree_ = 0;
  std::vector<std::uint8_t> sides_;
  std::array<std::vector<Vertex>, 2> parts_;
};

HostGraph path_graph(std::size_t n);
/// Cycle on n ≥ 3 vertices; `bipartite` attaches the even/odd parts (n even).
HostGraph cycle_graph(std::size_t n, bool bipartite = false);
HostGraph complete_graph(std::size_t n);
/// K_{a,b} with part 0 = 0..a−1 and part 1 = a..a+b−1.
HostGraph complete_bipartite_graph(std::size_t a, std::size_t b);
/// Vertex 0 is the centre.
HostGraph star_graph(std::size_t leaves);
/// Graph with n vertices and no edges, optionally split into parts of sizes a, n−a.
HostGraph empty_graph(std::size_t n, std::optional<std::size_t> part0_size = std::nullopt);

/// Square of g: uv is an edge iff 1 ≤ dist_g(u, v) ≤ 2. Drops the bipartition.
HostGraph power_graph(const HostGraph& g, int exponent = 2);

/// BFS distances from `source`; unreachable vertices get SIZE_MAX.
std::vector<std::size_t> bfs_distances(const HostGraph& g, Vertex source);

/// True iff the induced subgraph on `vertices` is connected (empty is false).
bool is_connected_set(const HostGraph& g, std::span<const Vertex> vertices);

enum class ExpansionKind { edge, bipartite_vertex };
enum class Verification { exact, unverified };

struct ExpansionReport {
  ExpansionKind kind = ExpansionKind::edge;
  double alpha = 0.0;
  Verification verification = Verification::unverified;
  /// Smallest violating set in enumeration order, if any.
  std::optional<std::vector<Vertex>> witness;
  /// Side of the witness for bipartite checks.
  std::optional<int> witness_side;
  /// Minimum ratio over all checked sets; +inf when nothing was checked.
  double certified_alpha = 0.0;

  bool holds() const { return verification == Verification::exact && !witness; }
};

inline constexpr std::size_t kExactExpansionCutoff = 24;

/// e(S, Sᶜ) ≥ α|S| for all nonempty S with |S| ≤ n/2.
ExpansionReport check_edge_expansion(const HostGraph& g, double alpha,
                                     std::size_t exact_cutoff = kExactExpansionCutoff);

/// |N(S)| ≥ (1+α)|S| for all nonempty S ⊆ Vⁱ with |S| ≤ |Vⁱ|/2, both i.
/// Throws ValidationError when g has no bipartition.
ExpansionReport check_bipartite_vertex_expansion(const HostGraph& g, double alpha,
                                                 std::size_t exact_cutoff = kExactExpansionCutoff);

/// Union of `delta` random perfect matchings between two parts of size
/// `n_per_side`, each redrawn until it avoids earlier edges. Part 0 is
/// 0..n−1, part 1 is n..2n−1. Throws GenerationError when a matching cannot
/// be placed within `max_attempts` draws.
HostGraph generate_random_regular_bipartite(std::size_t n_per_side, std::size_t delta,
                                            std::uint64_t seed,
                                            std::size_t max_attempts = 10000);

}  // namespace polymc
