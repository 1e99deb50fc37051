#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "polymc/host_graph.hpp"
#include "polymc/polymer_model.hpp"

namespace polymc {

/// A set of pairwise compatible polymers with an incremental index.
///
/// owner_[v] is 1 + the index of the polymer covering v, or 0.
/// near_[v] counts, with multiplicity, the polymers that contain v or a
/// neighbour of v; a polymer fits iff near_ is zero on its whole support.
class Configuration {
 public:
  explicit Configuration(const HostGraph& host);

  const HostGraph& host() const { return *host_; }

  /// Compatible with every member (distance ≥ 2 in the host graph).
  bool can_insert(const Polymer& p) const;
  /// Inserts p if compatible; returns whether it was inserted.
  bool try_insert(const Polymer& p, double log_weight);
  /// Removes the polymer covering v, if any, and returns it.
  std::optional<Polymer> remove_covering(Vertex v);
  /// Removes the polymer covering v without returning it.
  bool erase_covering(Vertex v);
  /// Removes the polymer equal to p; returns whether it was present.
  bool remove(const Polymer& p);
  void clear();

  /// Polymer covering v, or nullptr.
  const Polymer* covering(Vertex v) const {
    const auto o = owner_[v];
    return o == 0 ? nullptr : &polymers_[o - 1];
  }

  std::size_t num_polymers() const { return polymers_.size(); }
  bool empty() const { return polymers_.empty(); }
  /// Members in storage order (unspecified).
  std::span<const Polymer> polymers() const { return polymers_; }
  /// Members in canonical order.
  std::vector<Polymer> sorted_polymers() const;
  /// Σ|γ| over members.
  std::size_t covered_vertices() const { return covered_; }
  /// Σ log w_γ over members, from the weights cached at insertion.
  double log_weight() const;

  /// Same polymer set (order-insensitive).
  bool operator==(const Configuration& other) const;

 private:
  void erase_at(std::size_t index);

  const HostGraph* host_;
  std::vector<Polymer> polymers_;
  std::vector<double> log_weights_;
  std::vector<std::uint32_t> owner_;
  std::vector<std::uint32_t> near_;
  std::size_t covered_ = 0;
};

/// Σ log w_γ recomputed from the model.
double config_log_weight(const Configuration& c, const PolymerModel& m);
/// ∏ w_γ; the empty configuration has weight 1.
double config_weight(const Configuration& c, const PolymerModel& m);

/// Builds a configuration from polymers; throws ValidationError if they are
/// not pairwise compatible or not allowed by m.
Configuration make_configuration(const PolymerModel& m, const std::vector<Polymer>& polymers);

/// Spin map f: ground spin everywhere except on polymer supports.
std::vector<Spin> configuration_to_spins(const Configuration& c, const PolymerModel& m);

/// f⁻¹ on the extended domain: connected components (in the host graph) of
/// the non-ground vertices, as polymers in canonical order. The components
/// need not be allowed.
std::vector<Polymer> spins_to_polymers(const PolymerModel& m, std::span<const Spin> spins);

}  // namespace polymc
