#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polymc/host_graph.hpp"
#include "polymc/subgraph_enum.hpp"

namespace polymc {

using Spin = std::int32_t;

/// A connected support with one non-ground spin per vertex.
/// `spins[j]` belongs to `support[j]`; support is sorted.
struct Polymer {
  std::vector<Vertex> support;
  std::vector<Spin> spins;

  std::size_t size() const { return support.size(); }
  bool contains(Vertex v) const;
  /// Spin at v; requires contains(v).
  Spin spin_at(Vertex v) const;

  auto operator<=>(const Polymer&) const = default;
  bool operator==(const Polymer&) const = default;
};

/// Polymer on `support` with every vertex carrying `spin`.
Polymer uniform_polymer(std::vector<Vertex> support, Spin spin);

/// Subset polymer model. Implementations are immutable and shareable.
///
/// A polymer is allowed iff its shape is valid (sorted support, connected
/// in host(), every vertex eligible, size ≤ max_size(), spins in range and
/// different from ground) and both support_allowed() and labeling_allowed()
/// accept it.
class PolymerModel {
 public:
  virtual ~PolymerModel() = default;

  virtual const HostGraph& host() const = 0;
  virtual int num_spins() const = 0;
  virtual Spin ground(Vertex v) const = 0;
  /// log w_γ for an allowed polymer.
  virtual double log_weight(const Polymer& p) const = 0;

  /// Claimed sampling-condition constant τ, if the model has one.
  virtual std::optional<double> tau_hint() const { return std::nullopt; }
  /// Hard cap on polymer size.
  virtual std::size_t max_size() const { return host().size(); }
  /// Whether v may belong to any polymer.
  virtual bool eligible(Vertex) const { return true; }
  /// Extra constraint on a sorted support beyond connectivity and size.
  virtual bool support_allowed(std::span<const Vertex>) const { return true; }
  /// Extra constraint on the spin labeling of a support.
  virtual bool labeling_allowed(const Polymer&) const { return true; }
  virtual std::string name() const = 0;

  bool is_allowed(const Polymer& p) const;
  double weight(const Polymer& p) const { return std::exp(log_weight(p)); }
};

/// Sorted, in range, connected, eligible, size-capped, non-ground spins.
bool has_valid_shape(const PolymerModel& m, const Polymer& p);

/// Calls visit(spins) for each of the ∏(q−1) non-ground labelings of the
/// sorted `support`, in odometer order (last vertex fastest). `spins` is
/// reused between calls. Returns the number of labelings.
template <class Visit>
std::size_t visit_labelings(const PolymerModel& m, std::span<const Vertex> support,
                            std::vector<Spin>& spins, Visit&& visit) {
  const int q = m.num_spins();
  if (q < 2 || support.empty()) return 0;
  spins.resize(support.size());
  auto first_non_ground = [&](std::size_t j) { return m.ground(support[j]) == 0 ? Spin{1} : Spin{0}; };
  for (std::size_t j = 0; j < support.size(); ++j) spins[j] = first_non_ground(j);
  std::size_t count = 0;
  while (true) {
    ++count;
    visit(static_cast<const std::vector<Spin>&>(spins));
    std::size_t j = support.size();
    while (true) {
      --j;
      Spin next = spins[j] + 1;
      if (next == m.ground(support[j])) ++next;
      if (next < q) {
        spins[j] = next;
        break;
      }
      spins[j] = first_non_ground(j);
      if (j == 0) return count;
    }
  }
}

/// Calls visit(polymer, log_weight) for each allowed polymer containing v
/// of size ≤ k whose members other than v satisfy restrict(u). `buf` is the
/// polymer passed to visit and is overwritten between calls. Returns work
/// units: supports enumerated plus labelings examined.
template <class Restrict, class Visit>
std::size_t visit_polymers_at(const PolymerModel& m, ConnectedSetEnumerator& en, Vertex v,
                              std::size_t k, Restrict&& restrict, Polymer& buf, Visit&& visit) {
  k = std::min(k, m.max_size());
  if (k == 0 || !m.eligible(v)) return 0;
  std::size_t work = 0;
  auto eligible = [&](Vertex u) { return m.eligible(u) && restrict(u); };
  work += en.run(v, k, eligible, [&](std::span<const Vertex> set) {
    buf.support.assign(set.begin(), set.end());
    std::sort(buf.support.begin(), buf.support.end());
    if (!m.support_allowed(buf.support)) return;
    work += visit_labelings(m, buf.support, buf.spins, [&](const std::vector<Spin>&) {
      if (m.labeling_allowed(buf)) visit(static_cast<const Polymer&>(buf), m.log_weight(buf));
    });
  });
  return work;
}

/// Type-erased visit_labelings.
std::size_t for_each_labeling(const PolymerModel& m, std::span<const Vertex> support,
                              const std::function<void(std::span<const Spin>)>& visit);

/// Type-erased visit_polymers_at.
std::size_t for_each_polymer_at(const PolymerModel& m, ConnectedSetEnumerator& en, Vertex v,
                                std::size_t k,
                                const std::function<bool(Vertex)>& restrict,
                                const std::function<void(const Polymer&, double)>& visit);

std::size_t for_each_polymer_at(const PolymerModel& m, ConnectedSetEnumerator& en, Vertex v,
                                std::size_t k,
                                const std::function<void(const Polymer&, double)>& visit);

struct WeightedPolymer {
  Polymer polymer;
  double log_weight = 0.0;
};

inline constexpr std::size_t kDefaultEnumerationBudget = 5'000'000;

/// Every allowed polymer of size ≤ k_max, each once, sorted by polymer.
/// Throws BudgetError once work exceeds `budget`.
std::vector<WeightedPolymer> enumerate_polymers(const PolymerModel& m, std::size_t k_max,
                                                std::size_t budget = kDefaultEnumerationBudget);

/// Host-graph distance between the supports is at least 2.
bool compatible(const Polymer& a, const Polymer& b, const HostGraph& host);

/// Synthetic model whose every polymer (any labeling, size ≤ cap) has weight
/// e^{−τ|γ|}. Satisfies the sampling condition with equality.
class DecayModel final : public PolymerModel {
 public:
  DecayModel(const HostGraph& host, int q, double tau, std::optional<std::size_t> cap = std::nullopt);

  const HostGraph& host() const override { return *host_; }
  int num_spins() const override { return q_; }
  Spin ground(Vertex) const override { return 0; }
  double log_weight(const Polymer& p) const override {
    return -tau_ * static_cast<double>(p.size());
  }
  std::optional<double> tau_hint() const override { return tau_; }
  std::size_t max_size() const override { return cap_; }
  std::string name() const override { return "decay"; }

 private:
  const HostGraph* host_;
  int q_;
  double tau_;
  std::size_t cap_;
};

}  // namespace polymc
