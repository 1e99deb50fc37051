#include "polymc/polymer_model.hpp"

#include <algorithm>

#include "polymc/errors.hpp"

namespace polymc {

bool Polymer::contains(Vertex v) const {
  return std::binary_search(support.begin(), support.end(), v);
}

Spin Polymer::spin_at(Vertex v) const {
  auto it = std::lower_bound(support.begin(), support.end(), v);
  return spins[static_cast<std::size_t>(it - support.begin())];
}

Polymer uniform_polymer(std::vector<Vertex> support, Spin spin) {
  std::sort(support.begin(), support.end());
  Polymer p;
  p.spins.assign(support.size(), spin);
  p.support = std::move(support);
  return p;
}

bool has_valid_shape(const PolymerModel& m, const Polymer& p) {
  const auto& g = m.host();
  if (p.support.empty() || p.spins.size() != p.support.size()) return false;
  if (p.size() > m.max_size()) return false;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const Vertex v = p.support[j];
    if (v >= g.size()) return false;
    if (j > 0 && p.support[j - 1] >= v) return false;
    if (!m.eligible(v)) return false;
    if (p.spins[j] < 0 || p.spins[j] >= m.num_spins() || p.spins[j] == m.ground(v)) return false;
  }
  return is_connected_set(g, p.support);
}

bool PolymerModel::is_allowed(const Polymer& p) const {
  return has_valid_shape(*this, p) && support_allowed(p.support) && labeling_allowed(p);
}

std::size_t for_each_labeling(const PolymerModel& m, std::span<const Vertex> support,
                              const std::function<void(std::span<const Spin>)>& visit) {
  std::vector<Spin> spins;
  return visit_labelings(m, support, spins,
                         [&](const std::vector<Spin>& s) { visit(std::span<const Spin>(s)); });
}

std::size_t for_each_polymer_at(const PolymerModel& m, ConnectedSetEnumerator& en, Vertex v,
                                std::size_t k, const std::function<bool(Vertex)>& restrict,
                                const std::function<void(const Polymer&, double)>& visit) {
  Polymer buf;
  return visit_polymers_at(m, en, v, k, restrict, buf, visit);
}

std::size_t for_each_polymer_at(const PolymerModel& m, ConnectedSetEnumerator& en, Vertex v,
                                std::size_t k,
                                const std::function<void(const Polymer&, double)>& visit) {
  return for_each_polymer_at(m, en, v, k, [](Vertex) { return true; }, visit);
}

std::vector<WeightedPolymer> enumerate_polymers(const PolymerModel& m, std::size_t k_max,
                                                std::size_t budget) {
  const auto& g = m.host();
  ConnectedSetEnumerator en(g);
  std::vector<WeightedPolymer> out;
  std::size_t work = 0;
  Polymer buf;
  for (Vertex v = 0; v < g.size(); ++v) {
    // Each polymer is produced once, from its minimum vertex.
    work += visit_polymers_at(
        m, en, v, k_max, [v](Vertex u) { return u > v; }, buf,
        [&](const Polymer& p, double logw) {
          out.push_back({p, logw});
          if (out.size() > budget) {
            throw BudgetError("polymer enumeration exceeded budget of " + std::to_string(budget));
          }
        });
    if (work > budget) {
      throw BudgetError("polymer enumeration exceeded budget of " + std::to_string(budget));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const WeightedPolymer& a, const WeightedPolymer& b) { return a.polymer < b.polymer; });
  return out;
}

bool compatible(const Polymer& a, const Polymer& b, const HostGraph& host) {
  for (Vertex u : a.support) {
    if (b.contains(u)) return false;
    for (Vertex w : host.neighbors(u)) {
      if (b.contains(w)) return false;
    }
  }
  return true;
}

DecayModel::DecayModel(const HostGraph& host, int q, double tau, std::optional<std::size_t> cap)
    : host_(&host), q_(q), tau_(tau), cap_(cap.value_or(host.size())) {
  if (q < 2) throw ValidationError("decay model needs q >= 2");
  if (!(tau > 0)) throw ValidationError("decay model needs tau > 0");
}

}  // namespace polymc
