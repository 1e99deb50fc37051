#include "polymc/configuration.hpp"

#include <algorithm>

#include "polymc/errors.hpp"

namespace polymc {

Configuration::Configuration(const HostGraph& host)
    : host_(&host), owner_(host.size(), 0), near_(host.size(), 0) {}

bool Configuration::can_insert(const Polymer& p) const {
  for (Vertex u : p.support) {
    if (near_[u] != 0) return false;
  }
  return true;
}

bool Configuration::try_insert(const Polymer& p, double log_weight) {
  if (!can_insert(p)) return false;
  const auto handle = static_cast<std::uint32_t>(polymers_.size() + 1);
  for (Vertex u : p.support) {
    owner_[u] = handle;
    ++near_[u];
    for (Vertex w : host_->neighbors(u)) ++near_[w];
  }
  covered_ += p.size();
  polymers_.push_back(p);
  log_weights_.push_back(log_weight);
  return true;
}

void Configuration::erase_at(std::size_t index) {
  const Polymer& p = polymers_[index];
  for (Vertex u : p.support) {
    owner_[u] = 0;
    --near_[u];
    for (Vertex w : host_->neighbors(u)) --near_[w];
  }
  covered_ -= p.size();
  const std::size_t last = polymers_.size() - 1;
  if (index != last) {
    polymers_[index] = std::move(polymers_[last]);
    log_weights_[index] = log_weights_[last];
    const auto handle = static_cast<std::uint32_t>(index + 1);
    for (Vertex u : polymers_[index].support) owner_[u] = handle;
  }
  polymers_.pop_back();
  log_weights_.pop_back();
}

std::optional<Polymer> Configuration::remove_covering(Vertex v) {
  const auto o = owner_[v];
  if (o == 0) return std::nullopt;
  Polymer removed = polymers_[o - 1];
  erase_at(o - 1);
  return removed;
}

bool Configuration::erase_covering(Vertex v) {
  const auto o = owner_[v];
  if (o == 0) return false;
  erase_at(o - 1);
  return true;
}

bool Configuration::remove(const Polymer& p) {
  if (p.support.empty()) return false;
  const auto o = owner_[p.support.front()];
  if (o == 0 || polymers_[o - 1] != p) return false;
  erase_at(o - 1);
  return true;
}

void Configuration::clear() {
  while (!polymers_.empty()) erase_at(polymers_.size() - 1);
}

std::vector<Polymer> Configuration::sorted_polymers() const {
  std::vector<Polymer> out(polymers_.begin(), polymers_.end());
  std::sort(out.begin(), out.end());
  return out;
}

double Configuration::log_weight() const {
  double total = 0.0;
  for (double lw : log_weights_) total += lw;
  return total;
}

bool Configuration::operator==(const Configuration& other) const {
  return polymers_.size() == other.polymers_.size() && sorted_polymers() == other.sorted_polymers();
}

double config_log_weight(const Configuration& c, const PolymerModel& m) {
  double total = 0.0;
  for (const auto& p : c.polymers()) total += m.log_weight(p);
  return total;
}

double config_weight(const Configuration& c, const PolymerModel& m) {
  return std::exp(config_log_weight(c, m));
}

Configuration make_configuration(const PolymerModel& m, const std::vector<Polymer>& polymers) {
  Configuration c(m.host());
  for (const auto& p : polymers) {
    if (!m.is_allowed(p)) throw ValidationError("polymer is not allowed by the model");
    if (!c.try_insert(p, m.log_weight(p))) throw ValidationError("polymers are not compatible");
  }
  return c;
}

std::vector<Spin> configuration_to_spins(const Configuration& c, const PolymerModel& m) {
  const auto& g = m.host();
  std::vector<Spin> spins(g.size());
  for (Vertex v = 0; v < g.size(); ++v) spins[v] = m.ground(v);
  for (const auto& p : c.polymers()) {
    for (std::size_t j = 0; j < p.size(); ++j) spins[p.support[j]] = p.spins[j];
  }
  return spins;
}

std::vector<Polymer> spins_to_polymers(const PolymerModel& m, std::span<const Spin> spins) {
  const auto& g = m.host();
  if (spins.size() != g.size()) throw ValidationError("spin vector has the wrong length");
  std::vector<std::uint8_t> seen(g.size(), 0);
  std::vector<Polymer> out;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.size(); ++s) {
    if (seen[s] || spins[s] == m.ground(s)) continue;
    Polymer p;
    seen[s] = 1;
    stack.assign(1, s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      p.support.push_back(v);
      for (Vertex u : g.neighbors(v)) {
        if (!seen[u] && spins[u] != m.ground(u)) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
    std::sort(p.support.begin(), p.support.end());
    p.spins.reserve(p.size());
    for (Vertex v : p.support) p.spins.push_back(spins[v]);
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace polymc
