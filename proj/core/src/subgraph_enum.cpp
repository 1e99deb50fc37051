#include "polymc/subgraph_enum.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>

#include "polymc/errors.hpp"

namespace polymc {

ConnectedSetEnumerator::ConnectedSetEnumerator(const HostGraph& g)
    : g_(&g), mark_(g.size(), 0) {}

std::vector<ConnectedSet> connected_sets_at(const HostGraph& g, Vertex v, std::size_t k) {
  if (v >= g.size()) throw ValidationError("vertex out of range");
  if (k == 0) throw ValidationError("k must be at least 1");
  k = std::min(k, g.size());
  ConnectedSetEnumerator en(g);
  std::vector<ConnectedSet> out;
  [[maybe_unused]] std::vector<std::size_t> per_size(k + 1, 0);
  en.run(v, k, [&](std::span<const Vertex> s) {
    ConnectedSet cs{{s.begin(), s.end()}, v};
    std::sort(cs.vertices.begin(), cs.vertices.end());
    out.push_back(std::move(cs));
#ifndef NDEBUG
    ++per_size[s.size()];
#endif
  });
#ifndef NDEBUG
  const std::size_t delta = std::max<std::size_t>(g.max_degree(), 3);
  for (std::size_t s = 1; s <= k; ++s) {
    assert(static_cast<double>(per_size[s]) <= connected_sets_count_bound(delta, s) + 1e-9);
  }
#endif
  std::sort(out.begin(), out.end());
  return out;
}

double connected_sets_count_bound(std::size_t delta, std::size_t k) {
  if (delta < 3) throw ValidationError("count bound requires delta >= 3");
  if (k == 0) throw ValidationError("k must be at least 1");
  const double log_bound = static_cast<double>(k - 1) * (1.0 + std::log(static_cast<double>(delta)));
  if (log_bound > std::log(std::numeric_limits<double>::max())) {
    return std::numeric_limits<double>::infinity();
  }
  return std::pow(std::numbers::e * static_cast<double>(delta), static_cast<double>(k - 1));
}

}  // namespace polymc
