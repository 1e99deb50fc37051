#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "polymc/host_graph.hpp"

namespace polymc {

struct ConnectedSet {
  std::vector<Vertex> vertices;  // sorted
  Vertex anchor = 0;

  auto operator<=>(const ConnectedSet&) const = default;
};

/// Reusable enumerator of connected vertex sets through a fixed anchor.
///
/// Each set is produced exactly once by the include/exclude recursion: a
/// candidate popped from the extension list is either added to the set or
/// excluded for the rest of that subtree. Scratch buffers persist across
/// calls so repeated enumeration does not allocate.
class ConnectedSetEnumerator {
 public:
  explicit ConnectedSetEnumerator(const HostGraph& g);

  /// Calls visit(span) for every connected set S ∋ v with |S| ≤ k whose
  /// members other than v satisfy eligible(u). Spans are in discovery order,
  /// not sorted, and are only valid during the callback. Returns the number
  /// of sets visited.
  template <class Eligible, class Visit>
  std::size_t run(Vertex v, std::size_t k, Eligible&& eligible, Visit&& visit);

  template <class Visit>
  std::size_t run(Vertex v, std::size_t k, Visit&& visit) {
    return run(v, k, [](Vertex) { return true; }, visit);
  }

  const HostGraph& graph() const { return *g_; }

 private:
  template <class Eligible, class Visit>
  void recurse(std::size_t depth, std::size_t k, Eligible& eligible, Visit& visit,
               std::size_t& count);

  const HostGraph* g_;
  std::vector<std::uint8_t> mark_;
  std::vector<Vertex> set_;
  std::vector<std::vector<Vertex>> ext_;    // ext_[d] = extension list at depth d
  std::vector<std::vector<Vertex>> fresh_;  // fresh_[d] = vertices marked when entering depth d
};

template <class Eligible, class Visit>
std::size_t ConnectedSetEnumerator::run(Vertex v, std::size_t k, Eligible&& eligible,
                                        Visit&& visit) {
  if (k == 0) return 0;
  std::size_t count = 0;
  if (ext_.size() < k + 1) ext_.resize(k + 1);
  set_.clear();
  set_.push_back(v);
  mark_[v] = 1;
  auto& ext = ext_[0];
  ext.clear();
  if (k > 1) {
    for (Vertex u : g_->neighbors(v)) {
      if (!mark_[u] && eligible(u)) {
        mark_[u] = 1;
        ext.push_back(u);
      }
    }
  }
  if (fresh_.size() < k + 1) fresh_.resize(k + 1);
  fresh_[0].assign(ext.begin(), ext.end());
  recurse(0, k, eligible, visit, count);
  for (Vertex u : fresh_[0]) mark_[u] = 0;
  mark_[v] = 0;
  return count;
}

template <class Eligible, class Visit>
void ConnectedSetEnumerator::recurse(std::size_t depth, std::size_t k, Eligible& eligible,
                                     Visit& visit, std::size_t& count) {
  ++count;
  visit(std::span<const Vertex>(set_));
  if (set_.size() == k) return;
  auto& ext = ext_[depth];
  while (!ext.empty()) {
    const Vertex u = ext.back();
    ext.pop_back();
    auto& next = ext_[depth + 1];
    next.assign(ext.begin(), ext.end());
    const std::size_t inherited = next.size();
    if (set_.size() + 1 < k) {
      for (Vertex w : g_->neighbors(u)) {
        if (!mark_[w] && eligible(w)) {
          mark_[w] = 1;
          next.push_back(w);
        }
      }
    }
    // Vertices discovered here are unmarked when this branch returns; the
    // recursion below may pop them from `next`, so keep a separate copy.
    auto& fresh = fresh_[depth + 1];
    fresh.assign(next.begin() + static_cast<std::ptrdiff_t>(inherited), next.end());
    set_.push_back(u);
    recurse(depth + 1, k, eligible, visit, count);
    set_.pop_back();
    for (Vertex w : fresh_[depth + 1]) mark_[w] = 0;
  }
}

/// Every connected set of size ≤ k containing v, each once, sorted
/// lexicographically by vertex sequence.
std::vector<ConnectedSet> connected_sets_at(const HostGraph& g, Vertex v, std::size_t k);

/// (eΔ)^{k−1}; +inf on overflow. Requires delta ≥ 3 and k ≥ 1.
double connected_sets_count_bound(std::size_t delta, std::size_t k);

}  // namespace polymc
