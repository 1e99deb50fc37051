#pragma once

// Brute-force ground truth for desk-scale instances.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "polymc/hardcore.hpp"
#include "polymc/host_graph.hpp"
#include "polymc/polymer_model.hpp"
#include "polymc/rng.hpp"

namespace polymc {

/// States in increasing order with their probabilities.
template <class State>
struct ExactDistribution {
  std::vector<State> states;
  std::vector<double> probs;

  /// Index of s, or nullopt when s is not a state.
  std::optional<std::size_t> index_of(const State& s) const {
    auto it = std::lower_bound(states.begin(), states.end(), s);
    if (it == states.end() || !(*it == s)) return std::nullopt;
    return static_cast<std::size_t>(it - states.begin());
  }
};

/// Sorts states and merges duplicates by summing their mass.
template <class State>
ExactDistribution<State> make_distribution(std::vector<std::pair<State, long double>> mass) {
  std::sort(mass.begin(), mass.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  ExactDistribution<State> out;
  long double total = 0;
  for (const auto& [s, w] : mass) total += w;
  for (std::size_t j = 0; j < mass.size();) {
    long double w = 0;
    std::size_t k = j;
    while (k < mass.size() && mass[k].first == mass[j].first) w += mass[k++].second;
    out.states.push_back(mass[j].first);
    out.probs.push_back(static_cast<double>(w / total));
    j = k;
  }
  return out;
}

/// Index drawn from a probability vector by inversion.
std::size_t sample_index(const std::vector<double>& probs, Rng& rng);

/// A configuration as its canonically ordered polymers.
using PolymerState = std::vector<Polymer>;

inline constexpr std::size_t kDefaultStateBudget = 1'000'000;
inline constexpr std::size_t kKernelStateLimit = 5000;

struct PolymerPartition {
  long double z = 1;
  double log_z = 0.0;
  /// Allowed polymers up to the size limit, sorted.
  std::vector<WeightedPolymer> polymers;
  /// μ_G over Ω.
  ExactDistribution<PolymerState> gibbs;
  /// Σ log w_γ per state, aligned with gibbs.states.
  std::vector<double> log_weights;
  /// Σ|γ| per state, aligned with gibbs.states.
  std::vector<std::size_t> sizes;
};

/// Enumerates allowed polymers of size ≤ size_limit and every compatible
/// subset of them. Throws BudgetError when Ω exceeds state_budget.
PolymerPartition brute_polymer_partition(const PolymerModel& m, std::size_t size_limit,
                                         std::size_t state_budget = kDefaultStateBudget);
PolymerPartition brute_polymer_partition(const PolymerModel& m);

/// Σ_I λ^{|I|} by branching on vertices. Requires n ≤ 24.
long double brute_hardcore_partition(const HostGraph& g, double lambda);
/// Σ_I λ^{|I|} by filtering all 2ⁿ subsets. Requires n ≤ 24.
long double hardcore_partition_by_subsets(const HostGraph& g, double lambda);

struct PottsPartition {
  long double z = 0;
  /// histogram[k] = number of colourings with k bichromatic edges.
  std::vector<std::uint64_t> histogram;
};

/// Σ_σ e^{−β m(G,σ)}. Requires qⁿ ≤ 10⁷.
PottsPartition brute_potts_partition(const HostGraph& g, int q, double beta);

ExactDistribution<std::vector<Spin>> exact_potts_gibbs(const HostGraph& g, int q, double beta);
ExactDistribution<IndependentSet> exact_hardcore_gibbs(const HostGraph& g, double lambda);

/// Law of the two-sided hard-core procedure with exact side partition
/// functions and exact side Gibbs draws.
ExactDistribution<IndependentSet> exact_hardcore_mixture(const HostGraph& g, const HardcoreParams& p);

/// Law of the Potts procedure: uniform ground colour, exact side Gibbs
/// draw, mapped to a colouring.
ExactDistribution<std::vector<Spin>> exact_potts_mixture(const HostGraph& g, int q, double beta,
                                                         std::optional<std::size_t> size_cap = std::nullopt);

enum class Dynamics { polymer, glauber };

/// Sparse row-stochastic matrix over gibbs.states.
struct ExactKernel {
  std::vector<PolymerState> states;
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;

  double at(std::size_t i, std::size_t j) const;
};

/// All randomness marginalized: vertex, coin or spin, size draw, Metropolis
/// acceptance. Requires |Ω| ≤ 5000. `tau` only affects the polymer
/// dynamics' size-draw rate.
ExactKernel exact_kernel(const PolymerModel& m, Dynamics dynamics,
                         std::optional<double> tau = std::nullopt);

struct BalanceReport {
  /// max |μ_i P_ij − μ_j P_ji|.
  double max_flow_gap = 0.0;
  /// max |(μP)_j − μ_j|.
  double max_stationarity_gap = 0.0;
  /// max |Σ_j P_ij − 1|.
  double max_row_error = 0.0;
};

BalanceReport check_detailed_balance(const ExactKernel& k, const std::vector<double>& mu);

/// max over single-update transitions Γ → Γ′ of |ln(μ(Γ)/μ(Γ′))|.
double max_glauber_log_ratio(const PolymerModel& m);

/// ½ Σ |a − b|; throws ValidationError on length mismatch.
double tv_distance(const std::vector<double>& a, const std::vector<double>& b);
/// TV between normalised counts and a distribution; `outside` counts mass
/// observed on states absent from b.
double tv_distance_counts(const std::vector<std::uint64_t>& counts, const std::vector<double>& b,
                          std::uint64_t outside = 0);
/// ½ Σ sqrt(p(1−p)/N): scale of the sampling noise in an empirical TV.
double tv_noise_sigma(const std::vector<double>& probs, std::uint64_t samples);

}  // namespace polymc
