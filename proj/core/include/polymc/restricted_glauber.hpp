#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polymc/configuration.hpp"
#include "polymc/hardcore.hpp"
#include "polymc/polymer_dynamics.hpp"
#include "polymc/polymer_model.hpp"
#include "polymc/rng.hpp"

namespace polymc {

/// `base` with polymers restricted to size ≤ k; weights unchanged.
/// `base` must outlive the wrapper.
class TruncatedModel final : public PolymerModel {
 public:
  TruncatedModel(const PolymerModel& base, std::size_t k);

  const HostGraph& host() const override { return base_->host(); }
  int num_spins() const override { return base_->num_spins(); }
  Spin ground(Vertex v) const override { return base_->ground(v); }
  double log_weight(const Polymer& p) const override { return base_->log_weight(p); }
  std::optional<double> tau_hint() const override { return base_->tau_hint(); }
  std::size_t max_size() const override { return std::min(base_->max_size(), k_); }
  bool eligible(Vertex v) const override { return base_->eligible(v); }
  bool support_allowed(std::span<const Vertex> s) const override { return base_->support_allowed(s); }
  bool labeling_allowed(const Polymer& p) const override { return base_->labeling_allowed(p); }
  std::string name() const override { return base_->name() + "@k" + std::to_string(k_); }

  std::size_t cap() const { return k_; }
  const PolymerModel& base() const { return *base_; }

 private:
  const PolymerModel* base_;
  std::size_t k_;
};

TruncatedModel truncate(const PolymerModel& m, std::size_t k);

/// 3 ln(2n/ε) / (2τ).
double truncation_size(std::size_t n, double epsilon, double tau);
/// 3 ln(4n/ε) / (2αβ).
double potts_truncation_size(std::size_t n, double epsilon, double alpha, double beta);
/// 3(2+α) ln(4n/ε) / (2α ln λ).
double hardcore_truncation_size(std::size_t n, double epsilon, double alpha, double lambda);
/// max(1, ⌈x⌉).
std::size_t size_cap_from(double x);

/// Side-i deviation model on host G: ground spin 1 (occupied) on Vⁱ and 0
/// on V^{1−i}. A polymer is connected in G, has |γ∩Vⁱ| ≤ ⌊|Vⁱ|/4⌋, and
/// contains every G-neighbour of each of its V^{1−i} vertices. Weight
/// λ^{|γ∩V^{1−i}| − |γ∩Vⁱ|}; τ = α/(2+α)·ln λ.
class DeviationHardcoreModel final : public PolymerModel {
 public:
  DeviationHardcoreModel(const HostGraph& g, const HardcoreParams& p, int side);

  const HostGraph& host() const override { return *g_; }
  int num_spins() const override { return 2; }
  Spin ground(Vertex v) const override { return g_->side(v) == side_ ? 1 : 0; }
  double log_weight(const Polymer& p) const override;
  std::optional<double> tau_hint() const override;
  bool support_allowed(std::span<const Vertex> s) const override;
  std::string name() const override { return "deviation-side" + std::to_string(side_); }

  int side() const { return side_; }
  std::size_t vacancy_cap() const { return vacancy_cap_; }

 private:
  const HostGraph* g_;
  HardcoreParams params_;
  int side_;
  std::size_t vacancy_cap_;
};

DeviationHardcoreModel hc_deviation_model(const HostGraph& g, const HardcoreParams& p, int side);

/// Occupied vertices (spin 1) of the deviation model's spin map.
IndependentSet deviation_to_independent_set(const Configuration& c, const DeviationHardcoreModel& m);

/// Effect of setting σ(v) ← s in f(Γ).
struct GlauberProposal {
  std::vector<Polymer> removed;
  std::vector<Polymer> added;
  /// Σ log w(added) − Σ log w(removed).
  double log_ratio = 0.0;
  /// Every added component is an allowed polymer.
  bool allowed = true;
  /// s equals the current spin.
  bool identity = false;
};

GlauberProposal glauber_proposal(const Configuration& c, const PolymerModel& m, Vertex v, Spin s);

/// Replaces `removed` by `added`. Requires an allowed proposal.
void apply_proposal(Configuration& c, const PolymerModel& m, const GlauberProposal& proposal);

/// One Metropolis update: v and s uniform, accepted with probability
/// min(1, w(Γ′)/w(Γ)) when every new component is allowed. Returns whether
/// the state changed.
bool glauber_step(Configuration& c, const PolymerModel& m, Rng& rng);

/// e^{βΔ}.
double potts_eta(double beta, std::size_t delta);
/// max(λ, 1/λ).
double hardcore_eta(double lambda);

inline constexpr double kGlauberConstant = 64.0;
inline constexpr double kGlauberCeiling = 1e9;

/// constant · M · η^{M+1} · n² · ln n · ln(η/ε), evaluated in floating point.
double glauber_budget(std::size_t cap, double eta, std::size_t n, double epsilon,
                      double constant = kGlauberConstant);

struct GlauberOptions {
  double eta = std::exp(1.0);
  std::optional<std::uint64_t> steps_override;
  double ceiling = kGlauberCeiling;
  double constant = kGlauberConstant;
};

struct GlauberRun {
  std::uint64_t steps_taken = 0;
  std::uint64_t accepted = 0;
  double budget = 0.0;
  Configuration final;
  std::uint64_t seed = 0;
};

/// Runs glauber_step from the empty configuration. Throws BudgetError when
/// the default budget exceeds the ceiling and no override is given.
GlauberRun run_restricted_glauber(const PolymerModel& m, double epsilon, std::uint64_t seed,
                                  const GlauberOptions& options = {});

struct SingleUpdateReport {
  std::size_t polymers_checked = 0;
  /// Polymers whose DFS order from the minimum vertex has a disallowed prefix.
  std::size_t min_root_failures = 0;
  /// Polymers for which no DFS root yields allowed prefixes.
  std::vector<Polymer> failures;

  bool ok() const { return failures.empty(); }
};

/// For each allowed polymer of size ≤ k_max, searches for a DFS ordering
/// (minimum vertex first, then every other root) whose prefixes, with the
/// polymer's spins, are all allowed polymers.
SingleUpdateReport check_single_update_compatible(const PolymerModel& m, std::size_t k_max);

}  // namespace polymc
