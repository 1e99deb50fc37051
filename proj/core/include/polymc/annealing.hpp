#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polymc/polymer_dynamics.hpp"
#include "polymc/polymer_model.hpp"

namespace polymc {

/// Same allowed set as `base`, weights multiplied by e^{−ρ|γ|}.
/// `base` must outlive the wrapper.
class TemperedModel final : public PolymerModel {
 public:
  TemperedModel(const PolymerModel& base, double rho);

  const HostGraph& host() const override { return base_->host(); }
  int num_spins() const override { return base_->num_spins(); }
  Spin ground(Vertex v) const override { return base_->ground(v); }
  double log_weight(const Polymer& p) const override {
    return base_->log_weight(p) - rho_ * static_cast<double>(p.size());
  }
  /// w_γ e^{−ρ|γ|} ≤ e^{−(τ+ρ)|γ|}.
  std::optional<double> tau_hint() const override;
  std::size_t max_size() const override { return base_->max_size(); }
  bool eligible(Vertex v) const override { return base_->eligible(v); }
  bool support_allowed(std::span<const Vertex> s) const override { return base_->support_allowed(s); }
  bool labeling_allowed(const Polymer& p) const override { return base_->labeling_allowed(p); }
  std::string name() const override { return base_->name() + "@tempered"; }

  double rho() const { return rho_; }
  const PolymerModel& base() const { return *base_; }

 private:
  const PolymerModel* base_;
  double rho_;
};

struct AnnealingSchedule {
  std::size_t n = 0;
  double epsilon = 0.0;
  std::uint64_t ell = 0;  // ⌈n ln(4e(q−1)Δn/ε)⌉
  std::uint64_t m = 0;    // ⌈64/ε²⌉

  /// ρ_i = i/n.
  double rho(std::uint64_t i) const { return static_cast<double>(i) / static_cast<double>(n); }
  /// Accuracy of every chain draw: 1/(8ℓm).
  double chain_epsilon() const { return 1.0 / (8.0 * static_cast<double>(ell) * static_cast<double>(m)); }

  /// Δ is floored at 1.
  static AnnealingSchedule make(std::size_t n, int q, std::size_t delta, double epsilon);
  static AnnealingSchedule for_model(const PolymerModel& m, double epsilon);
};

struct AnnealingOptions {
  ChainOptions chain;
  unsigned threads = 1;
  /// Replaces ℓ and m (desk-scale experiments only).
  std::optional<std::uint64_t> ell_override;
  std::optional<std::uint64_t> samples_override;
};

struct EstimateReport {
  double log_z_hat = 0.0;
  AnnealingSchedule schedule;
  std::uint64_t seed = 0;
  /// Number of independent estimates the result is the median of.
  std::uint64_t amplification = 1;
  /// Claimed failure probability.
  double failure_budget = 0.25;
  std::uint64_t steps_per_chain = 0;
  std::uint64_t work_units = 0;
  std::uint64_t truncated_runs = 0;
  /// log Ẑ of each trial, in trial order (amplified estimates only).
  std::vector<double> trial_log_estimates;
  std::vector<std::string> warnings;

  double z_hat() const { return std::exp(log_z_hat); }
};

/// Ẑ = 1 / mean_j ∏_i W_i^{(j)} with W_i = e^{−|Γ_i|/n}, Γ_i drawn by the
/// polymer dynamics on the model tempered at ρ_i. Chain (j, i) is seeded
/// with derive_seed(seed, j, i), so the result does not depend on threads.
EstimateReport estimate_partition(const PolymerModel& m, double epsilon, std::uint64_t seed,
                                  const AnnealingOptions& options = {});

/// ⌈12 ln(1/δ)⌉.
std::uint64_t median_trials(double delta);

/// Median (lower middle) of median_trials(δ) estimates; trial t uses seed
/// derive_seed(seed, kMedianStream, t).
EstimateReport estimate_with_median(const PolymerModel& m, double epsilon, double delta,
                                    std::uint64_t seed, const AnnealingOptions& options = {});

inline constexpr std::uint64_t kMedianStream = 0x6d656469616eULL;

/// log Σ e^{x_i} − log N, shifted by the maximum.
double log_mean_exp(const std::vector<double>& xs);

}  // namespace polymc
