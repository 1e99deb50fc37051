#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "polymc/polymer_model.hpp"

namespace polymc {

enum class Condition { sampling, kotecky_preiss, mixing };
enum class Scope { exhaustive_to_size, claimed };

std::string to_string(Condition c);
std::string to_string(Scope s);

struct Violation {
  Polymer polymer;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct ConditionReport {
  Condition condition = Condition::sampling;
  /// τ for the sampling condition, θ for mixing, unused for Kotecký–Preiss.
  double parameter = 0.0;
  Scope scope = Scope::exhaustive_to_size;
  std::size_t k_max = 0;
  /// The model's size cap is ≤ k_max, so every polymer was examined.
  bool definitive = false;
  std::size_t polymers_checked = 0;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Smallest τ accepted by the sampling condition: 5 + 3 ln((q−1)Δ).
double sampling_tau_threshold(int q, std::size_t delta);

/// Records every allowed γ with |γ| ≤ k_max and w_γ > e^{−τ|γ|}.
/// Compared in log-space with an absolute slack of 1e−12.
ConditionReport check_sampling_condition(const PolymerModel& m, double tau, std::size_t k_max,
                                         std::size_t budget = kDefaultEnumerationBudget);

/// Σ_{γ′≁γ} |γ′| w_γ′ ≤ θ|γ| with both sums truncated at k_max.
ConditionReport check_mixing_condition(const PolymerModel& m, double theta, std::size_t k_max,
                                       std::size_t budget = kDefaultEnumerationBudget);

/// Σ_{γ′≁γ} e^{|γ′|} w_γ′ ≤ |γ| with both sums truncated at k_max.
ConditionReport check_kotecky_preiss(const PolymerModel& m, std::size_t k_max,
                                     std::size_t budget = kDefaultEnumerationBudget);

/// Largest τ with w_γ ≤ e^{−τ|γ|} for every allowed γ with |γ| ≤ k_max:
/// min over γ of −log w_γ / |γ|. +inf when there are no such polymers.
double max_sampling_tau(const PolymerModel& m, std::size_t k_max,
                        std::size_t budget = kDefaultEnumerationBudget);

/// Unchecked report carrying the model's claimed τ.
ConditionReport claim_sampling_condition(const PolymerModel& m);

}  // namespace polymc
