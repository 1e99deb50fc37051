#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "polymc/configuration.hpp"
#include "polymc/polymer_model.hpp"
#include "polymc/rng.hpp"
#include "polymc/subgraph_enum.hpp"

namespace polymc {

/// r = τ − 2 − ln((q−1)Δ), with Δ floored at 1. Throws ValidationError
/// when r ≤ 0, since the size draw would not terminate.
double truncation_rate(double tau, int q, std::size_t delta);

struct NuDraw {
  Polymer polymer;
  double log_weight = 0.0;
};

/// Exact output law of the sampler at one vertex: probs[j] is the
/// probability of polymers[j]; `empty` is the remaining mass.
struct NuLaw {
  std::vector<Polymer> polymers;
  std::vector<double> probs;
  std::vector<double> weights;  // w_γ, the target probabilities
  double empty = 1.0;
};

/// Draws from ν_v: polymer γ ∋ v with probability w_γ, nothing otherwise.
///
/// A size k is drawn with Pr[k ≥ j] = e^{−rj} and capped at the model's
/// size limit; the polymers of A_k(v) are then scanned once and γ is kept
/// with probability w_γ e^{r|γ|}. Holds scratch buffers, so one sampler per
/// thread.
class NuSampler {
 public:
  /// τ defaults to the model's tau_hint(); throws ValidationError if neither
  /// is available and the model has polymers.
  explicit NuSampler(const PolymerModel& m, std::optional<double> tau = std::nullopt);

  const PolymerModel& model() const { return *model_; }
  double tau() const { return tau_; }
  double rate() const { return r_; }
  std::size_t size_cap() const { return cap_; }

  /// Throws InvalidModelError if Σ_{γ∈A_k(v)} w_γ e^{r|γ|} > 1.
  /// Adds enumeration work to *work when given.
  std::optional<NuDraw> sample(Vertex v, Rng& rng, std::size_t* work = nullptr);

  /// Output law obtained by summing the truncated geometric mixture over
  /// every size. Throws like sample() for any size that would be invalid.
  NuLaw output_law(Vertex v);

 private:
  const PolymerModel* model_;
  double tau_ = 0.0;
  double r_ = 0.0;
  double exp_neg_r_ = 0.0;
  std::size_t cap_;
  ConnectedSetEnumerator en_;
  Polymer buf_;
};

/// One polymer-dynamics transition. Returns enumeration work units.
std::size_t step(Configuration& c, NuSampler& sampler, Rng& rng);

/// ⌈(2n/(1−θ))·ln(2n/ε)⌉.
std::uint64_t step_budget(std::size_t n, double epsilon, double theta);

inline constexpr double kDefaultTheta = 0.36787944117144233;  // 1/e
inline constexpr double kDefaultCapConst = 1e6;

struct ChainOptions {
  double theta = kDefaultTheta;
  /// Work cap is cap_const·n·ln(2n/ε); a value ≤ 0 truncates immediately.
  double cap_const = kDefaultCapConst;
  std::optional<double> tau;
  std::optional<std::uint64_t> steps_override;
};

struct ChainRun {
  std::uint64_t steps_taken = 0;
  /// One unit per step plus every enumerated support and labeling.
  std::uint64_t work_units = 0;
  /// The enumeration part of work_units.
  std::uint64_t enum_work = 0;
  bool truncated = false;
  Configuration final;
  std::uint64_t seed = 0;
};

/// Polymer dynamics from the empty configuration for step_budget(n, ε/2, θ)
/// steps. Reuses a sampler across runs.
class ChainRunner {
 public:
  explicit ChainRunner(const PolymerModel& m, ChainOptions options = {});

  ChainRun run(double epsilon, std::uint64_t seed);
  std::uint64_t steps_for(double epsilon) const;
  double work_cap(double epsilon) const;
  NuSampler& sampler() { return sampler_; }
  const ChainOptions& options() const { return options_; }

 private:
  const PolymerModel* model_;
  ChainOptions options_;
  NuSampler sampler_;
};

ChainRun run_chain(const PolymerModel& m, double epsilon, std::uint64_t seed,
                   const ChainOptions& options = {});

/// Engine used for a chain with the given seed.
inline Rng chain_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

}  // namespace polymc
