#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polymc/annealing.hpp"
#include "polymc/host_graph.hpp"
#include "polymc/polymer_dynamics.hpp"
#include "polymc/polymer_model.hpp"

namespace polymc {

struct HardcoreParams {
  double lambda = 1.0;
  /// Claimed bipartite vertex expansion, in (0, 1).
  double alpha = 0.5;
};

/// (3Δ)^{6/α}.
double hardcore_lambda_threshold(std::size_t delta, double alpha);

/// Single-vertex polymers of weight λ on host g: Ω is the set of
/// independent sets of g. τ = −ln λ. The graph must outlive the model.
class VertexHardcoreModel final : public PolymerModel {
 public:
  VertexHardcoreModel(const HostGraph& g, double lambda);

  const HostGraph& host() const override { return *g_; }
  int num_spins() const override { return 2; }
  Spin ground(Vertex) const override { return 0; }
  double log_weight(const Polymer& p) const override {
    return log_lambda_ * static_cast<double>(p.size());
  }
  std::optional<double> tau_hint() const override { return -log_lambda_; }
  std::size_t max_size() const override { return 1; }
  std::string name() const override { return "monomer"; }

 private:
  const HostGraph* g_;
  double log_lambda_;
};

/// Side-i polymer model: host G², polymers are subsets of Vⁱ connected in
/// G² with |γ| ≤ ⌊|Vⁱ|/2⌋ and weight λ^{|γ|}/(1+λ)^{|N_G(γ)|}. τ = α ln λ.
/// The bipartite graph g must outlive the model; G² is owned.
class EvenOddHardcoreModel final : public PolymerModel {
 public:
  EvenOddHardcoreModel(const HostGraph& g, const HardcoreParams& p, int side);

  const HostGraph& host() const override { return *square_; }
  int num_spins() const override { return 2; }
  Spin ground(Vertex) const override { return 0; }
  double log_weight(const Polymer& p) const override;
  std::optional<double> tau_hint() const override { return params_.alpha * std::log(params_.lambda); }
  std::size_t max_size() const override { return cap_; }
  bool eligible(Vertex v) const override { return g_->side(v) == side_; }
  std::string name() const override { return "hardcore-side" + std::to_string(side_); }

  const HostGraph& base() const { return *g_; }
  int side() const { return side_; }
  const HardcoreParams& params() const { return params_; }
  /// |N_G(γ)|.
  std::size_t neighbourhood_size(const Polymer& p) const;

 private:
  const HostGraph* g_;
  std::shared_ptr<const HostGraph> square_;
  HardcoreParams params_;
  int side_;
  std::size_t cap_;
};

std::unique_ptr<EvenOddHardcoreModel> hc_polymer_model(const HostGraph& g, const HardcoreParams& p,
                                                       int side);

using IndependentSet = std::vector<Vertex>;  // sorted

bool is_independent_set(const HostGraph& g, const IndependentSet& set);

struct HardcoreHypotheses {
  double lambda_threshold = 0.0;
  bool threshold_met = false;
  ExpansionReport expansion;
  /// 4e^{−n} ≤ ε < 1.
  bool epsilon_in_range = false;
  std::vector<std::string> warnings;

  bool all_hold() const { return threshold_met && expansion.holds() && epsilon_in_range; }
};

HardcoreHypotheses assess_hardcore(const HostGraph& g, const HardcoreParams& p, double epsilon);

struct HardcoreCountOptions {
  AnnealingOptions annealing;
  /// Per-side accuracy; defaults to ε/32.
  std::optional<double> count_epsilon;
  /// Per-side failure budget; defaults to ε/32.
  std::optional<double> count_delta;
};

struct HardcoreCountReport {
  double log_z_hat = 0.0;
  EstimateReport side[2];
  HardcoreHypotheses hypotheses;
  std::optional<double> log_z_exact;

  double z_hat() const { return std::exp(log_z_hat); }
};

/// Ẑ = (1+λ)^{|V¹|} Ẑ⁰ + (1+λ)^{|V⁰|} Ẑ¹, each side amplified by the
/// median; side i uses seed derive_seed(seed, kHardcoreSideStream, i).
HardcoreCountReport count_hardcore(const HostGraph& g, const HardcoreParams& p, double epsilon,
                                   std::uint64_t seed, const HardcoreCountOptions& options = {},
                                   bool with_references = true);

inline constexpr std::uint64_t kHardcoreSideStream = 0x68617264ULL;

struct HardcoreSample {
  IndependentSet set;
  int side = 0;
  std::uint64_t steps_taken = 0;
  bool truncated = false;
};

/// Two-sided sampler prepared from side estimates log Ẑ⁰, log Ẑ¹.
/// Each draw picks side 0 with probability (1+λ)^{|V¹|}Ẑ⁰/Ẑ, runs the
/// side's polymer dynamics at accuracy ε/8 and fills the opposite side.
class HardcoreSampler {
 public:
  HardcoreSampler(const HostGraph& g, const HardcoreParams& p, double epsilon, double log_z0,
                  double log_z1, const ChainOptions& options = {});

  HardcoreSample draw(std::uint64_t seed);
  double side0_probability() const { return p0_; }

 private:
  const HostGraph* g_;
  HardcoreParams params_;
  double epsilon_;
  double p0_;
  std::unique_ptr<EvenOddHardcoreModel> models_[2];
  std::unique_ptr<ChainRunner> runners_[2];
  std::vector<std::uint8_t> blocked_;
};

struct HardcoreSampleReport {
  HardcoreSample sample;
  HardcoreCountReport count;
};

HardcoreSampleReport sample_hardcore(const HostGraph& g, const HardcoreParams& p, double epsilon,
                                     std::uint64_t seed, const HardcoreCountOptions& options = {});

/// Stream of `seed` used for the draw after counting.
inline constexpr std::uint64_t kHardcoreDrawStream = 0x64726177ULL;

}  // namespace polymc
