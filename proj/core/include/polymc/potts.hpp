#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polymc/annealing.hpp"
#include "polymc/configuration.hpp"
#include "polymc/host_graph.hpp"
#include "polymc/polymer_dynamics.hpp"
#include "polymc/polymer_model.hpp"

namespace polymc {

struct PottsParams {
  int q = 2;
  double beta = 1.0;
  /// Claimed edge expansion of the host graph.
  double alpha = 1.0;
  Spin ground = 0;
  /// Polymer size cap M; defaults to ⌊n/2⌋.
  std::optional<std::size_t> size_cap;
};

/// (5 + 3 ln((q−1)Δ)) / α.
double potts_beta_threshold(int q, std::size_t delta, double alpha);

/// Polymers are connected sets of size ≤ M coloured from [q] \ {g}, with
/// weight e^{−βB(γ)}; B counts bichromatic edges inside γ plus the edge
/// boundary of γ. The host graph must outlive the model.
class PottsModel final : public PolymerModel {
 public:
  PottsModel(const HostGraph& g, const PottsParams& p);

  const HostGraph& host() const override { return *g_; }
  int num_spins() const override { return params_.q; }
  Spin ground(Vertex) const override { return params_.ground; }
  double log_weight(const Polymer& p) const override {
    return -params_.beta * static_cast<double>(boundary_count(p));
  }
  /// τ = αβ.
  std::optional<double> tau_hint() const override { return params_.alpha * params_.beta; }
  std::size_t max_size() const override { return cap_; }
  std::string name() const override { return "potts"; }

  /// B(γ) as an integer.
  std::size_t boundary_count(const Polymer& p) const;
  const PottsParams& params() const { return params_; }

 private:
  const HostGraph* g_;
  PottsParams params_;
  std::size_t cap_;
};

using Coloring = std::vector<Spin>;

/// f(Γ): the polymer spin on covered vertices, the ground colour elsewhere.
Coloring polymer_to_coloring(const Configuration& c, const PottsParams& p);
/// f⁻¹: components of non-ground vertices; they need not respect the cap.
std::vector<Polymer> coloring_to_polymers(const PottsModel& m, const Coloring& coloring);
/// m(G, σ).
std::size_t bichromatic_edges(const HostGraph& g, const Coloring& coloring);

struct PottsHypotheses {
  double beta_threshold = 0.0;
  bool threshold_met = false;
  ExpansionReport expansion;
  /// q e^{−n} ≤ ε < 1.
  bool epsilon_in_range = false;
  std::vector<std::string> warnings;

  bool all_hold() const { return threshold_met && expansion.holds() && epsilon_in_range; }
};

PottsHypotheses assess_potts(const HostGraph& g, const PottsParams& p, double epsilon);

struct PottsSample {
  Coloring coloring;
  Spin ground = 0;
  /// Exact Gibbs draw used because ε < q e^{−n}.
  bool brute_force = false;
  std::uint64_t steps_taken = 0;
  std::uint64_t work_units = 0;
  bool truncated = false;
  PottsHypotheses hypotheses;
};

inline constexpr double kPottsBruteForceStates = 1e7;

/// Uniform ground colour (stream 0 of `seed`), then the polymer dynamics on
/// that colour's model at accuracy ε/q (stream 1), mapped to a colouring.
/// When ε < q e^{−n} an exact draw is made instead if n ≤ 20 and
/// qⁿ ≤ 10⁷, otherwise ValidationError.
PottsSample sample_potts(const HostGraph& g, const PottsParams& p, double epsilon,
                         std::uint64_t seed, const ChainOptions& options = {});

struct PottsCountReport {
  /// log(q Ẑ^g).
  double log_z_hat = 0.0;
  EstimateReport estimate;  // for Ẑ^g
  PottsHypotheses hypotheses;
  /// Exact references on small instances.
  std::optional<double> log_z_exact;
  std::optional<double> log_polymer_z_exact;

  double z_hat() const { return std::exp(log_z_hat); }
};

/// q · Ẑ^g with Ẑ^g estimated at accuracy ε/(2q). Exact references are
/// attached when qⁿ ≤ 10⁷ (and |Ω| is enumerable for the polymer side).
PottsCountReport count_potts(const HostGraph& g, const PottsParams& p, double epsilon,
                             std::uint64_t seed, const AnnealingOptions& options = {},
                             bool with_references = true);

}  // namespace polymc
