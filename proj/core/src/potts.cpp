#include "polymc/potts.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polymc/conditions.hpp"
#include "polymc/errors.hpp"
#include "polymc/oracle.hpp"
#include "polymc/rng.hpp"

namespace polymc {

double potts_beta_threshold(int q, std::size_t delta, double alpha) {
  if (!(alpha > 0)) throw ValidationError("alpha must be positive");
  return sampling_tau_threshold(q, delta) / alpha;
}

namespace {

void validate(const HostGraph& g, const PottsParams& p) {
  if (p.q < 2) throw ValidationError("Potts model needs q >= 2");
  if (!(p.beta > 0)) throw ValidationError("beta must be positive");
  if (!(p.alpha > 0)) throw ValidationError("alpha must be positive");
  if (p.ground < 0 || p.ground >= p.q) throw ValidationError("ground colour out of range");
  (void)g;
}

}  // namespace

PottsModel::PottsModel(const HostGraph& g, const PottsParams& p)
    : g_(&g), params_(p), cap_(p.size_cap.value_or(g.size() / 2)) {
  validate(g, p);
}

std::size_t PottsModel::boundary_count(const Polymer& p) const {
  std::size_t b = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const Vertex u = p.support[j];
    for (Vertex w : g_->neighbors(u)) {
      auto it = std::lower_bound(p.support.begin(), p.support.end(), w);
      if (it == p.support.end() || *it != w) {
        ++b;
      } else if (u < w && p.spins[static_cast<std::size_t>(it - p.support.begin())] != p.spins[j]) {
        ++b;
      }
    }
  }
  return b;
}

Coloring polymer_to_coloring(const Configuration& c, const PottsParams& p) {
  Coloring colors(c.host().size(), p.ground);
  for (const auto& poly : c.polymers()) {
    for (std::size_t j = 0; j < poly.size(); ++j) colors[poly.support[j]] = poly.spins[j];
  }
  return colors;
}

std::vector<Polymer> coloring_to_polymers(const PottsModel& m, const Coloring& coloring) {
  return spins_to_polymers(m, coloring);
}

std::size_t bichromatic_edges(const HostGraph& g, const Coloring& coloring) {
  if (coloring.size() != g.size()) throw ValidationError("colouring has the wrong length");
  std::size_t count = 0;
  for (auto [u, v] : g.edges()) count += coloring[u] != coloring[v] ? 1 : 0;
  return count;
}

PottsHypotheses assess_potts(const HostGraph& g, const PottsParams& p, double epsilon) {
  PottsHypotheses h;
  h.beta_threshold = potts_beta_threshold(p.q, g.max_degree(), p.alpha);
  h.threshold_met = p.beta >= h.beta_threshold;
  h.expansion = check_edge_expansion(g, p.alpha);
  const double floor_eps = p.q * std::exp(-static_cast<double>(g.size()));
  h.epsilon_in_range = epsilon >= floor_eps && epsilon < 1;
  std::ostringstream msg;
  if (!h.threshold_met) {
    msg << "beta " << p.beta << " is below the threshold " << h.beta_threshold;
    h.warnings.push_back(msg.str());
  }
  if (h.expansion.verification == Verification::unverified) {
    h.warnings.push_back("edge expansion not verified (graph above exact cutoff)");
  } else if (h.expansion.witness) {
    h.warnings.push_back("graph is not an alpha-expander for the given alpha");
  }
  if (!h.epsilon_in_range) {
    h.warnings.push_back("epsilon outside [q e^-n, 1)");
  }
  return h;
}

PottsSample sample_potts(const HostGraph& g, const PottsParams& p, double epsilon,
                         std::uint64_t seed, const ChainOptions& options) {
  validate(g, p);
  if (!(epsilon > 0 && epsilon < 1)) throw ValidationError("epsilon must lie in (0, 1)");
  PottsSample out;
  out.hypotheses = assess_potts(g, p, epsilon);
  Rng ground_rng = chain_rng(derive_seed(seed, 0));
  out.ground = static_cast<Spin>(uniform_below(ground_rng, static_cast<std::uint64_t>(p.q)));

  const double n = static_cast<double>(g.size());
  if (epsilon < p.q * std::exp(-n)) {
    if (g.size() > 20 || std::pow(static_cast<double>(p.q), n) > kPottsBruteForceStates) {
      throw ValidationError("epsilon below q e^-n and the instance is too large for brute force");
    }
    const auto exact = exact_potts_gibbs(g, p.q, p.beta);
    Rng rng = chain_rng(derive_seed(seed, 1));
    out.coloring = exact.states[sample_index(exact.probs, rng)];
    out.brute_force = true;
    return out;
  }

  PottsParams side = p;
  side.ground = out.ground;
  PottsModel model(g, side);
  const ChainRun run = run_chain(model, epsilon / p.q, derive_seed(seed, 1), options);
  out.coloring = polymer_to_coloring(run.final, side);
  out.steps_taken = run.steps_taken;
  out.work_units = run.work_units;
  out.truncated = run.truncated;
  return out;
}

PottsCountReport count_potts(const HostGraph& g, const PottsParams& p, double epsilon,
                             std::uint64_t seed, const AnnealingOptions& options,
                             bool with_references) {
  validate(g, p);
  if (!(epsilon > 0 && epsilon < 1)) throw ValidationError("epsilon must lie in (0, 1)");
  PottsCountReport report;
  report.hypotheses = assess_potts(g, p, epsilon);
  PottsModel model(g, p);
  report.estimate = estimate_partition(model, epsilon / (2.0 * p.q), seed, options);
  report.log_z_hat = std::log(static_cast<double>(p.q)) + report.estimate.log_z_hat;
  if (with_references &&
      std::pow(static_cast<double>(p.q), static_cast<double>(g.size())) <= kPottsBruteForceStates) {
    report.log_z_exact = static_cast<double>(std::log(brute_potts_partition(g, p.q, p.beta).z));
    try {
      report.log_polymer_z_exact = brute_polymer_partition(model, model.max_size()).log_z;
    } catch (const BudgetError&) {
    }
  }
  return report;
}

}  // namespace polymc
