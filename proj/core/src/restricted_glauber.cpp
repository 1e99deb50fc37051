#include "polymc/restricted_glauber.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polymc/errors.hpp"

namespace polymc {

TruncatedModel::TruncatedModel(const PolymerModel& base, std::size_t k) : base_(&base), k_(k) {
  if (k == 0) throw ValidationError("truncation size must be at least 1");
}

TruncatedModel truncate(const PolymerModel& m, std::size_t k) { return TruncatedModel(m, k); }

double truncation_size(std::size_t n, double epsilon, double tau) {
  if (!(tau > 0)) throw ValidationError("tau must be positive");
  return 3.0 * std::log(2.0 * static_cast<double>(n) / epsilon) / (2.0 * tau);
}

double potts_truncation_size(std::size_t n, double epsilon, double alpha, double beta) {
  if (!(alpha > 0 && beta > 0)) throw ValidationError("alpha and beta must be positive");
  return 3.0 * std::log(4.0 * static_cast<double>(n) / epsilon) / (2.0 * alpha * beta);
}

double hardcore_truncation_size(std::size_t n, double epsilon, double alpha, double lambda) {
  if (!(alpha > 0 && lambda > 1)) throw ValidationError("need alpha > 0 and lambda > 1");
  return 3.0 * (2.0 + alpha) * std::log(4.0 * static_cast<double>(n) / epsilon) /
         (2.0 * alpha * std::log(lambda));
}

std::size_t size_cap_from(double x) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(x)));
}

DeviationHardcoreModel::DeviationHardcoreModel(const HostGraph& g, const HardcoreParams& p,
                                               int side)
    : g_(&g), params_(p), side_(side) {
  if (!g.is_bipartite()) throw ValidationError("deviation model needs a bipartite graph");
  if (side != 0 && side != 1) throw ValidationError("side must be 0 or 1");
  if (!(p.lambda > 0)) throw ValidationError("lambda must be positive");
  vacancy_cap_ = g.part(side).size() / 4;
}

double DeviationHardcoreModel::log_weight(const Polymer& p) const {
  double exponent = 0.0;
  for (Vertex v : p.support) exponent += g_->side(v) == side_ ? -1.0 : 1.0;
  return exponent * std::log(params_.lambda);
}

std::optional<double> DeviationHardcoreModel::tau_hint() const {
  return params_.alpha / (2.0 + params_.alpha) * std::log(params_.lambda);
}

bool DeviationHardcoreModel::support_allowed(std::span<const Vertex> s) const {
  std::size_t vacancies = 0;
  for (Vertex v : s) {
    if (g_->side(v) == side_) {
      if (++vacancies > vacancy_cap_) return false;
    } else {
      for (Vertex w : g_->neighbors(v)) {
        if (!std::binary_search(s.begin(), s.end(), w)) return false;
      }
    }
  }
  return true;
}

DeviationHardcoreModel hc_deviation_model(const HostGraph& g, const HardcoreParams& p, int side) {
  return DeviationHardcoreModel(g, p, side);
}

IndependentSet deviation_to_independent_set(const Configuration& c, const DeviationHardcoreModel& m) {
  const auto spins = configuration_to_spins(c, m);
  IndependentSet out;
  for (Vertex v = 0; v < spins.size(); ++v) {
    if (spins[v] == 1) out.push_back(v);
  }
  return out;
}

namespace {

Spin current_spin(const Configuration& c, const PolymerModel& m, Vertex v) {
  const Polymer* p = c.covering(v);
  return p ? p->spin_at(v) : m.ground(v);
}

Polymer from_pairs(std::vector<std::pair<Vertex, Spin>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  Polymer p;
  p.support.reserve(pairs.size());
  p.spins.reserve(pairs.size());
  for (auto [v, s] : pairs) {
    p.support.push_back(v);
    p.spins.push_back(s);
  }
  return p;
}

}  // namespace

GlauberProposal glauber_proposal(const Configuration& c, const PolymerModel& m, Vertex v, Spin s) {
  GlauberProposal out;
  const Spin cur = current_spin(c, m, v);
  if (s == cur) {
    out.identity = true;
    return out;
  }
  const auto& g = m.host();
  const Polymer* home = c.covering(v);
  if (!home) {
    // v leaves the ground state and merges with every adjacent polymer.
    std::vector<std::pair<Vertex, Spin>> pairs{{v, s}};
    for (Vertex w : g.neighbors(v)) {
      const Polymer* p = c.covering(w);
      if (!p) continue;
      const bool seen = std::any_of(out.removed.begin(), out.removed.end(),
                                    [&](const Polymer& r) { return r == *p; });
      if (seen) continue;
      out.removed.push_back(*p);
      for (std::size_t j = 0; j < p->size(); ++j) pairs.emplace_back(p->support[j], p->spins[j]);
    }
    out.added.push_back(from_pairs(std::move(pairs)));
  } else if (s != m.ground(v)) {
    out.removed.push_back(*home);
    Polymer recoloured = *home;
    auto it = std::lower_bound(recoloured.support.begin(), recoloured.support.end(), v);
    recoloured.spins[static_cast<std::size_t>(it - recoloured.support.begin())] = s;
    out.added.push_back(std::move(recoloured));
  } else {
    // v returns to ground; the rest of its polymer may split.
    out.removed.push_back(*home);
    std::vector<std::uint8_t> done(home->size(), 0);
    auto index_of = [&](Vertex u) {
      auto it = std::lower_bound(home->support.begin(), home->support.end(), u);
      if (it == home->support.end() || *it != u) return home->size();
      return static_cast<std::size_t>(it - home->support.begin());
    };
    done[index_of(v)] = 1;
    for (std::size_t start = 0; start < home->size(); ++start) {
      if (done[start]) continue;
      std::vector<std::pair<Vertex, Spin>> pairs;
      std::vector<std::size_t> stack{start};
      done[start] = 1;
      while (!stack.empty()) {
        const std::size_t j = stack.back();
        stack.pop_back();
        pairs.emplace_back(home->support[j], home->spins[j]);
        for (Vertex w : g.neighbors(home->support[j])) {
          const std::size_t k = index_of(w);
          if (k < home->size() && !done[k]) {
            done[k] = 1;
            stack.push_back(k);
          }
        }
      }
      out.added.push_back(from_pairs(std::move(pairs)));
    }
    std::sort(out.added.begin(), out.added.end());
  }
  for (const auto& p : out.added) {
    if (!m.is_allowed(p)) {
      out.allowed = false;
      return out;
    }
  }
  for (const auto& p : out.added) out.log_ratio += m.log_weight(p);
  for (const auto& p : out.removed) out.log_ratio -= m.log_weight(p);
  return out;
}

void apply_proposal(Configuration& c, const PolymerModel& m, const GlauberProposal& proposal) {
  for (const auto& p : proposal.removed) c.remove(p);
  for (const auto& p : proposal.added) {
    if (!c.try_insert(p, m.log_weight(p))) {
      throw ValidationError("proposal produced an incompatible component");
    }
  }
}

bool glauber_step(Configuration& c, const PolymerModel& m, Rng& rng) {
  const auto v = static_cast<Vertex>(uniform_below(rng, m.host().size()));
  const auto s = static_cast<Spin>(uniform_below(rng, static_cast<std::uint64_t>(m.num_spins())));
  const double u = uniform01(rng);
  const GlauberProposal prop = glauber_proposal(c, m, v, s);
  if (prop.identity || !prop.allowed) return false;
  if (prop.log_ratio < 0 && u >= std::exp(prop.log_ratio)) return false;
  apply_proposal(c, m, prop);
  return true;
}

double potts_eta(double beta, std::size_t delta) {
  return std::exp(beta * static_cast<double>(delta));
}

double hardcore_eta(double lambda) { return std::max(lambda, 1.0 / lambda); }

double glauber_budget(std::size_t cap, double eta, std::size_t n, double epsilon, double constant) {
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(cap);
  return constant * md * std::pow(eta, md + 1.0) * nd * nd * std::log(nd) * std::log(eta / epsilon);
}

GlauberRun run_restricted_glauber(const PolymerModel& m, double epsilon, std::uint64_t seed,
                                  const GlauberOptions& options) {
  if (!(epsilon > 0 && epsilon < 1)) throw ValidationError("epsilon must lie in (0, 1)");
  GlauberRun run{0, 0, 0.0, Configuration(m.host()), seed};
  const std::size_t cap = std::min(m.max_size(), m.host().size());
  run.budget = glauber_budget(cap, options.eta, m.host().size(), epsilon, options.constant);
  std::uint64_t steps = 0;
  if (options.steps_override) {
    steps = *options.steps_override;
  } else {
    if (!(run.budget <= options.ceiling)) {
      std::ostringstream msg;
      msg << "default Glauber budget " << run.budget << " exceeds the ceiling " << options.ceiling
          << "; pass an explicit step count";
      throw BudgetError(msg.str());
    }
    steps = static_cast<std::uint64_t>(std::max(1.0, std::ceil(run.budget)));
  }
  Rng rng = chain_rng(seed);
  for (std::uint64_t t = 0; t < steps; ++t) {
    run.accepted += glauber_step(run.final, m, rng) ? 1 : 0;
    ++run.steps_taken;
  }
  return run;
}

namespace {

/// DFS preorder of p's support from `root`, neighbours in increasing order.
std::vector<std::size_t> dfs_order(const HostGraph& g, const Polymer& p, std::size_t root) {
  std::vector<std::size_t> order;
  std::vector<std::uint8_t> seen(p.size(), 0);
  std::vector<std::size_t> stack{root};
  while (!stack.empty()) {
    const std::size_t j = stack.back();
    stack.pop_back();
    if (seen[j]) continue;
    seen[j] = 1;
    order.push_back(j);
    const auto nb = g.neighbors(p.support[j]);
    for (auto it = nb.rbegin(); it != nb.rend(); ++it) {
      auto pos = std::lower_bound(p.support.begin(), p.support.end(), *it);
      if (pos != p.support.end() && *pos == *it) {
        const auto k = static_cast<std::size_t>(pos - p.support.begin());
        if (!seen[k]) stack.push_back(k);
      }
    }
  }
  return order;
}

bool prefixes_allowed(const PolymerModel& m, const Polymer& p, const std::vector<std::size_t>& order) {
  std::vector<std::pair<Vertex, Spin>> pairs;
  for (std::size_t j : order) {
    pairs.emplace_back(p.support[j], p.spins[j]);
    if (!m.is_allowed(from_pairs(pairs))) return false;
  }
  return true;
}

}  // namespace

SingleUpdateReport check_single_update_compatible(const PolymerModel& m, std::size_t k_max) {
  SingleUpdateReport report;
  for (const auto& wp : enumerate_polymers(m, k_max)) {
    const Polymer& p = wp.polymer;
    ++report.polymers_checked;
    if (prefixes_allowed(m, p, dfs_order(m.host(), p, 0))) continue;
    ++report.min_root_failures;
    bool found = false;
    for (std::size_t root = 1; root < p.size() && !found; ++root) {
      found = prefixes_allowed(m, p, dfs_order(m.host(), p, root));
    }
    if (!found) report.failures.push_back(p);
  }
  return report;
}

}  // namespace polymc
