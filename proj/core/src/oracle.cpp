#include "polymc/oracle.hpp"

#include <cmath>
#include <map>
#include <string>

#include "polymc/configuration.hpp"
#include "polymc/errors.hpp"
#include "polymc/polymer_dynamics.hpp"
#include "polymc/potts.hpp"
#include "polymc/restricted_glauber.hpp"

namespace polymc {

std::size_t sample_index(const std::vector<double>& probs, Rng& rng) {
  if (probs.empty()) throw ValidationError("cannot sample from an empty distribution");
  const double u = uniform01(rng);
  double acc = 0.0;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    acc += probs[j];
    if (u < acc) return j;
  }
  return probs.size() - 1;
}

namespace {

struct Enumerated {
  PolymerState state;
  double log_weight;
  std::size_t size;
};

void enumerate_compatible(const std::vector<WeightedPolymer>& polymers, std::size_t next,
                          Configuration& c, std::vector<std::size_t>& chosen, double log_w,
                          std::size_t covered, std::vector<Enumerated>& out, std::size_t budget) {
  if (out.size() >= budget) {
    throw BudgetError("configuration space exceeds the state budget of " + std::to_string(budget));
  }
  PolymerState state;
  state.reserve(chosen.size());
  for (std::size_t j : chosen) state.push_back(polymers[j].polymer);
  out.push_back({std::move(state), log_w, covered});
  for (std::size_t j = next; j < polymers.size(); ++j) {
    const auto& wp = polymers[j];
    if (!c.try_insert(wp.polymer, wp.log_weight)) continue;
    chosen.push_back(j);
    enumerate_compatible(polymers, j + 1, c, chosen, log_w + wp.log_weight,
                         covered + wp.polymer.size(), out, budget);
    chosen.pop_back();
    c.remove(wp.polymer);
  }
}

}  // namespace

PolymerPartition brute_polymer_partition(const PolymerModel& m, std::size_t size_limit,
                                         std::size_t state_budget) {
  PolymerPartition part;
  const std::size_t limit = std::min(size_limit, m.host().size());
  part.polymers = limit == 0 ? std::vector<WeightedPolymer>{} : enumerate_polymers(m, limit);
  Configuration c(m.host());
  std::vector<std::size_t> chosen;
  std::vector<Enumerated> all;
  enumerate_compatible(part.polymers, 0, c, chosen, 0.0, 0, all, state_budget);
  std::sort(all.begin(), all.end(),
            [](const Enumerated& a, const Enumerated& b) { return a.state < b.state; });
  long double z = 0;
  for (const auto& e : all) z += std::exp(static_cast<long double>(e.log_weight));
  part.z = z;
  part.log_z = static_cast<double>(std::log(z));
  for (auto& e : all) {
    part.gibbs.probs.push_back(static_cast<double>(std::exp(static_cast<long double>(e.log_weight)) / z));
    part.log_weights.push_back(e.log_weight);
    part.sizes.push_back(e.size);
    part.gibbs.states.push_back(std::move(e.state));
  }
  return part;
}

PolymerPartition brute_polymer_partition(const PolymerModel& m) {
  return brute_polymer_partition(m, m.max_size());
}

namespace {

void require_small(const HostGraph& g) {
  if (g.size() > 24) throw BudgetError("brute-force hard-core needs n <= 24");
}

std::vector<std::uint32_t> neighbour_masks(const HostGraph& g) {
  std::vector<std::uint32_t> masks(g.size(), 0);
  for (Vertex v = 0; v < g.size(); ++v) {
    for (Vertex u : g.neighbors(v)) masks[v] |= std::uint32_t{1} << u;
  }
  return masks;
}

template <class Visit>
void independent_sets(const std::vector<std::uint32_t>& adj, std::size_t v, std::uint32_t blocked,
                      std::uint32_t set, Visit& visit) {
  if (v == adj.size()) {
    visit(set);
    return;
  }
  independent_sets(adj, v + 1, blocked, set, visit);
  if (!((blocked >> v) & 1U)) {
    independent_sets(adj, v + 1, blocked | adj[v], set | (std::uint32_t{1} << v), visit);
  }
}

IndependentSet mask_to_set(std::uint32_t mask) {
  IndependentSet out;
  for (Vertex v = 0; mask != 0; ++v, mask >>= 1) {
    if (mask & 1U) out.push_back(v);
  }
  return out;
}

}  // namespace

long double brute_hardcore_partition(const HostGraph& g, double lambda) {
  require_small(g);
  const auto adj = neighbour_masks(g);
  std::vector<long double> by_size(g.size() + 1, 0);
  auto visit = [&](std::uint32_t set) { by_size[static_cast<std::size_t>(__builtin_popcount(set))] += 1; };
  independent_sets(adj, 0, 0, 0, visit);
  long double z = 0;
  for (std::size_t k = by_size.size(); k-- > 0;) z = z * lambda + by_size[k];
  return z;
}

long double hardcore_partition_by_subsets(const HostGraph& g, double lambda) {
  require_small(g);
  const auto edges = g.edges();
  long double z = 0;
  const std::uint64_t count = std::uint64_t{1} << g.size();
  for (std::uint64_t s = 0; s < count; ++s) {
    bool independent = true;
    for (auto [u, v] : edges) {
      if (((s >> u) & 1U) && ((s >> v) & 1U)) {
        independent = false;
        break;
      }
    }
    if (independent) z += std::pow(static_cast<long double>(lambda), __builtin_popcountll(s));
  }
  return z;
}

namespace {

void require_potts_feasible(const HostGraph& g, int q) {
  if (q < 2) throw ValidationError("q must be at least 2");
  if (std::pow(static_cast<double>(q), static_cast<double>(g.size())) > kPottsBruteForceStates) {
    throw BudgetError("brute-force Potts needs q^n <= 1e7");
  }
}

template <class Visit>
void for_each_colouring(const HostGraph& g, int q, Visit&& visit) {
  std::vector<Spin> colours(g.size(), 0);
  while (true) {
    visit(static_cast<const std::vector<Spin>&>(colours));
    std::size_t j = colours.size();
    while (j > 0) {
      --j;
      if (++colours[j] < q) break;
      colours[j] = 0;
      if (j == 0) return;
    }
  }
}

}  // namespace

PottsPartition brute_potts_partition(const HostGraph& g, int q, double beta) {
  require_potts_feasible(g, q);
  PottsPartition out;
  out.histogram.assign(g.num_edges() + 1, 0);
  for_each_colouring(g, q, [&](const std::vector<Spin>& c) { ++out.histogram[bichromatic_edges(g, c)]; });
  for (std::size_t k = 0; k < out.histogram.size(); ++k) {
    out.z += static_cast<long double>(out.histogram[k]) *
             std::exp(-static_cast<long double>(beta) * static_cast<long double>(k));
  }
  return out;
}

ExactDistribution<std::vector<Spin>> exact_potts_gibbs(const HostGraph& g, int q, double beta) {
  require_potts_feasible(g, q);
  std::vector<std::pair<std::vector<Spin>, long double>> mass;
  for_each_colouring(g, q, [&](const std::vector<Spin>& c) {
    mass.emplace_back(c, std::exp(-static_cast<long double>(beta) *
                                  static_cast<long double>(bichromatic_edges(g, c))));
  });
  return make_distribution(std::move(mass));
}

ExactDistribution<IndependentSet> exact_hardcore_gibbs(const HostGraph& g, double lambda) {
  require_small(g);
  const auto adj = neighbour_masks(g);
  std::vector<std::pair<IndependentSet, long double>> mass;
  auto visit = [&](std::uint32_t set) {
    mass.emplace_back(mask_to_set(set),
                      std::pow(static_cast<long double>(lambda), __builtin_popcount(set)));
  };
  independent_sets(adj, 0, 0, 0, visit);
  return make_distribution(std::move(mass));
}

ExactDistribution<IndependentSet> exact_hardcore_mixture(const HostGraph& g, const HardcoreParams& p) {
  if (!g.is_bipartite()) throw ValidationError("mixture law needs a bipartite graph");
  require_small(g);
  const long double lambda = p.lambda;
  const long double keep = lambda / (1 + lambda);
  PolymerPartition parts[2];
  long double side_mass[2];
  for (int i = 0; i < 2; ++i) {
    EvenOddHardcoreModel model(g, p, i);
    parts[i] = brute_polymer_partition(model);
    side_mass[i] = std::pow(1 + lambda, static_cast<long double>(g.part(1 - i).size())) * parts[i].z;
  }
  const long double total = side_mass[0] + side_mass[1];
  std::vector<std::pair<IndependentSet, long double>> mass;
  std::vector<std::uint8_t> blocked(g.size());
  for (int i = 0; i < 2; ++i) {
    const long double pick = side_mass[i] / total;
    const auto& gibbs = parts[i].gibbs;
    for (std::size_t s = 0; s < gibbs.states.size(); ++s) {
      std::fill(blocked.begin(), blocked.end(), 0);
      IndependentSet base;
      for (const auto& poly : gibbs.states[s]) {
        for (Vertex u : poly.support) {
          base.push_back(u);
          for (Vertex w : g.neighbors(u)) blocked[w] = 1;
        }
      }
      std::vector<Vertex> free;
      for (Vertex w : g.part(1 - i)) {
        if (!blocked[w]) free.push_back(w);
      }
      const long double state_mass = pick * static_cast<long double>(gibbs.probs[s]);
      for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << free.size()); ++sub) {
        IndependentSet set = base;
        std::size_t taken = 0;
        for (std::size_t j = 0; j < free.size(); ++j) {
          if ((sub >> j) & 1U) {
            set.push_back(free[j]);
            ++taken;
          }
        }
        std::sort(set.begin(), set.end());
        const long double pr = std::pow(keep, static_cast<long double>(taken)) *
                               std::pow(1 - keep, static_cast<long double>(free.size() - taken));
        mass.emplace_back(std::move(set), state_mass * pr);
      }
    }
  }
  return make_distribution(std::move(mass));
}

ExactDistribution<std::vector<Spin>> exact_potts_mixture(const HostGraph& g, int q, double beta,
                                                         std::optional<std::size_t> size_cap) {
  std::vector<std::pair<std::vector<Spin>, long double>> mass;
  for (Spin ground = 0; ground < q; ++ground) {
    PottsParams p;
    p.q = q;
    p.beta = beta;
    p.ground = ground;
    p.size_cap = size_cap;
    PottsModel model(g, p);
    const auto part = brute_polymer_partition(model);
    for (std::size_t s = 0; s < part.gibbs.states.size(); ++s) {
      std::vector<Spin> colours(g.size(), ground);
      for (const auto& poly : part.gibbs.states[s]) {
        for (std::size_t j = 0; j < poly.size(); ++j) colours[poly.support[j]] = poly.spins[j];
      }
      mass.emplace_back(std::move(colours),
                        static_cast<long double>(part.gibbs.probs[s]) / static_cast<long double>(q));
    }
  }
  return make_distribution(std::move(mass));
}

double ExactKernel::at(std::size_t i, std::size_t j) const {
  for (auto [k, p] : rows[i]) {
    if (k == j) return p;
  }
  return 0.0;
}

namespace {

Configuration state_configuration(const PolymerModel& m, const PolymerState& state) {
  Configuration c(m.host());
  for (const auto& p : state) c.try_insert(p, m.log_weight(p));
  return c;
}

std::size_t lookup(const ExactDistribution<PolymerState>& gibbs, const PolymerState& s) {
  auto idx = gibbs.index_of(s);
  if (!idx) throw ValidationError("transition leaves the enumerated state space");
  return *idx;
}

}  // namespace

ExactKernel exact_kernel(const PolymerModel& m, Dynamics dynamics, std::optional<double> tau) {
  const auto part = brute_polymer_partition(m, m.max_size(), kKernelStateLimit + 1);
  const auto& gibbs = part.gibbs;
  if (gibbs.states.size() > kKernelStateLimit) {
    throw BudgetError("exact kernel needs |Omega| <= 5000");
  }
  const std::size_t n = m.host().size();
  ExactKernel k;
  k.states = gibbs.states;
  k.rows.resize(gibbs.states.size());

  std::vector<NuLaw> laws;
  if (dynamics == Dynamics::polymer) {
    NuSampler sampler(m, tau);
    for (Vertex v = 0; v < n; ++v) laws.push_back(sampler.output_law(v));
  }
  const double q = m.num_spins();

  for (std::size_t i = 0; i < gibbs.states.size(); ++i) {
    const PolymerState& state = gibbs.states[i];
    const Configuration c = state_configuration(m, state);
    std::map<std::size_t, double> row;
    if (dynamics == Dynamics::polymer) {
      const double unit = 1.0 / (2.0 * static_cast<double>(n));
      for (Vertex v = 0; v < n; ++v) {
        if (const Polymer* cov = c.covering(v)) {
          PolymerState next = state;
          next.erase(std::find(next.begin(), next.end(), *cov));
          row[lookup(gibbs, next)] += unit;
        } else {
          row[i] += unit;
        }
        const NuLaw& law = laws[v];
        row[i] += law.empty * unit;
        for (std::size_t j = 0; j < law.polymers.size(); ++j) {
          const Polymer& gamma = law.polymers[j];
          if (c.can_insert(gamma)) {
            PolymerState next = state;
            next.insert(std::upper_bound(next.begin(), next.end(), gamma), gamma);
            row[lookup(gibbs, next)] += law.probs[j] * unit;
          } else {
            row[i] += law.probs[j] * unit;
          }
        }
      }
    } else {
      const double unit = 1.0 / (static_cast<double>(n) * q);
      for (Vertex v = 0; v < n; ++v) {
        for (Spin s = 0; s < m.num_spins(); ++s) {
          const GlauberProposal prop = glauber_proposal(c, m, v, s);
          if (prop.identity || !prop.allowed) {
            row[i] += unit;
            continue;
          }
          const double a = prop.log_ratio >= 0 ? 1.0 : std::exp(prop.log_ratio);
          PolymerState next;
          for (const auto& p : state) {
            if (std::find(prop.removed.begin(), prop.removed.end(), p) == prop.removed.end()) {
              next.push_back(p);
            }
          }
          next.insert(next.end(), prop.added.begin(), prop.added.end());
          std::sort(next.begin(), next.end());
          row[lookup(gibbs, next)] += a * unit;
          row[i] += (1.0 - a) * unit;
        }
      }
    }
    k.rows[i].assign(row.begin(), row.end());
  }
  return k;
}

BalanceReport check_detailed_balance(const ExactKernel& k, const std::vector<double>& mu) {
  if (mu.size() != k.rows.size()) throw ValidationError("distribution and kernel sizes differ");
  BalanceReport r;
  std::vector<double> mu_p(mu.size(), 0.0);
  for (std::size_t i = 0; i < k.rows.size(); ++i) {
    double row_sum = 0.0;
    for (auto [j, p] : k.rows[i]) {
      row_sum += p;
      mu_p[j] += mu[i] * p;
      r.max_flow_gap = std::max(r.max_flow_gap, std::abs(mu[i] * p - mu[j] * k.at(j, i)));
    }
    r.max_row_error = std::max(r.max_row_error, std::abs(row_sum - 1.0));
  }
  for (std::size_t j = 0; j < mu.size(); ++j) {
    r.max_stationarity_gap = std::max(r.max_stationarity_gap, std::abs(mu_p[j] - mu[j]));
  }
  return r;
}

double max_glauber_log_ratio(const PolymerModel& m) {
  const auto part = brute_polymer_partition(m, m.max_size(), kKernelStateLimit + 1);
  if (part.gibbs.states.size() > kKernelStateLimit) throw BudgetError("needs |Omega| <= 5000");
  double worst = 0.0;
  for (const auto& state : part.gibbs.states) {
    const Configuration c = state_configuration(m, state);
    for (Vertex v = 0; v < m.host().size(); ++v) {
      for (Spin s = 0; s < m.num_spins(); ++s) {
        const auto prop = glauber_proposal(c, m, v, s);
        if (!prop.identity && prop.allowed) worst = std::max(worst, std::abs(prop.log_ratio));
      }
    }
  }
  return worst;
}

double tv_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ValidationError("distributions have different supports");
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += std::abs(a[j] - b[j]);
  return 0.5 * sum;
}

double tv_distance_counts(const std::vector<std::uint64_t>& counts, const std::vector<double>& b,
                          std::uint64_t outside) {
  if (counts.size() != b.size()) throw ValidationError("distributions have different supports");
  std::uint64_t total = outside;
  for (auto c : counts) total += c;
  if (total == 0) throw ValidationError("no samples");
  const double nd = static_cast<double>(total);
  double sum = static_cast<double>(outside) / nd;
  for (std::size_t j = 0; j < b.size(); ++j) sum += std::abs(static_cast<double>(counts[j]) / nd - b[j]);
  return 0.5 * sum;
}

double tv_noise_sigma(const std::vector<double>& probs, std::uint64_t samples) {
  double sum = 0.0;
  for (double p : probs) sum += std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return 0.5 * sum;
}

}  // namespace polymc
