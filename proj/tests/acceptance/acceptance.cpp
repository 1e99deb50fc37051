// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "polymc/annealing.hpp"
#include "polymc/conditions.hpp"
#include "polymc/configuration.hpp"
#include "polymc/errors.hpp"
#include "polymc/hardcore.hpp"
#include "polymc/host_graph.hpp"
#include "polymc/oracle.hpp"
#include "polymc/polymer_dynamics.hpp"
#include "polymc/polymer_model.hpp"
#include "polymc/potts.hpp"
#include "polymc/restricted_glauber.hpp"

namespace {

using namespace polymc;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

PottsParams potts(int q, double beta, std::optional<std::size_t> cap = std::nullopt, double alpha = 1.0) {
  PottsParams p;
  p.q = q;
  p.beta = beta;
  p.alpha = alpha;
  p.size_cap = cap;
  return p;
}

/// Graphs stay alive for the lifetime of the models built on them.
struct Instance {
  std::string label;
  std::shared_ptr<const HostGraph> graph;
  std::shared_ptr<const PolymerModel> model;
};

template <class Model, class... Args>
Instance make_instance(std::string label, HostGraph g, Args&&... args) {
  auto graph = std::make_shared<const HostGraph>(std::move(g));
  auto model = std::make_shared<const Model>(*graph, std::forward<Args>(args)...);
  return {std::move(label), graph, model};
}

/// Single-vertex hard-core on paths and cycles plus Potts K2, P3, C4 at q = 2, β = 5.
std::vector<Instance> small_instances() {
  std::vector<Instance> out;
  for (double lambda : {std::exp(-10.0), 0.05}) {
    const std::string l = lambda < 0.01 ? "e^-10" : "0.05";
    out.push_back(make_instance<VertexHardcoreModel>("hc P3 l=" + l, path_graph(3), lambda));
    out.push_back(make_instance<VertexHardcoreModel>("hc P6 l=" + l, path_graph(6), lambda));
    out.push_back(make_instance<VertexHardcoreModel>("hc C4 l=" + l, cycle_graph(4), lambda));
    out.push_back(make_instance<VertexHardcoreModel>("hc C6 l=" + l, cycle_graph(6), lambda));
  }
  out.push_back(make_instance<PottsModel>("potts K2", complete_graph(2), potts(2, 5.0)));
  out.push_back(make_instance<PottsModel>("potts P3", path_graph(3), potts(2, 5.0)));
  out.push_back(make_instance<PottsModel>("potts C4", cycle_graph(4), potts(2, 5.0)));
  return out;
}

Outcome ac1_polymer_stationarity() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::size_t count = 0;
  for (const auto& inst : small_instances()) {
    const auto part = brute_polymer_partition(*inst.model);
    const auto kernel = exact_kernel(*inst.model, Dynamics::polymer);
    if (kernel.states != part.gibbs.states) return {false, inst.label + ": kernel and Gibbs state lists differ"};
    const auto bal = check_detailed_balance(kernel, part.gibbs.probs);
    worst = std::max({worst, bal.max_flow_gap, bal.max_stationarity_gap, bal.max_row_error});
    ++count;
  }
  const double secs = seconds_since(t0);
  const bool pass = count >= 5 && worst <= 1e-12 && secs < 10.0;
  return {pass, std::to_string(count) + " instances, max balance/row gap " + fmt(worst) +
                    " (tol 1e-12), " + fmt(secs) + " s (limit 10 s)"};
}

Outcome ac2_sampler_law() {
  double worst_law = 0.0;
  double worst_tv = 0.0;
  double worst_allowance = 0.0;
  bool mc_ok = true;
  const std::uint64_t draws = 1'000'000;
  std::uint64_t seed = 1;
  for (const auto& inst : small_instances()) {
    const PolymerModel& m = *inst.model;
    NuSampler sampler(m);
    // Reference ν_v from an independent enumeration of allowed polymers.
    const auto all = enumerate_polymers(m, m.max_size());
    for (Vertex v = 0; v < m.host().size(); ++v) {
      std::vector<Polymer> ref_polys;
      std::vector<double> ref_probs;
      double mass = 0.0;
      for (const auto& wp : all) {
        if (!wp.polymer.contains(v)) continue;
        ref_polys.push_back(wp.polymer);
        ref_probs.push_back(std::exp(wp.log_weight));
        mass += ref_probs.back();
      }
      const NuLaw law = sampler.output_law(v);
      std::vector<double> got(ref_polys.size(), 0.0);
      for (std::size_t j = 0; j < law.polymers.size(); ++j) {
        auto it = std::find(ref_polys.begin(), ref_polys.end(), law.polymers[j]);
        if (it == ref_polys.end()) return {false, inst.label + ": sampler emits a polymer outside the model"};
        got[static_cast<std::size_t>(it - ref_polys.begin())] += law.probs[j];
      }
      for (std::size_t j = 0; j < got.size(); ++j) worst_law = std::max(worst_law, std::abs(got[j] - ref_probs[j]));
      worst_law = std::max(worst_law, std::abs(law.empty - (1.0 - mass)));

      if (v != 0) continue;
      ref_probs.push_back(1.0 - mass);
      std::vector<std::uint64_t> counts(ref_probs.size(), 0);
      std::uint64_t outside = 0;
      Rng rng = chain_rng(seed++);
      for (std::uint64_t i = 0; i < draws; ++i) {
        const auto d = sampler.sample(v, rng);
        if (!d) {
          ++counts.back();
          continue;
        }
        auto it = std::find(ref_polys.begin(), ref_polys.end(), d->polymer);
        if (it == ref_polys.end()) {
          ++outside;
        } else {
          ++counts[static_cast<std::size_t>(it - ref_polys.begin())];
        }
      }
      const double tv = tv_distance_counts(counts, ref_probs, outside);
      worst_tv = std::max(worst_tv, tv);
      worst_allowance = std::max(worst_allowance, tv_noise_sigma(ref_probs, draws));
      mc_ok = mc_ok && tv <= 0.005;
    }
  }
  const bool pass = worst_law <= 1e-12 && mc_ok;
  return {pass, "max |law - nu| " + fmt(worst_law) + " (tol 1e-12); max MC TV " + fmt(worst_tv) +
                    " over 1e6 draws (tol 0.005, sigma " + fmt(worst_allowance) + ")"};
}

Outcome ac3_convergence() {
  const auto t0 = Clock::now();
  std::vector<Instance> insts;
  insts.push_back(make_instance<VertexHardcoreModel>("hc P3", path_graph(3), std::exp(-10.0)));
  insts.push_back(make_instance<PottsModel>("potts C4", cycle_graph(4), potts(2, 5.0)));
  const auto expansion = check_edge_expansion(*insts[1].graph, 1.0);
  if (!expansion.holds() || expansion.verification != Verification::exact) {
    return {false, "C4 is not an exactly verified 1-expander"};
  }
  const std::uint64_t runs = 1'000'000;
  const double epsilon = 0.05;
  std::ostringstream detail;
  bool pass = true;
  for (const auto& inst : insts) {
    const auto part = brute_polymer_partition(*inst.model);
    ChainRunner runner(*inst.model);
    std::vector<std::uint64_t> counts(part.gibbs.states.size(), 0);
    std::uint64_t outside = 0;
    for (std::uint64_t s = 0; s < runs; ++s) {
      const ChainRun run = runner.run(epsilon, derive_seed(7, s));
      const auto idx = part.gibbs.index_of(run.final.sorted_polymers());
      if (idx) {
        ++counts[*idx];
      } else {
        ++outside;
      }
    }
    const double tv = tv_distance_counts(counts, part.gibbs.probs, outside);
    const double sigma = tv_noise_sigma(part.gibbs.probs, runs);
    const bool ok = tv <= epsilon + 3 * sigma;
    pass = pass && ok;
    detail << inst.label << " TV " << fmt(tv) << " (tol " << fmt(epsilon + 3 * sigma) << "); ";
  }
  const double secs = seconds_since(t0);
  pass = pass && secs < 300.0;
  detail << fmt(secs) << " s (limit 300 s)";
  return {pass, detail.str()};
}

/// Z at inverse temperature ρ computed from the untempered enumeration.
long double tempered_z(const PolymerPartition& base, double rho) {
  long double z = 0;
  for (std::size_t s = 0; s < base.sizes.size(); ++s) {
    z += std::exp(static_cast<long double>(base.log_weights[s]) - static_cast<long double>(rho) * base.sizes[s]);
  }
  return z;
}

Outcome ac4_annealing() {
  std::vector<Instance> insts;
  insts.push_back(make_instance<VertexHardcoreModel>("hc P3", path_graph(3), 0.05));
  insts.push_back(make_instance<VertexHardcoreModel>("hc C6", cycle_graph(6), 0.05));
  insts.push_back(make_instance<PottsModel>("potts K2", complete_graph(2), potts(2, 5.0)));
  insts.push_back(make_instance<PottsModel>("potts C4", cycle_graph(4), potts(2, 3.0)));
  insts.push_back(make_instance<DecayModel>("decay C5", cycle_graph(5), 2, 8.0));
  insts.push_back(make_instance<DecayModel>("decay P4", path_graph(4), 3, 9.0));
  const double epsilon = 0.1;
  double moment_gap = 0.0;
  double worst_var = 0.0;
  double worst_end = 0.0;
  double worst_first = std::numeric_limits<double>::infinity();
  bool pass = true;
  for (const auto& inst : insts) {
    const PolymerModel& m = *inst.model;
    const auto sched = AnnealingSchedule::for_model(m, epsilon);
    const double n = static_cast<double>(sched.n);
    const auto base = brute_polymer_partition(m);
    for (std::uint64_t i = 0; i + 2 <= sched.ell; ++i) {
      const double rho = sched.rho(i);
      const auto at = brute_polymer_partition(TemperedModel(m, rho));
      long double ew = 0;
      long double ew2 = 0;
      for (std::size_t s = 0; s < at.gibbs.states.size(); ++s) {
        const long double w = std::exp(-static_cast<long double>(at.sizes[s]) / n);
        ew += at.gibbs.probs[s] * w;
        ew2 += at.gibbs.probs[s] * w * w;
      }
      const long double z0 = tempered_z(base, rho);
      const long double z1 = tempered_z(base, sched.rho(i + 1));
      const long double z2 = tempered_z(base, sched.rho(i + 2));
      moment_gap = std::max({moment_gap, static_cast<double>(std::abs(ew - z1 / z0)),
                             static_cast<double>(std::abs(ew2 - z2 / z0))});
      worst_var = std::max(worst_var, static_cast<double>((ew2 - ew * ew) / (ew * ew)));
    }
    const double z_end = static_cast<double>(tempered_z(base, sched.rho(sched.ell)));
    worst_end = std::max(worst_end, z_end);
    pass = pass && z_end >= 1.0 && z_end <= std::exp(epsilon / 2);
    worst_first = std::min(worst_first, static_cast<double>(tempered_z(base, sched.rho(1)) / base.z));
  }
  pass = pass && moment_gap <= 1e-10 && worst_var <= std::exp(1.0) - 1 && worst_first >= std::exp(-1.0);
  return {pass, std::to_string(insts.size()) + " instances; moment gap " + fmt(moment_gap) +
                    " (tol 1e-10); max Var/E^2 " + fmt(worst_var) + " (<= e-1); max Z(rho_l) " +
                    fmt(worst_end) + " (<= e^{eps/2}); min Z(rho_1)/Z(0) " + fmt(worst_first) + " (>= 1/e)"};
}

Outcome ac5_counting() {
  const auto t0 = Clock::now();
  std::vector<Instance> insts;
  insts.push_back(make_instance<VertexHardcoreModel>("hc P3 l=e^-10", path_graph(3), std::exp(-10.0)));
  insts.push_back(make_instance<VertexHardcoreModel>("hc P3 l=0.05", path_graph(3), 0.05));
  insts.push_back(make_instance<VertexHardcoreModel>("hc C6 l=0.06", cycle_graph(6), 0.06));
  insts.push_back(make_instance<PottsModel>("potts C4 b=3", cycle_graph(4), potts(2, 3.0)));
  const double epsilon = 0.2;
  const int runs = 100;
  bool pass = true;
  std::ostringstream detail;
  for (const auto& inst : insts) {
    const double log_z = brute_polymer_partition(*inst.model).log_z;
    int hits = 0;
    for (int s = 0; s < runs; ++s) {
      const auto est = estimate_partition(*inst.model, epsilon, derive_seed(11, static_cast<std::uint64_t>(s)));
      hits += std::abs(est.log_z_hat - log_z) <= epsilon ? 1 : 0;
    }
    pass = pass && hits >= 75;
    detail << inst.label << " (ln Z " << fmt(log_z) << ") " << hits << "/" << runs << "; ";
  }
  const double secs = seconds_since(t0);
  pass = pass && secs < 600.0;
  detail << "need >= 75; " << fmt(secs) << " s (limit 600 s)";
  return {pass, detail.str()};
}

Outcome ac6_hierarchy() {
  std::vector<Instance> insts;
  std::vector<HostGraph> graphs{path_graph(4), cycle_graph(5), complete_graph(4), star_graph(3),
                                complete_bipartite_graph(2, 3), cycle_graph(6, true)};
  for (std::uint64_t seed = 0; seed < 3; ++seed) graphs.push_back(generate_random_regular_bipartite(4, 3, seed));
  for (const auto& g : graphs) {
    for (int q : {2, 3}) {
      const double tau = sampling_tau_threshold(q, g.max_degree());
      for (std::size_t cap : {1, 2, 3}) {
        insts.push_back(make_instance<DecayModel>("decay", g, q, tau, cap));
        insts.push_back(make_instance<PottsModel>("potts", g, potts(q, tau, cap)));
      }
      insts.push_back(make_instance<DecayModel>("decay", g, q, tau + 1.0, 4));
    }
    const double tau2 = sampling_tau_threshold(2, g.max_degree());
    insts.push_back(make_instance<VertexHardcoreModel>("hc", g, std::exp(-tau2)));
  }
  std::size_t passing = 0;
  std::size_t kp_violations = 0;
  std::size_t mixing_violations = 0;
  for (const auto& inst : insts) {
    const PolymerModel& m = *inst.model;
    const double tau = sampling_tau_threshold(m.num_spins(), m.host().max_degree());
    const std::size_t cap = std::min(m.max_size(), m.host().size());
    if (!check_sampling_condition(m, tau, cap).ok()) continue;
    ++passing;
    kp_violations += check_kotecky_preiss(m, cap).violations.size();
    mixing_violations += check_mixing_condition(m, kDefaultTheta, cap).violations.size();
  }
  const bool pass = passing >= 5 && kp_violations == 0 && mixing_violations == 0;
  return {pass, std::to_string(passing) + "/" + std::to_string(insts.size()) +
                    " instances pass the sampling condition at the threshold; KP violations " +
                    std::to_string(kp_violations) + ", mixing violations " + std::to_string(mixing_violations)};
}

Outcome ac7_potts_weights() {
  double worst = 0.0;
  std::size_t configs = 0;
  for (const HostGraph& g : {complete_graph(2), path_graph(3), cycle_graph(4)}) {
    for (int q : {2, 3}) {
      for (double beta : {0.7, 5.0}) {
        PottsModel m(g, potts(q, beta, g.size()));
        const auto part = brute_polymer_partition(m);
        for (const auto& state : part.gibbs.states) {
          const Configuration c = make_configuration(m, state);
          const double lhs = std::exp(-beta * static_cast<double>(bichromatic_edges(g, polymer_to_coloring(c, m.params()))));
          const double rhs = config_weight(c, m);
          worst = std::max(worst, std::abs(lhs - rhs) / lhs);
          ++configs;
        }
      }
    }
  }
  return {worst <= 1e-15, std::to_string(configs) + " configurations, max relative gap " + fmt(worst) +
                              " (tol 1e-15)"};
}

Outcome ac8_contribution() {
  long double worst = 0.0L;
  std::size_t checked = 0;
  for (const HostGraph& g : {cycle_graph(4, true), complete_bipartite_graph(3, 3)}) {
    for (double lambda : {2.0, 3.0, 50.0}) {
      const auto sets = exact_hardcore_gibbs(g, lambda);
      for (int side = 0; side < 2; ++side) {
        EvenOddHardcoreModel m(g, {lambda, 0.5}, side);
        const auto part = brute_polymer_partition(m);
        for (std::size_t s = 0; s < part.gibbs.states.size(); ++s) {
          std::vector<Vertex> covered;
          for (const auto& p : part.gibbs.states[s]) {
            for (Vertex v : p.support) covered.push_back(v);
          }
          std::sort(covered.begin(), covered.end());
          long double lhs = 0;
          for (const auto& set : sets.states) {
            std::vector<Vertex> on_side;
            for (Vertex v : set) {
              if (g.side(v) == side) on_side.push_back(v);
            }
            if (on_side == covered) lhs += std::pow(static_cast<long double>(lambda), static_cast<long double>(set.size()));
          }
          long double rhs = std::pow(1.0L + lambda, static_cast<long double>(g.part(1 - side).size()));
          for (const auto& p : part.gibbs.states[s]) rhs *= std::exp(static_cast<long double>(m.log_weight(p)));
          worst = std::max(worst, std::abs(lhs - rhs) / lhs);
          ++checked;
        }
      }
    }
  }
  return {worst <= 1e-12L, std::to_string(checked) + " compatible families on C4 and K33, max relative gap " +
                               fmt(static_cast<double>(worst)) + " (tol 1e-12)"};
}

Outcome ac9_hardcore_mixture() {
  const auto t0 = Clock::now();
  const HostGraph g = cycle_graph(4, true);
  const HardcoreParams params{50.0, 0.5};
  const double epsilon = 0.1;
  // Below (3Δ)^{6/α} the claimed τ = α ln λ leaves no room for the size
  // draw; the largest τ the side weights satisfy is used instead.
  EvenOddHardcoreModel side0(g, params, 0);
  ChainOptions chain;
  chain.tau = max_sampling_tau(side0, side0.max_size());
  HardcoreCountOptions count_opts;
  count_opts.annealing.chain = chain;
  count_opts.count_epsilon = 0.1;
  count_opts.count_delta = 0.5;
  const auto count = count_hardcore(g, params, epsilon, 2024, count_opts);
  HardcoreSampler sampler(g, params, epsilon, count.side[0].log_z_hat, count.side[1].log_z_hat, chain);
  const auto exact = exact_hardcore_mixture(g, params);
  const std::uint64_t draws = 1'000'000;
  std::vector<std::uint64_t> counts(exact.states.size(), 0);
  std::uint64_t outside = 0;
  std::uint64_t invalid = 0;
  for (std::uint64_t s = 0; s < draws; ++s) {
    const auto d = sampler.draw(derive_seed(99, s));
    if (!is_independent_set(g, d.set)) ++invalid;
    const auto idx = exact.index_of(d.set);
    if (idx) {
      ++counts[*idx];
    } else {
      ++outside;
    }
  }
  const double tv = tv_distance_counts(counts, exact.probs, outside);
  const double sigma = tv_noise_sigma(exact.probs, draws);
  const bool pass = tv <= epsilon + 3 * sigma && invalid == 0;
  return {pass, "TV " + fmt(tv) + " (tol " + fmt(epsilon + 3 * sigma) + "), invalid outputs " +
                    std::to_string(invalid) + ", side tau " + fmt(*chain.tau) + ", " + fmt(seconds_since(t0)) + " s"};
}

Outcome ac10_truncation() {
  std::vector<Instance> insts;
  for (double tau : {2.0, 3.0, 7.1}) {
    insts.push_back(make_instance<DecayModel>("decay C8 t=" + fmt(tau), cycle_graph(8), 2, tau, 4));
  }
  insts.push_back(make_instance<DecayModel>("decay P6 q=3", path_graph(6), 3, 2.5));
  insts.push_back(make_instance<PottsModel>("potts C4", cycle_graph(4), potts(2, 1.5, 3)));
  insts.push_back(make_instance<PottsModel>("potts K4", complete_graph(4), potts(2, 1.0)));
  const double epsilon = 0.1;
  double worst_upper = 0.0;
  double worst_tv = 0.0;
  bool pass = true;
  std::size_t nontrivial = 0;
  for (const auto& inst : insts) {
    const PolymerModel& m = *inst.model;
    const double tau = max_sampling_tau(m, m.max_size());
    const std::size_t k = static_cast<std::size_t>(std::ceil(truncation_size(m.host().size(), epsilon, tau)));
    nontrivial += k < m.max_size() ? 1 : 0;
    const auto full = brute_polymer_partition(m);
    const auto trunc = brute_polymer_partition(truncate(m, std::max<std::size_t>(k, 1)));
    pass = pass && trunc.z <= full.z;
    const double upper = static_cast<double>(std::log(full.z / trunc.z));
    worst_upper = std::max(worst_upper, upper);
    pass = pass && upper <= epsilon;
    std::vector<double> embedded(full.gibbs.states.size(), 0.0);
    for (std::size_t s = 0; s < trunc.gibbs.states.size(); ++s) {
      const auto idx = full.gibbs.index_of(trunc.gibbs.states[s]);
      if (!idx) return {false, inst.label + ": truncated state missing from the full model"};
      embedded[*idx] = trunc.gibbs.probs[s];
    }
    const double tv = tv_distance(full.gibbs.probs, embedded);
    worst_tv = std::max(worst_tv, tv);
    pass = pass && tv <= epsilon;
  }
  return {pass, std::to_string(insts.size()) + " instances (" + std::to_string(nontrivial) +
                    " with k below the cap); max ln(Z/Z_k) " + fmt(worst_upper) + ", max TV " + fmt(worst_tv) +
                    " (tol eps = 0.1)"};
}

Outcome ac11_glauber() {
  struct Case {
    std::string label;
    std::shared_ptr<const HostGraph> graph;
    std::shared_ptr<const PolymerModel> base;
    std::size_t cap;
    double eta;
  };
  std::vector<Case> cases;
  const double beta = 1.0;
  for (const HostGraph& g : {complete_graph(2), path_graph(3)}) {
    auto gp = std::make_shared<const HostGraph>(g);
    auto base = std::make_shared<const PottsModel>(*gp, potts(3, beta, gp->size()));
    for (std::size_t cap : {1, 2}) {
      cases.push_back({"potts n=" + std::to_string(gp->size()) + " M=" + std::to_string(cap), gp, base, cap,
                       potts_eta(beta, gp->max_degree())});
    }
  }
  const double lambda = 50.0;
  for (std::size_t n : {4, 8, 16}) {
    auto gp = std::make_shared<const HostGraph>(cycle_graph(n, true));
    auto base = std::make_shared<const DeviationHardcoreModel>(*gp, HardcoreParams{lambda, 0.5}, 0);
    cases.push_back({"deviation C" + std::to_string(n) + " M=2", gp, base, 2, hardcore_eta(lambda)});
  }
  double worst = 0.0;
  double worst_ratio_excess = -std::numeric_limits<double>::infinity();
  std::ostringstream sizes;
  for (const auto& c : cases) {
    const TruncatedModel m = truncate(*c.base, c.cap);
    const auto part = brute_polymer_partition(m);
    const auto kernel = exact_kernel(m, Dynamics::glauber);
    if (kernel.states != part.gibbs.states) return {false, c.label + ": kernel and Gibbs state lists differ"};
    const auto bal = check_detailed_balance(kernel, part.gibbs.probs);
    worst = std::max({worst, bal.max_flow_gap, bal.max_stationarity_gap, bal.max_row_error});
    worst_ratio_excess = std::max(worst_ratio_excess, max_glauber_log_ratio(m) - std::log(c.eta));
    sizes << c.label << " |Omega|=" << part.gibbs.states.size() << "; ";
  }
  const bool pass = worst <= 1e-12 && worst_ratio_excess <= 1e-12;
  return {pass, sizes.str() + "max balance gap " + fmt(worst) + " (tol 1e-12); max ln ratio - ln eta " +
                    fmt(worst_ratio_excess) + " (<= 0)"};
}

Outcome ac12_performance() {
  const double tau = 8.0;
  const double epsilon = 0.1;
  std::vector<double> per_step;
  std::ostringstream detail;
  double big_secs = 0.0;
  for (std::size_t n : {100, 1000, 10000}) {
    const HostGraph g = generate_random_regular_bipartite(n / 2, 3, 5);
    DecayModel m(g, 2, tau);
    const auto t0 = Clock::now();
    const ChainRun run = run_chain(m, epsilon, 17);
    const double secs = seconds_since(t0);
    if (n == 10000) big_secs = secs;
    per_step.push_back(static_cast<double>(run.enum_work) / static_cast<double>(run.steps_taken));
    detail << "n=" << n << " work/step " << fmt(per_step.back()) << " (" << fmt(secs) << " s); ";
  }
  const auto [lo, hi] = std::minmax_element(per_step.begin(), per_step.end());
  const double spread = *hi / *lo;
  const bool pass = spread < 2.0 && big_secs < 60.0;
  detail << "spread " << fmt(spread) << " (< 2), n=1e4 time limit 60 s";
  return {pass, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  // Optional argument: run only criteria whose label starts with it, e.g. AC10.
  const std::string only = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 polymer dynamics exact stationarity", ac1_polymer_stationarity},
      {"AC2 single-polymer sampler law", ac2_sampler_law},
      {"AC3 chain convergence", ac3_convergence},
      {"AC4 annealing identities", ac4_annealing},
      {"AC5 counting success rate", ac5_counting},
      {"AC6 condition hierarchy", ac6_hierarchy},
      {"AC7 Potts weight correspondence", ac7_potts_weights},
      {"AC8 hard-core contribution identity", ac8_contribution},
      {"AC9 hard-core mixture law", ac9_hardcore_mixture},
      {"AC10 truncation bounds", ac10_truncation},
      {"AC11 restricted Glauber stationarity", ac11_glauber},
      {"AC12 constant work per step", ac12_performance},
  };
  // Lines are mirrored to a file because ctest hides the output of passing tests.
  std::FILE* log = std::fopen("acceptance_results.txt", "w");
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    if (!only.empty() && name.rfind(only + " ", 0) != 0) continue;
    Outcome out;
    const auto t0 = Clock::now();
    try {
      out = fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = seconds_since(t0);
    std::printf("%s %s: %s [%.1f s]\n", out.pass ? "PASS" : "FAIL", name.c_str(), out.detail.c_str(), secs);
    std::fflush(stdout);
    if (log) {
      std::fprintf(log, "%s %s: %s [%.1f s]\n", out.pass ? "PASS" : "FAIL", name.c_str(), out.detail.c_str(), secs);
      std::fflush(log);
    }
    failed += out.pass ? 0 : 1;
  }
  if (log) std::fclose(log);
  return failed;
}
