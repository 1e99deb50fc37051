#include "polymc/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polymc/errors.hpp"

namespace polymc {

std::string to_string(Condition c) {
  switch (c) {
    case Condition::sampling: return "sampling";
    case Condition::kotecky_preiss: return "kotecky-preiss";
    case Condition::mixing: return "mixing";
  }
  return "unknown";
}

std::string to_string(Scope s) {
  return s == Scope::claimed ? "claimed" : "exhaustive-to-size";
}

double sampling_tau_threshold(int q, std::size_t delta) {
  const double d = static_cast<double>(std::max<std::size_t>(delta, 1));
  return 5.0 + 3.0 * std::log(static_cast<double>(q - 1) * d);
}

namespace {

ConditionReport base_report(const PolymerModel& m, Condition c, double parameter,
                            std::size_t k_max) {
  if (k_max == 0) throw ValidationError("k_max must be at least 1");
  ConditionReport r;
  r.condition = c;
  r.parameter = parameter;
  r.k_max = k_max;
  r.definitive = m.max_size() <= k_max;
  return r;
}

/// For each polymer γ: Σ over enumerated γ′ incompatible with γ of term(γ′).
template <class Term, class Rhs>
void check_neighbourhood_sums(const PolymerModel& m, const std::vector<WeightedPolymer>& all,
                              Term term, Rhs rhs, ConditionReport& r) {
  const auto& g = m.host();
  std::vector<std::vector<std::size_t>> containing(g.size());
  for (std::size_t j = 0; j < all.size(); ++j) {
    for (Vertex v : all[j].polymer.support) containing[v].push_back(j);
  }
  std::vector<std::size_t> stamp(all.size(), 0);
  std::vector<std::size_t> vstamp(g.size(), 0);
  std::size_t epoch = 0;
  for (const auto& wp : all) {
    ++epoch;
    double lhs = 0.0;
    auto absorb = [&](Vertex x) {
      if (vstamp[x] == epoch) return;
      vstamp[x] = epoch;
      for (std::size_t j : containing[x]) {
        if (stamp[j] != epoch) {
          stamp[j] = epoch;
          lhs += term(all[j]);
        }
      }
    };
    for (Vertex u : wp.polymer.support) {
      absorb(u);
      for (Vertex w : g.neighbors(u)) absorb(w);
    }
    const double bound = rhs(wp);
    ++r.polymers_checked;
    if (lhs > bound * (1.0 + 1e-12)) r.violations.push_back({wp.polymer, lhs, bound});
  }
}

}  // namespace

ConditionReport check_sampling_condition(const PolymerModel& m, double tau, std::size_t k_max,
                                         std::size_t budget) {
  auto r = base_report(m, Condition::sampling, tau, k_max);
  for (const auto& wp : enumerate_polymers(m, k_max, budget)) {
    ++r.polymers_checked;
    const double bound = -tau * static_cast<double>(wp.polymer.size());
    if (wp.log_weight > bound + 1e-12) {
      r.violations.push_back({wp.polymer, std::exp(wp.log_weight), std::exp(bound)});
    }
  }
  return r;
}

ConditionReport check_mixing_condition(const PolymerModel& m, double theta, std::size_t k_max,
                                       std::size_t budget) {
  if (!(theta > 0 && theta < 1)) throw ValidationError("theta must lie in (0, 1)");
  auto r = base_report(m, Condition::mixing, theta, k_max);
  const auto all = enumerate_polymers(m, k_max, budget);
  check_neighbourhood_sums(
      m, all,
      [](const WeightedPolymer& wp) {
        return static_cast<double>(wp.polymer.size()) * std::exp(wp.log_weight);
      },
      [theta](const WeightedPolymer& wp) { return theta * static_cast<double>(wp.polymer.size()); },
      r);
  return r;
}

ConditionReport check_kotecky_preiss(const PolymerModel& m, std::size_t k_max,
                                     std::size_t budget) {
  auto r = base_report(m, Condition::kotecky_preiss, 0.0, k_max);
  const auto all = enumerate_polymers(m, k_max, budget);
  check_neighbourhood_sums(
      m, all,
      [](const WeightedPolymer& wp) {
        return std::exp(static_cast<double>(wp.polymer.size()) + wp.log_weight);
      },
      [](const WeightedPolymer& wp) { return static_cast<double>(wp.polymer.size()); }, r);
  return r;
}

double max_sampling_tau(const PolymerModel& m, std::size_t k_max, std::size_t budget) {
  if (k_max == 0) throw ValidationError("k_max must be at least 1");
  double tau = std::numeric_limits<double>::infinity();
  for (const auto& wp : enumerate_polymers(m, k_max, budget)) {
    tau = std::min(tau, -wp.log_weight / static_cast<double>(wp.polymer.size()));
  }
  return tau;
}

ConditionReport claim_sampling_condition(const PolymerModel& m) {
  ConditionReport r;
  r.condition = Condition::sampling;
  r.scope = Scope::claimed;
  r.parameter = m.tau_hint().value_or(std::nan(""));
  return r;
}

}  // namespace polymc
