#include "polymc/polymer_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "polymc/errors.hpp"

namespace polymc {

double truncation_rate(double tau, int q, std::size_t delta) {
  const double d = static_cast<double>(std::max<std::size_t>(delta, 1));
  const double r = tau - 2.0 - std::log(static_cast<double>(q - 1) * d);
  if (!(r > 0)) {
    std::ostringstream msg;
    msg << "truncation rate r = " << r << " is not positive for tau = " << tau;
    throw ValidationError(msg.str());
  }
  return r;
}

namespace {

double resolve_tau(const PolymerModel& m, std::optional<double> tau) {
  if (tau) return *tau;
  if (auto hint = m.tau_hint()) return *hint;
  throw ValidationError("model " + m.name() + " has no tau; pass one explicitly");
}

[[noreturn]] void throw_oversubscribed(Vertex v, std::size_t k, double total) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "sampling condition violated at vertex " << v << ", size " << k
      << ": sum of w*e^{r|g|} = " << total << " > 1";
  throw InvalidModelError(msg.str());
}

constexpr double kMassSlack = 1e-12;

}  // namespace

NuSampler::NuSampler(const PolymerModel& m, std::optional<double> tau)
    : model_(&m), cap_(std::min(m.max_size(), m.host().size())), en_(m.host()) {
  if (cap_ == 0) {
    // No polymers exist; every draw is empty and τ is irrelevant.
    tau_ = tau.value_or(m.tau_hint().value_or(std::numeric_limits<double>::infinity()));
    r_ = std::numeric_limits<double>::infinity();
    exp_neg_r_ = 0.0;
    return;
  }
  tau_ = resolve_tau(m, tau);
  r_ = truncation_rate(tau_, m.num_spins(), m.host().max_degree());
  exp_neg_r_ = std::exp(-r_);
}

std::optional<NuDraw> NuSampler::sample(Vertex v, Rng& rng, std::size_t* work) {
  // Pr[k ≥ 1] = e^{−r}; only then is the logarithm needed.
  const double u = uniform_open01(rng);
  if (u > exp_neg_r_ || cap_ == 0) return std::nullopt;
  const double kd = std::floor(-std::log(u) / r_);
  const std::size_t k =
      kd >= static_cast<double>(cap_) ? cap_ : static_cast<std::size_t>(kd);
  if (k == 0) return std::nullopt;

  const double pick = uniform01(rng);
  double total = 0.0;
  std::optional<NuDraw> chosen;
  const std::size_t w = visit_polymers_at(
      *model_, en_, v, k, [](Vertex) { return true; }, buf_,
      [&](const Polymer& p, double logw) {
        total += std::exp(logw + r_ * static_cast<double>(p.size()));
        if (!chosen && pick < total) chosen = NuDraw{p, logw};
      });
  if (work) *work += w;
  if (total > 1.0 + kMassSlack) throw_oversubscribed(v, k, total);
  return chosen;
}

NuLaw NuSampler::output_law(Vertex v) {
  NuLaw law;
  if (cap_ == 0) return law;
  std::vector<double> scaled;  // w e^{r|γ|}
  std::vector<double> mass_by_size(cap_ + 1, 0.0);
  visit_polymers_at(*model_, en_, v, cap_, [](Vertex) { return true; }, buf_,
                    [&](const Polymer& p, double logw) {
                      law.polymers.push_back(p);
                      law.weights.push_back(std::exp(logw));
                      const double s = std::exp(logw + r_ * static_cast<double>(p.size()));
                      scaled.push_back(s);
                      mass_by_size[p.size()] += s;
                    });
  // Pr[k = j] for j < cap is (1 − e^{−r})e^{−rj}; the cap absorbs the tail.
  std::vector<double> pk(cap_ + 1);
  for (std::size_t j = 0; j < cap_; ++j) {
    pk[j] = -std::expm1(-r_) * std::exp(-r_ * static_cast<double>(j));
  }
  pk[cap_] = std::exp(-r_ * static_cast<double>(cap_));
  double cumulative = 0.0;
  for (std::size_t j = 1; j <= cap_; ++j) {
    cumulative += mass_by_size[j];
    if (cumulative > 1.0 + kMassSlack) throw_oversubscribed(v, j, cumulative);
  }
  law.probs.assign(law.polymers.size(), 0.0);
  for (std::size_t idx = 0; idx < law.polymers.size(); ++idx) {
    double p = 0.0;
    for (std::size_t j = law.polymers[idx].size(); j <= cap_; ++j) p += pk[j] * scaled[idx];
    law.probs[idx] = p;
  }
  double mass = 0.0;
  for (double p : law.probs) mass += p;
  law.empty = 1.0 - mass;
  std::vector<std::size_t> order(law.polymers.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return law.polymers[a] < law.polymers[b]; });
  NuLaw sorted;
  sorted.empty = law.empty;
  for (std::size_t j : order) {
    sorted.polymers.push_back(std::move(law.polymers[j]));
    sorted.probs.push_back(law.probs[j]);
    sorted.weights.push_back(law.weights[j]);
  }
  return sorted;
}

std::size_t step(Configuration& c, NuSampler& sampler, Rng& rng) {
  const auto& g = c.host();
  const bool remove = (rng() >> 63) != 0;
  const auto v = static_cast<Vertex>(uniform_below(rng, g.size()));
  if (remove) {
    c.erase_covering(v);
    return 0;
  }
  std::size_t work = 0;
  if (auto draw = sampler.sample(v, rng, &work)) c.try_insert(draw->polymer, draw->log_weight);
  return work;
}

std::uint64_t step_budget(std::size_t n, double epsilon, double theta) {
  if (!(theta > 0 && theta < 1)) throw ValidationError("theta must lie in (0, 1)");
  if (!(epsilon > 0 && epsilon < 1)) throw ValidationError("epsilon must lie in (0, 1)");
  const double two_n = 2.0 * static_cast<double>(n);
  return static_cast<std::uint64_t>(std::ceil(two_n / (1.0 - theta) * std::log(two_n / epsilon)));
}

ChainRunner::ChainRunner(const PolymerModel& m, ChainOptions options)
    : model_(&m), options_(options), sampler_(m, options.tau) {}

std::uint64_t ChainRunner::steps_for(double epsilon) const {
  if (options_.steps_override) return *options_.steps_override;
  return step_budget(model_->host().size(), epsilon / 2.0, options_.theta);
}

double ChainRunner::work_cap(double epsilon) const {
  const double n = static_cast<double>(model_->host().size());
  return options_.cap_const * n * std::log(2.0 * n / epsilon);
}

ChainRun ChainRunner::run(double epsilon, std::uint64_t seed) {
  if (!(epsilon > 0 && epsilon < 1)) throw ValidationError("epsilon must lie in (0, 1)");
  ChainRun result{0, 0, 0, false, Configuration(model_->host()), seed};
  const std::uint64_t steps = steps_for(epsilon);
  if (options_.cap_const <= 0) {
    result.truncated = true;
    return result;
  }
  const double cap = work_cap(epsilon);
  Rng rng = chain_rng(seed);
  for (std::uint64_t t = 0; t < steps; ++t) {
    const std::size_t w = step(result.final, sampler_, rng);
    result.enum_work += w;
    result.work_units += 1 + w;
    ++result.steps_taken;
    if (static_cast<double>(result.work_units) > cap) {
      result.truncated = true;
      result.final.clear();
      break;
    }
  }
  return result;
}

ChainRun run_chain(const PolymerModel& m, double epsilon, std::uint64_t seed,
                   const ChainOptions& options) {
  ChainRunner runner(m, options);
  return runner.run(epsilon, seed);
}

}  // namespace polymc
