#include "polymc/annealing.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <thread>

#include "polymc/conditions.hpp"
#include "polymc/errors.hpp"

namespace polymc {

TemperedModel::TemperedModel(const PolymerModel& base, double rho) : base_(&base), rho_(rho) {
  if (!(rho >= 0)) throw ValidationError("rho must be nonnegative");
}

std::optional<double> TemperedModel::tau_hint() const {
  if (auto t = base_->tau_hint()) return *t + rho_;
  return std::nullopt;
}

AnnealingSchedule AnnealingSchedule::make(std::size_t n, int q, std::size_t delta, double epsilon) {
  if (!(epsilon > 0 && epsilon < 1)) throw ValidationError("epsilon must lie in (0, 1)");
  if (n == 0 || q < 2) throw ValidationError("schedule needs n >= 1 and q >= 2");
  AnnealingSchedule s;
  s.n = n;
  s.epsilon = epsilon;
  const double nd = static_cast<double>(n);
  const double d = static_cast<double>(std::max<std::size_t>(delta, 1));
  s.ell = static_cast<std::uint64_t>(
      std::ceil(nd * std::log(4.0 * std::numbers::e * (q - 1) * d * nd / epsilon)));
  s.m = static_cast<std::uint64_t>(std::ceil(64.0 / (epsilon * epsilon)));
  return s;
}

AnnealingSchedule AnnealingSchedule::for_model(const PolymerModel& m, double epsilon) {
  return make(m.host().size(), m.num_spins(), m.host().max_degree(), epsilon);
}

double log_mean_exp(const std::vector<double>& xs) {
  if (xs.empty()) throw DegenerateEstimateError("mean of no samples");
  const double top = *std::max_element(xs.begin(), xs.end());
  if (!std::isfinite(top)) throw DegenerateEstimateError("sample mean is not finite");
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - top);
  return top + std::log(sum) - std::log(static_cast<double>(xs.size()));
}

namespace {

struct Partial {
  std::uint64_t work = 0;
  std::uint64_t truncated = 0;
};

}  // namespace

EstimateReport estimate_partition(const PolymerModel& m, double epsilon, std::uint64_t seed,
                                  const AnnealingOptions& options) {
  EstimateReport report;
  report.seed = seed;
  report.schedule = AnnealingSchedule::for_model(m, epsilon);
  if (options.ell_override) report.schedule.ell = *options.ell_override;
  if (options.samples_override) report.schedule.m = *options.samples_override;
  const auto& sched = report.schedule;
  if (sched.ell == 0 || sched.m == 0) throw ValidationError("schedule must be nonempty");
  const double chain_eps = sched.chain_epsilon();

  const auto tau = options.chain.tau ? options.chain.tau : m.tau_hint();
  const double threshold = sampling_tau_threshold(m.num_spins(), m.host().max_degree());
  if (!tau) {
    report.warnings.push_back("model claims no sampling-condition tau");
  } else if (*tau < threshold) {
    std::ostringstream msg;
    msg << "tau " << *tau << " is below the sampling-condition threshold " << threshold;
    report.warnings.push_back(msg.str());
  }
  if (tau && *tau < 0) report.warnings.push_back("weights may exceed 1; endpoint bound not guaranteed");

  std::vector<TemperedModel> tempered;
  tempered.reserve(sched.ell);
  for (std::uint64_t i = 0; i < sched.ell; ++i) tempered.emplace_back(m, sched.rho(i));

  const double n = static_cast<double>(m.host().size());
  std::vector<double> log_w(sched.m, 0.0);
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads,
                                                            static_cast<unsigned>(sched.m)));
  std::vector<Partial> partials(threads);
  auto worker = [&](unsigned t) {
    std::vector<std::unique_ptr<ChainRunner>> runners(sched.ell);
    for (std::uint64_t i = 0; i < sched.ell; ++i) {
      ChainOptions chain = options.chain;
      if (chain.tau) *chain.tau += sched.rho(i);
      runners[i] = std::make_unique<ChainRunner>(tempered[i], chain);
    }
    for (std::uint64_t j = t; j < sched.m; j += threads) {
      double acc = 0.0;
      for (std::uint64_t i = 0; i < sched.ell; ++i) {
        const ChainRun run = runners[i]->run(chain_eps, derive_seed(seed, j, i));
        partials[t].work += run.work_units;
        partials[t].truncated += run.truncated ? 1 : 0;
        acc -= static_cast<double>(run.final.covered_vertices()) / n;
      }
      log_w[j] = acc;
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& p : partials) {
    report.work_units += p.work;
    report.truncated_runs += p.truncated;
  }
  {
    ChainOptions chain = options.chain;
    ChainRunner probe(m, chain);
    report.steps_per_chain = probe.steps_for(chain_eps);
  }
  if (report.truncated_runs > 0) {
    report.warnings.push_back(std::to_string(report.truncated_runs) + " chain runs hit the work cap");
  }
  report.log_z_hat = -log_mean_exp(log_w);
  if (!std::isfinite(report.log_z_hat)) throw DegenerateEstimateError("estimate is not finite");
  return report;
}

std::uint64_t median_trials(double delta) {
  if (!(delta > 0 && delta < 1)) throw ValidationError("delta must lie in (0, 1)");
  return static_cast<std::uint64_t>(std::ceil(12.0 * std::log(1.0 / delta)));
}

EstimateReport estimate_with_median(const PolymerModel& m, double epsilon, double delta,
                                    std::uint64_t seed, const AnnealingOptions& options) {
  const std::uint64_t t = median_trials(delta);
  std::vector<EstimateReport> trials;
  trials.reserve(t);
  for (std::uint64_t s = 0; s < t; ++s) {
    trials.push_back(estimate_partition(m, epsilon, derive_seed(seed, kMedianStream, s), options));
  }
  std::vector<std::size_t> order(t);
  for (std::size_t j = 0; j < t; ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return trials[a].log_z_hat < trials[b].log_z_hat;
  });
  EstimateReport report = trials[order[(t - 1) / 2]];
  report.seed = seed;
  report.amplification = t;
  report.failure_budget = delta;
  report.work_units = 0;
  report.truncated_runs = 0;
  report.trial_log_estimates.clear();
  for (const auto& tr : trials) {
    report.work_units += tr.work_units;
    report.truncated_runs += tr.truncated_runs;
    report.trial_log_estimates.push_back(tr.log_z_hat);
  }
  return report;
}

}  // namespace polymc
