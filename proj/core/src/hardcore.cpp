#include "polymc/hardcore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polymc/errors.hpp"
#include "polymc/oracle.hpp"
#include "polymc/rng.hpp"

namespace polymc {

double hardcore_lambda_threshold(std::size_t delta, double alpha) {
  if (!(alpha > 0)) throw ValidationError("alpha must be positive");
  return std::pow(3.0 * static_cast<double>(delta), 6.0 / alpha);
}

VertexHardcoreModel::VertexHardcoreModel(const HostGraph& g, double lambda)
    : g_(&g), log_lambda_(std::log(lambda)) {
  if (!(lambda > 0)) throw ValidationError("lambda must be positive");
}

namespace {

void require_bipartite(const HostGraph& g) {
  if (!g.is_bipartite()) throw ValidationError("hard-core side models need a bipartite graph");
}

void validate(const HardcoreParams& p) {
  if (!(p.lambda > 0)) throw ValidationError("lambda must be positive");
  if (!(p.alpha > 0)) throw ValidationError("alpha must be positive");
}

double log_add_exp(double a, double b) {
  const double top = std::max(a, b);
  return top + std::log1p(std::exp(std::min(a, b) - top));
}

}  // namespace

EvenOddHardcoreModel::EvenOddHardcoreModel(const HostGraph& g, const HardcoreParams& p, int side)
    : g_(&g), params_(p), side_(side) {
  require_bipartite(g);
  validate(p);
  if (side != 0 && side != 1) throw ValidationError("side must be 0 or 1");
  square_ = std::make_shared<const HostGraph>(power_graph(g, 2));
  cap_ = g.part(side).size() / 2;
}

std::size_t EvenOddHardcoreModel::neighbourhood_size(const Polymer& p) const {
  std::vector<Vertex> nb;
  for (Vertex u : p.support) {
    for (Vertex w : g_->neighbors(u)) nb.push_back(w);
  }
  std::sort(nb.begin(), nb.end());
  return static_cast<std::size_t>(std::unique(nb.begin(), nb.end()) - nb.begin());
}

double EvenOddHardcoreModel::log_weight(const Polymer& p) const {
  return static_cast<double>(p.size()) * std::log(params_.lambda) -
         static_cast<double>(neighbourhood_size(p)) * std::log1p(params_.lambda);
}

std::unique_ptr<EvenOddHardcoreModel> hc_polymer_model(const HostGraph& g, const HardcoreParams& p,
                                                       int side) {
  return std::make_unique<EvenOddHardcoreModel>(g, p, side);
}

bool is_independent_set(const HostGraph& g, const IndependentSet& set) {
  for (std::size_t j = 0; j < set.size(); ++j) {
    if (set[j] >= g.size()) return false;
    if (j > 0 && set[j - 1] >= set[j]) return false;
  }
  for (Vertex u : set) {
    for (Vertex w : g.neighbors(u)) {
      if (std::binary_search(set.begin(), set.end(), w)) return false;
    }
  }
  return true;
}

HardcoreHypotheses assess_hardcore(const HostGraph& g, const HardcoreParams& p, double epsilon) {
  require_bipartite(g);
  validate(p);
  HardcoreHypotheses h;
  h.lambda_threshold = hardcore_lambda_threshold(g.max_degree(), p.alpha);
  h.threshold_met = p.lambda >= h.lambda_threshold;
  if (p.alpha < 1) {
    h.expansion = check_bipartite_vertex_expansion(g, p.alpha);
  } else {
    h.expansion.kind = ExpansionKind::bipartite_vertex;
    h.expansion.alpha = p.alpha;
    h.expansion.verification = Verification::unverified;
    h.warnings.push_back("alpha must lie in (0, 1) for bipartite expansion");
  }
  h.epsilon_in_range = epsilon >= 4.0 * std::exp(-static_cast<double>(g.size())) && epsilon < 1;
  if (!h.threshold_met) {
    std::ostringstream msg;
    msg << "lambda " << p.lambda << " is below the threshold " << h.lambda_threshold;
    h.warnings.push_back(msg.str());
  }
  if (h.expansion.verification == Verification::unverified) {
    h.warnings.push_back("bipartite expansion not verified");
  } else if (h.expansion.witness) {
    h.warnings.push_back("graph is not a bipartite alpha-expander for the given alpha");
  }
  if (!h.epsilon_in_range) h.warnings.push_back("epsilon outside [4 e^-n, 1)");
  return h;
}

HardcoreCountReport count_hardcore(const HostGraph& g, const HardcoreParams& p, double epsilon,
                                   std::uint64_t seed, const HardcoreCountOptions& options,
                                   bool with_references) {
  if (!(epsilon > 0 && epsilon < 1)) throw ValidationError("epsilon must lie in (0, 1)");
  HardcoreCountReport report;
  report.hypotheses = assess_hardcore(g, p, epsilon);
  const double eps_side = options.count_epsilon.value_or(epsilon / 32.0);
  const double delta_side = options.count_delta.value_or(epsilon / 32.0);
  const double log1p_lambda = std::log1p(p.lambda);
  double terms[2];
  for (int i = 0; i < 2; ++i) {
    EvenOddHardcoreModel model(g, p, i);
    report.side[i] = estimate_with_median(model, eps_side, delta_side,
                                          derive_seed(seed, kHardcoreSideStream, static_cast<std::uint64_t>(i)),
                                          options.annealing);
    terms[i] = static_cast<double>(g.part(1 - i).size()) * log1p_lambda + report.side[i].log_z_hat;
  }
  report.log_z_hat = log_add_exp(terms[0], terms[1]);
  if (with_references && g.size() <= 24) {
    report.log_z_exact = static_cast<double>(std::log(brute_hardcore_partition(g, p.lambda)));
  }
  return report;
}

HardcoreSampler::HardcoreSampler(const HostGraph& g, const HardcoreParams& p, double epsilon,
                                 double log_z0, double log_z1, const ChainOptions& options)
    : g_(&g), params_(p), epsilon_(epsilon), blocked_(g.size(), 0) {
  require_bipartite(g);
  validate(p);
  if (!(epsilon > 0 && epsilon < 1)) throw ValidationError("epsilon must lie in (0, 1)");
  const double log1p_lambda = std::log1p(p.lambda);
  const double a0 = static_cast<double>(g.part(1).size()) * log1p_lambda + log_z0;
  const double a1 = static_cast<double>(g.part(0).size()) * log1p_lambda + log_z1;
  // Logistic form of e^{a0} / (e^{a0} + e^{a1}).
  p0_ = 1.0 / (1.0 + std::exp(a1 - a0));
  for (int i = 0; i < 2; ++i) {
    models_[i] = std::make_unique<EvenOddHardcoreModel>(g, p, i);
    runners_[i] = std::make_unique<ChainRunner>(*models_[i], options);
  }
}

HardcoreSample HardcoreSampler::draw(std::uint64_t seed) {
  HardcoreSample out;
  Rng coin = chain_rng(derive_seed(seed, 0));
  out.side = uniform01(coin) < p0_ ? 0 : 1;
  const ChainRun run = runners_[out.side]->run(epsilon_ / 8.0, derive_seed(seed, 1));
  out.steps_taken = run.steps_taken;
  out.truncated = run.truncated;

  std::fill(blocked_.begin(), blocked_.end(), 0);
  for (const auto& poly : run.final.polymers()) {
    for (Vertex u : poly.support) {
      out.set.push_back(u);
      for (Vertex w : g_->neighbors(u)) blocked_[w] = 1;
    }
  }
  Rng fill = chain_rng(derive_seed(seed, 2));
  const double keep = params_.lambda / (1.0 + params_.lambda);
  for (Vertex w : g_->part(1 - out.side)) {
    const bool take = uniform01(fill) < keep;  // drawn for every vertex so streams stay aligned
    if (!blocked_[w] && take) out.set.push_back(w);
  }
  std::sort(out.set.begin(), out.set.end());
  return out;
}

HardcoreSampleReport sample_hardcore(const HostGraph& g, const HardcoreParams& p, double epsilon,
                                     std::uint64_t seed, const HardcoreCountOptions& options) {
  HardcoreSampleReport report;
  report.count = count_hardcore(g, p, epsilon, seed, options);
  HardcoreSampler sampler(g, p, epsilon, report.count.side[0].log_z_hat,
                          report.count.side[1].log_z_hat, options.annealing.chain);
  report.sample = sampler.draw(derive_seed(seed, kHardcoreDrawStream));
  return report;
}

}  // namespace polymc
