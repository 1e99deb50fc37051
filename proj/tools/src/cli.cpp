#include "polymc_cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "polymc/annealing.hpp"
#include "polymc/conditions.hpp"
#include "polymc/configuration.hpp"
#include "polymc/errors.hpp"
#include "polymc/graph_io.hpp"
#include "polymc/hardcore.hpp"
#include "polymc/host_graph.hpp"
#include "polymc/oracle.hpp"
#include "polymc/polymer_dynamics.hpp"
#include "polymc/potts.hpp"
#include "polymc/restricted_glauber.hpp"

namespace polymc::cli {

namespace {

Json polymer_json(const Polymer& p) { return Json{{"support", p.support}, {"spins", p.spins}}; }

Json polymers_json(const std::vector<Polymer>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(polymer_json(p));
  return out;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json expansion_json(const ExpansionReport& r) {
  return Json{{"kind", r.kind == ExpansionKind::edge ? "edge" : "vertex"},
              {"alpha", r.alpha},
              {"verified", r.verification == Verification::exact},
              {"holds", r.holds()},
              {"certified_alpha", std::isfinite(r.certified_alpha) ? Json(r.certified_alpha) : Json(nullptr)},
              {"witness", r.witness ? Json(*r.witness) : Json(nullptr)},
              {"witness_side", r.witness_side ? Json(*r.witness_side) : Json(nullptr)}};
}

template <class H>
Json hypotheses_json(const H& h, double threshold, const char* threshold_name) {
  return Json{{threshold_name, threshold},
              {"threshold_met", h.threshold_met},
              {"expansion_verified", h.expansion.verification == Verification::exact},
              {"expansion_holds", h.expansion.holds()},
              {"epsilon_in_range", h.epsilon_in_range},
              {"all_hold", h.all_hold()},
              {"warnings", h.warnings}};
}

Json potts_hypotheses(const PottsHypotheses& h) { return hypotheses_json(h, h.beta_threshold, "beta_threshold"); }
Json hardcore_hypotheses(const HardcoreHypotheses& h) {
  return hypotheses_json(h, h.lambda_threshold, "lambda_threshold");
}

Json estimate_json(const EstimateReport& e) {
  return Json{{"log_z_hat", e.log_z_hat},
              {"ell", e.schedule.ell},
              {"m", e.schedule.m},
              {"chain_epsilon", e.schedule.chain_epsilon()},
              {"amplification", e.amplification},
              {"failure_budget", e.failure_budget},
              {"trial_log_estimates", e.trial_log_estimates},
              {"truncated_runs", e.truncated_runs},
              {"warnings", e.warnings}};
}

HostGraph require_graph(const Params& p) {
  if (p.graph.empty()) throw ValidationError("--graph is required for " + p.command);
  return load_graph(p.graph);
}

/// The graph, the model built on it, and an optional size-cap wrapper.
struct ModelHolder {
  std::shared_ptr<const HostGraph> graph;
  std::unique_ptr<PolymerModel> base;
  std::unique_ptr<TruncatedModel> capped;

  const PolymerModel& model() const { return capped ? *capped : *base; }
};

PottsParams potts_params(const Params& p) {
  PottsParams out;
  out.q = p.q;
  out.beta = p.beta;
  out.alpha = p.alpha;
  out.ground = static_cast<Spin>(p.ground);
  out.size_cap = p.cap;
  if (p.ground < 0) throw ValidationError("ground colour must be non-negative");
  return out;
}

HardcoreParams hardcore_params(const Params& p) { return {p.lambda, p.alpha}; }

ModelHolder build_model(const Params& p) {
  ModelHolder h;
  h.graph = std::make_shared<const HostGraph>(require_graph(p));
  const HostGraph& g = *h.graph;
  if (p.model == "monomer") {
    h.base = std::make_unique<VertexHardcoreModel>(g, p.lambda);
  } else if (p.model == "potts") {
    h.base = std::make_unique<PottsModel>(g, potts_params(p));
  } else if (p.model == "hardcore") {
    h.base = std::make_unique<EvenOddHardcoreModel>(g, hardcore_params(p), p.side);
  } else if (p.model == "deviation") {
    h.base = std::make_unique<DeviationHardcoreModel>(g, hardcore_params(p), p.side);
  } else {
    throw ValidationError("unknown model '" + p.model + "' (monomer, potts, hardcore, deviation)");
  }
  if (p.cap && p.model != "potts") h.capped = std::make_unique<TruncatedModel>(*h.base, *p.cap);
  return h;
}

double auto_tau(const PolymerModel& m, const Params& p) {
  const std::size_t k = std::min(m.max_size(), m.host().size());
  if (k == 0) return std::numeric_limits<double>::infinity();
  return max_sampling_tau(m, k, p.enum_budget);
}

/// Resolves --tau against the model the chains will run on.
std::optional<double> resolve_tau(const Params& p, const std::vector<const PolymerModel*>& models) {
  if (p.tau.empty()) return std::nullopt;
  if (p.tau == "auto") {
    double tau = std::numeric_limits<double>::infinity();
    for (const auto* m : models) tau = std::min(tau, auto_tau(*m, p));
    if (!std::isfinite(tau)) return std::nullopt;
    return tau;
  }
  try {
    std::size_t used = 0;
    const double tau = std::stod(p.tau, &used);
    if (used != p.tau.size()) throw std::invalid_argument(p.tau);
    return tau;
  } catch (const std::exception&) {
    throw ValidationError("--tau must be a number or 'auto'");
  }
}

ChainOptions chain_options(const Params& p, std::optional<double> tau) {
  ChainOptions c;
  c.theta = p.theta;
  c.tau = tau;
  c.steps_override = p.steps;
  return c;
}

AnnealingOptions annealing_options(const Params& p, std::optional<double> tau) {
  AnnealingOptions a;
  a.chain = chain_options(p, tau);
  a.chain.steps_override.reset();
  a.threads = p.threads;
  a.ell_override = p.ell;
  a.samples_override = p.samples;
  return a;
}

Json chain_work(const ChainRun& run) {
  return Json{{"steps", run.steps_taken}, {"work_units", run.work_units}, {"enum_work", run.enum_work}};
}

RunRecord cmd_gen_graph(const Params& p) {
  RunRecord r;
  const HostGraph g = generate_random_regular_bipartite(p.n_per_side, p.degree, p.seed);
  r.outputs = Json{{"n", g.size()}, {"edges", g.num_edges()}, {"max_degree", g.max_degree()}};
  if (!p.write.empty()) {
    save_graph(p.write, g);
    r.outputs["written"] = p.write;
  } else {
    r.outputs["graph"] = graph_to_string(g);
  }
  return r;
}

RunRecord cmd_check_expansion(const Params& p) {
  RunRecord r;
  const HostGraph g = require_graph(p);
  ExpansionReport rep;
  if (p.kind == "edge") {
    rep = check_edge_expansion(g, p.alpha);
  } else if (p.kind == "vertex") {
    rep = check_bipartite_vertex_expansion(g, p.alpha);
  } else {
    throw ValidationError("--kind must be edge or vertex");
  }
  r.outputs = expansion_json(rep);
  r.hypotheses = Json{{"expansion_verified", rep.verification == Verification::exact},
                      {"expansion_holds", rep.holds()},
                      {"all_hold", rep.holds()}};
  return r;
}

Json condition_json(const ConditionReport& c) {
  Json v = Json::array();
  for (std::size_t i = 0; i < std::min<std::size_t>(c.violations.size(), 20); ++i) {
    const auto& x = c.violations[i];
    v.push_back(Json{{"polymer", polymer_json(x.polymer)}, {"lhs", x.lhs}, {"rhs", x.rhs}});
  }
  return Json{{"condition", to_string(c.condition)},
              {"parameter", c.parameter},
              {"k_max", c.k_max},
              {"definitive", c.definitive},
              {"polymers_checked", c.polymers_checked},
              {"violation_count", c.violations.size()},
              {"violations", v}};
}

RunRecord cmd_check_conditions(const Params& p) {
  RunRecord r;
  const ModelHolder h = build_model(p);
  const PolymerModel& m = h.model();
  const auto tau_override = resolve_tau(p, {&m});
  const double tau = tau_override.value_or(sampling_tau_threshold(m.num_spins(), m.host().max_degree()));
  const auto sampling = check_sampling_condition(m, tau, p.kmax, p.enum_budget);
  const auto kp = check_kotecky_preiss(m, p.kmax, p.enum_budget);
  const auto mixing = check_mixing_condition(m, p.theta, p.kmax, p.enum_budget);
  r.outputs = Json{{"model", m.name()},
                   {"sampling", condition_json(sampling)},
                   {"kotecky_preiss", condition_json(kp)},
                   {"mixing", condition_json(mixing)}};
  const bool clean = sampling.ok() && kp.ok() && mixing.ok();
  r.hypotheses = Json{{"sampling_ok", sampling.ok()},
                      {"kotecky_preiss_ok", kp.ok()},
                      {"mixing_ok", mixing.ok()},
                      {"all_hold", clean}};
  return r;
}

RunRecord cmd_polymer_sample(const Params& p) {
  RunRecord r;
  const ModelHolder h = build_model(p);
  const PolymerModel& m = h.model();
  const ChainRun run = run_chain(m, p.epsilon, p.seed, chain_options(p, resolve_tau(p, {&m})));
  r.outputs = Json{{"model", m.name()},
                   {"polymers", polymers_json(run.final.sorted_polymers())},
                   {"spins", configuration_to_spins(run.final, m)},
                   {"log_weight", config_log_weight(run.final, m)},
                   {"truncated", run.truncated}};
  r.work = chain_work(run);
  return r;
}

RunRecord cmd_anneal_count(const Params& p) {
  RunRecord r;
  const ModelHolder h = build_model(p);
  const PolymerModel& m = h.model();
  const AnnealingOptions opts = annealing_options(p, resolve_tau(p, {&m}));
  const EstimateReport est = p.delta ? estimate_with_median(m, p.epsilon, *p.delta, p.seed, opts)
                                     : estimate_partition(m, p.epsilon, p.seed, opts);
  r.outputs = estimate_json(est);
  r.outputs["z_hat"] = est.z_hat();
  std::optional<double> exact;
  try {
    exact = brute_polymer_partition(m, std::min(m.max_size(), m.host().size()), p.state_budget).log_z;
  } catch (const BudgetError&) {
  }
  r.outputs["log_z_exact"] = optional_json(exact);
  r.work = Json{{"steps_per_chain", est.steps_per_chain}, {"work_units", est.work_units}};
  return r;
}

RunRecord cmd_sample_potts(const Params& p) {
  RunRecord r;
  const HostGraph g = require_graph(p);
  const PottsParams pp = potts_params(p);
  PottsParams probe = pp;
  probe.ground = 0;
  const PottsModel probe_model(g, probe);
  const auto s = sample_potts(g, pp, p.epsilon, p.seed, chain_options(p, resolve_tau(p, {&probe_model})));
  r.outputs = Json{{"coloring", s.coloring},
                   {"ground", s.ground},
                   {"bichromatic_edges", bichromatic_edges(g, s.coloring)},
                   {"brute_force", s.brute_force},
                   {"truncated", s.truncated}};
  r.hypotheses = potts_hypotheses(s.hypotheses);
  r.work = Json{{"steps", s.steps_taken}, {"work_units", s.work_units}};
  return r;
}

RunRecord cmd_count_potts(const Params& p) {
  RunRecord r;
  const HostGraph g = require_graph(p);
  const PottsParams pp = potts_params(p);
  const PottsModel probe_model(g, pp);
  const auto c = count_potts(g, pp, p.epsilon, p.seed, annealing_options(p, resolve_tau(p, {&probe_model})));
  r.outputs = Json{{"log_z_hat", c.log_z_hat},
                   {"z_hat", c.z_hat()},
                   {"log_z_exact", optional_json(c.log_z_exact)},
                   {"log_polymer_z_exact", optional_json(c.log_polymer_z_exact)},
                   {"estimate", estimate_json(c.estimate)}};
  r.hypotheses = potts_hypotheses(c.hypotheses);
  r.work = Json{{"steps_per_chain", c.estimate.steps_per_chain}, {"work_units", c.estimate.work_units}};
  return r;
}

HardcoreCountOptions hardcore_options(const Params& p, const HostGraph& g) {
  HardcoreCountOptions o;
  std::optional<double> tau;
  if (!p.tau.empty()) {
    const EvenOddHardcoreModel s0(g, hardcore_params(p), 0);
    const EvenOddHardcoreModel s1(g, hardcore_params(p), 1);
    tau = resolve_tau(p, {&s0, &s1});
  }
  o.annealing = annealing_options(p, tau);
  o.count_epsilon = p.count_epsilon;
  o.count_delta = p.count_delta;
  return o;
}

Json hardcore_count_json(const HardcoreCountReport& c) {
  return Json{{"log_z_hat", c.log_z_hat},
              {"z_hat", c.z_hat()},
              {"log_z_exact", optional_json(c.log_z_exact)},
              {"side0", estimate_json(c.side[0])},
              {"side1", estimate_json(c.side[1])}};
}

RunRecord cmd_sample_hardcore(const Params& p) {
  RunRecord r;
  const HostGraph g = require_graph(p);
  const auto s = sample_hardcore(g, hardcore_params(p), p.epsilon, p.seed, hardcore_options(p, g));
  r.outputs = Json{{"set", s.sample.set},
                   {"side", s.sample.side},
                   {"truncated", s.sample.truncated},
                   {"count", hardcore_count_json(s.count)}};
  r.hypotheses = hardcore_hypotheses(s.count.hypotheses);
  r.work = Json{{"steps", s.sample.steps_taken},
                {"count_work_units", s.count.side[0].work_units + s.count.side[1].work_units}};
  return r;
}

RunRecord cmd_count_hardcore(const Params& p) {
  RunRecord r;
  const HostGraph g = require_graph(p);
  const auto c = count_hardcore(g, hardcore_params(p), p.epsilon, p.seed, hardcore_options(p, g));
  r.outputs = hardcore_count_json(c);
  r.hypotheses = hardcore_hypotheses(c.hypotheses);
  r.work = Json{{"work_units", c.side[0].work_units + c.side[1].work_units}};
  return r;
}

RunRecord cmd_glauber(const Params& p) {
  RunRecord r;
  const ModelHolder h = build_model(p);
  const PolymerModel& m = h.model();
  GlauberOptions o;
  o.eta = p.model == "potts" ? potts_eta(p.beta, h.graph->max_degree()) : hardcore_eta(p.lambda);
  o.steps_override = p.steps;
  o.ceiling = p.glauber_ceiling;
  const GlauberRun run = run_restricted_glauber(m, p.epsilon, p.seed, o);
  r.outputs = Json{{"model", m.name()},
                   {"eta", o.eta},
                   {"budget", run.budget},
                   {"accepted", run.accepted},
                   {"polymers", polymers_json(run.final.sorted_polymers())},
                   {"spins", configuration_to_spins(run.final, m)}};
  r.work = Json{{"steps", run.steps_taken}};
  return r;
}

RunRecord cmd_oracle(const Params& p) {
  RunRecord r;
  if (p.target == "hardcore") {
    const HostGraph g = require_graph(p);
    const long double z = brute_hardcore_partition(g, p.lambda);
    r.outputs = Json{{"Z", static_cast<double>(z)}, {"log_Z", static_cast<double>(std::log(z))}};
  } else if (p.target == "potts") {
    const HostGraph g = require_graph(p);
    const auto part = brute_potts_partition(g, p.q, p.beta);
    r.outputs = Json{{"Z", static_cast<double>(part.z)},
                     {"log_Z", static_cast<double>(std::log(part.z))},
                     {"histogram", part.histogram}};
  } else if (p.target == "polymer") {
    const ModelHolder h = build_model(p);
    const PolymerModel& m = h.model();
    const auto part = brute_polymer_partition(m, std::min(m.max_size(), m.host().size()), p.state_budget);
    r.outputs = Json{{"Z", static_cast<double>(part.z)},
                     {"log_Z", part.log_z},
                     {"model", m.name()},
                     {"states", part.gibbs.states.size()},
                     {"polymers", part.polymers.size()}};
  } else {
    throw ValidationError("oracle target must be hardcore, potts or polymer");
  }
  return r;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string text_value(const Json& v) {
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

/// One line per scalar; nested objects get dotted keys, arrays of objects
/// one line per element.
void write_flat(std::ostream& out, const std::string& prefix, const Json& obj) {
  for (const auto& [key, value] : obj.items()) {
    const std::string name = prefix + key;
    if (value.is_object()) {
      write_flat(out, name + ".", value);
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      for (std::size_t i = 0; i < value.size(); ++i) out << name << "[" << i << "] = " << value[i].dump() << "\n";
    } else {
      out << name << " = " << text_value(value) << "\n";
    }
  }
}

}  // namespace

RunRecord execute(const Params& p) {
  using Fn = RunRecord (*)(const Params&);
  static const std::vector<std::pair<std::string, Fn>> table{
      {"gen-graph", cmd_gen_graph},         {"check-expansion", cmd_check_expansion},
      {"check-conditions", cmd_check_conditions}, {"polymer-sample", cmd_polymer_sample},
      {"anneal-count", cmd_anneal_count},   {"sample-potts", cmd_sample_potts},
      {"count-potts", cmd_count_potts},     {"sample-hardcore", cmd_sample_hardcore},
      {"count-hardcore", cmd_count_hardcore}, {"glauber", cmd_glauber},
      {"oracle", cmd_oracle},
  };
  for (const auto& [name, fn] : table) {
    if (name != p.command) continue;
    const auto t0 = std::chrono::steady_clock::now();
    RunRecord r = fn(p);
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.command = p.command;
    r.params = p;
    return r;
  }
  throw ValidationError("unknown command '" + p.command + "'");
}

bool hypotheses_fail(const RunRecord& r) {
  return r.hypotheses.contains("all_hold") && !r.hypotheses.at("all_hold").get<bool>();
}

std::string render(const RunRecord& r, const std::string& format) {
  if (format == "json") return r.to_json().dump(2) + "\n";
  std::ostringstream out;
  if (r.command == "gen-graph" && r.outputs.contains("graph")) return r.outputs.at("graph").get<std::string>();
  write_flat(out, "", r.outputs);
  Json hyp = r.hypotheses;
  hyp.erase("warnings");
  write_flat(out, "hypothesis.", hyp);
  write_flat(out, "work.", r.work);
  return out.str();
}

namespace {

template <class T>
void add_optional(CLI::App* app, const std::string& name, std::optional<T>& target, const std::string& desc) {
  app->add_option_function<T>(name, [&target](const T& v) { target = v; }, desc);
}

void add_common(CLI::App* sub, Params& p) {
  sub->add_option("--graph", p.graph, "graph file");
  sub->add_option("--seed", p.seed, "master seed");
  sub->add_option("--epsilon", p.epsilon, "accuracy parameter");
  sub->add_option("--out", p.out, "output format")->check(CLI::IsMember({"json", "text"}));
  sub->add_flag("--strict", p.strict, "exit 4 when a hypothesis fails");
  sub->add_option("--threads", p.threads, "worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--model", p.model, "monomer, potts, hardcore or deviation");
  sub->add_option("--q", p.q, "number of colours");
  sub->add_option("--beta", p.beta, "Potts inverse temperature");
  sub->add_option("--lambda", p.lambda, "hard-core fugacity");
  sub->add_option("--alpha", p.alpha, "claimed expansion");
  sub->add_option("--side", p.side, "bipartition side")->check(CLI::Range(0, 1));
  sub->add_option("--ground", p.ground, "Potts ground colour");
  add_optional(sub, "--cap", p.cap, "polymer size cap");
  sub->add_option("--tau", p.tau, "size-draw rate: a number or 'auto'");
  sub->add_option("--theta", p.theta, "mixing parameter");
  sub->add_option("--kmax", p.kmax, "enumeration size for condition checks");
  add_optional(sub, "--delta", p.delta, "failure probability (median amplification)");
  add_optional(sub, "--steps", p.steps, "explicit chain length");
  add_optional(sub, "--ell", p.ell, "annealing length override");
  add_optional(sub, "--samples", p.samples, "samples per annealing level override");
  add_optional(sub, "--count-epsilon", p.count_epsilon, "per-side counting accuracy");
  add_optional(sub, "--count-delta", p.count_delta, "per-side counting failure probability");
}

int replay(const Params& p, std::ostream& out, std::ostream& err) {
  std::ifstream in(p.record);
  if (!in) throw ValidationError("cannot open record " + p.record);
  Json stored;
  try {
    stored = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("record is not valid JSON: ") + e.what());
  }
  const RunRecord original = RunRecord::from_json(stored);
  Params rerun = original.params;
  const RunRecord fresh = execute(rerun);
  if (same_run(original.to_json(), fresh.to_json())) {
    out << "replay identical: " << original.command << "\n";
    return kExitOk;
  }
  err << "replay differs from " << p.record << "\n";
  out << render(fresh, "json");
  return kExitMismatch;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polymer-model Markov chains: sampling and counting"};
  app.require_subcommand(1);
  Params p;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"gen-graph", "random Δ-regular bipartite graph"},
      {"check-expansion", "edge or bipartite vertex expansion"},
      {"check-conditions", "sampling, Kotecký–Preiss and mixing conditions"},
      {"polymer-sample", "one run of the polymer dynamics"},
      {"anneal-count", "partition-function estimate by annealing"},
      {"sample-potts", "approximate Potts sample"},
      {"count-potts", "approximate Potts partition function"},
      {"sample-hardcore", "approximate hard-core sample"},
      {"count-hardcore", "approximate hard-core partition function"},
      {"glauber", "restricted Glauber dynamics on a truncated model"},
      {"oracle", "exact partition function by enumeration"},
  };
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    add_common(sub, p);
    if (name == "gen-graph") {
      sub->add_option("--n-per-side", p.n_per_side, "vertices per side");
      sub->add_option("--degree", p.degree, "degree Δ");
      sub->add_option("--write", p.write, "write the graph to this path");
    }
    if (name == "check-expansion") {
      sub->add_option("--kind", p.kind, "edge or vertex")->check(CLI::IsMember({"edge", "vertex"}));
    }
    if (name == "oracle") {
      sub->add_option("target", p.target, "hardcore, potts or polymer")
          ->required()
          ->check(CLI::IsMember({"hardcore", "potts", "polymer"}));
    }
  }
  CLI::App* rep = app.add_subcommand("replay", "re-run a JSON record and compare");
  rep->add_option("--record", p.record, "record file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    for (const auto* sub : app.get_subcommands()) out << sub->help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    apply_budget_env(p);
    p.command = app.get_subcommands().front()->get_name();
    if (p.command == "replay") return replay(p, out, err);
    const RunRecord r = execute(p);
    if (r.hypotheses.contains("warnings")) {
      for (const auto& w : r.hypotheses.at("warnings")) err << "warning: " << w.get<std::string>() << "\n";
    }
    out << render(r, p.out);
    if (p.out == "text") err << "wall_time_s = " << format_number(r.wall_time_s) << "\n";
    if (p.strict && hypotheses_fail(r)) {
      err << "strict: hypothesis check failed\n";
      return kExitStrict;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace polymc::cli
