#include "polymc_cli/record.hpp"

#include <cstdlib>
#include <string>

#include "polymc/errors.hpp"
#include "polymc/oracle.hpp"
#include "polymc/polymer_model.hpp"
#include "polymc/restricted_glauber.hpp"

namespace polymc::cli {

namespace {

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <class T>
void read_opt(const Json& j, const char* key, std::optional<T>& out) {
  if (!j.contains(key) || j.at(key).is_null()) {
    out.reset();
  } else {
    out = j.at(key).get<T>();
  }
}

template <class T>
void read(const Json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

std::size_t env_size(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v, &end, 10);
  if (*end != '\0' || x == 0) throw ValidationError(std::string(name) + " must be a positive integer");
  return static_cast<std::size_t>(x);
}

double env_double(const char* name, double fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const double x = std::strtod(v, &end);
  if (*end != '\0' || !(x > 0)) throw ValidationError(std::string(name) + " must be a positive number");
  return x;
}

}  // namespace

Json params_to_json(const Params& p) {
  return Json{
      {"graph", p.graph},
      {"seed", p.seed},
      {"epsilon", p.epsilon},
      {"delta", opt(p.delta)},
      {"out", p.out},
      {"strict", p.strict},
      {"threads", p.threads},
      {"model", p.model},
      {"q", p.q},
      {"beta", p.beta},
      {"lambda", p.lambda},
      {"alpha", p.alpha},
      {"side", p.side},
      {"ground", p.ground},
      {"cap", opt(p.cap)},
      {"tau", p.tau},
      {"theta", p.theta},
      {"kmax", p.kmax},
      {"steps", opt(p.steps)},
      {"ell", opt(p.ell)},
      {"samples", opt(p.samples)},
      {"count_epsilon", opt(p.count_epsilon)},
      {"count_delta", opt(p.count_delta)},
      {"kind", p.kind},
      {"n_per_side", p.n_per_side},
      {"degree", p.degree},
      {"write", p.write},
      {"target", p.target},
      {"enum_budget", p.enum_budget},
      {"state_budget", p.state_budget},
      {"glauber_ceiling", p.glauber_ceiling},
  };
}

Params params_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError(0, "params must be an object");
  Params p;
  try {
    read(j, "graph", p.graph);
    read(j, "seed", p.seed);
    read(j, "epsilon", p.epsilon);
    read_opt(j, "delta", p.delta);
    read(j, "out", p.out);
    read(j, "strict", p.strict);
    read(j, "threads", p.threads);
    read(j, "model", p.model);
    read(j, "q", p.q);
    read(j, "beta", p.beta);
    read(j, "lambda", p.lambda);
    read(j, "alpha", p.alpha);
    read(j, "side", p.side);
    read(j, "ground", p.ground);
    read_opt(j, "cap", p.cap);
    read(j, "tau", p.tau);
    read(j, "theta", p.theta);
    read(j, "kmax", p.kmax);
    read_opt(j, "steps", p.steps);
    read_opt(j, "ell", p.ell);
    read_opt(j, "samples", p.samples);
    read_opt(j, "count_epsilon", p.count_epsilon);
    read_opt(j, "count_delta", p.count_delta);
    read(j, "kind", p.kind);
    read(j, "n_per_side", p.n_per_side);
    read(j, "degree", p.degree);
    read(j, "write", p.write);
    read(j, "target", p.target);
    read(j, "enum_budget", p.enum_budget);
    read(j, "state_budget", p.state_budget);
    read(j, "glauber_ceiling", p.glauber_ceiling);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("bad parameter: ") + e.what());
  }
  return p;
}

void apply_budget_env(Params& p) {
  p.enum_budget = env_size("POLYMC_ENUM_BUDGET", kDefaultEnumerationBudget);
  p.state_budget = env_size("POLYMC_STATE_BUDGET", kDefaultStateBudget);
  p.glauber_ceiling = env_double("POLYMC_GLAUBER_CEILING", kGlauberCeiling);
}

Json RunRecord::to_json() const {
  return Json{
      {"schema_version", kSchemaVersion},
      {"command", command},
      {"params", params_to_json(params)},
      {"hypotheses", hypotheses},
      {"outputs", outputs},
      {"work", work},
      {"wall_time_s", wall_time_s},
  };
}

RunRecord RunRecord::from_json(const Json& j) {
  if (!j.is_object()) throw ParseError(0, "record must be a JSON object");
  if (!j.contains("schema_version") || j.at("schema_version") != kSchemaVersion) {
    throw ParseError(0, "unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  if (!j.contains("command") || !j.at("command").is_string()) throw ParseError(0, "record has no command");
  RunRecord r;
  r.command = j.at("command").get<std::string>();
  r.params = params_from_json(j.value("params", Json::object()));
  r.params.command = r.command;
  r.hypotheses = j.value("hypotheses", Json::object());
  r.outputs = j.value("outputs", Json::object());
  r.work = j.value("work", Json::object());
  r.wall_time_s = j.value("wall_time_s", 0.0);
  return r;
}

bool same_run(const Json& a, const Json& b) {
  Json x = a;
  Json y = b;
  x.erase("wall_time_s");
  y.erase("wall_time_s");
  return x == y;
}

}  // namespace polymc::cli
