#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace polymc::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Every knob a subcommand may read. Unused fields keep their defaults and
/// are still recorded, so a record alone determines the run.
struct Params {
  std::string command;
  std::string graph;
  std::uint64_t seed = 1;
  double epsilon = 0.1;
  std::optional<double> delta;
  std::string out = "text";
  bool strict = false;
  unsigned threads = 1;

  std::string model = "potts";
  int q = 2;
  double beta = 1.0;
  double lambda = 1.0;
  double alpha = 0.5;
  int side = 0;
  int ground = 0;
  std::optional<std::size_t> cap;
  /// Empty, "auto", or a number.
  std::string tau;
  double theta = 0.36787944117144233;
  std::size_t kmax = 3;

  std::optional<std::uint64_t> steps;
  std::optional<std::uint64_t> ell;
  std::optional<std::uint64_t> samples;
  std::optional<double> count_epsilon;
  std::optional<double> count_delta;

  std::string kind = "edge";
  std::size_t n_per_side = 8;
  std::size_t degree = 3;
  std::string write;
  std::string target;
  std::string record;

  std::size_t enum_budget = 0;
  std::size_t state_budget = 0;
  double glauber_ceiling = 0.0;
};

Json params_to_json(const Params& p);
/// Throws polymc::ParseError on a malformed parameter object.
Params params_from_json(const Json& j);

/// Reads POLYMC_ENUM_BUDGET, POLYMC_STATE_BUDGET and POLYMC_GLAUBER_CEILING
/// into p, falling back to the library defaults.
void apply_budget_env(Params& p);

struct RunRecord {
  std::string command;
  Params params;
  Json hypotheses = Json::object();
  Json outputs = Json::object();
  Json work = Json::object();
  double wall_time_s = 0.0;

  Json to_json() const;
  static RunRecord from_json(const Json& j);
};

/// Equal as JSON once wall_time_s is dropped from both.
bool same_run(const Json& a, const Json& b);

}  // namespace polymc::cli
