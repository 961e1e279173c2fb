#pragma once

// Scenario files are JSON objects:
//
//   {
//     "name": "default",
//     "params": {"P": 10, "P_min": 0, "F_O": 5, "F_C": 2,
//                "p": 0.1, "p_h": 0.05, "x": 0.5, "n": 4},
//     "D_r": 100,
//     "search_max": null,
//     "budget_convention": "as-printed",
//     "seed": 20240601,
//     "output_dir": "out",
//     "chain": {"bribe": null, "max_rank": 20, "elite_rank": 3},
//     "figures": {
//       "fig1": {"grid": {"start": 0.06, "stop": 0.6, "count": 28}},
//       "fig2": {"grid": [0.05, 0.1], "overrides": {"p": 0.5, "x": 0.7}},
//       "fig3": {"grid": {...}, "overrides": {"x": 0.4}, "p_h_ratio": 0.5},
//       "fig4": {...}
//     },
//     "verify": {"samples": 1000, "ranges": {"x": [0.05, 0.95], ...}}
//   }
//
// Every key is optional; missing keys keep the defaults below. Unknown keys
// are rejected so typos surface as errors.

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "briberynet/aggregate.hpp"
#include "briberynet/errors.hpp"
#include "briberynet/model.hpp"

namespace briberynet::cli {

using nlohmann::json;

struct FigureSpec {
  ModelParams params;
  std::vector<double> grid;
  std::optional<double> harassment_ratio;  // only meaningful on the p axis
};

struct ChainSpec {
  std::optional<double> bribe;  // defaults to the closed-form equilibrium bribe
  int max_rank = 20;
  std::optional<int> elite_rank;
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

/// Sampling box for the verification suites. Detection is drawn as a fraction
/// of the share, harassment detection as a fraction of detection, and the
/// citizen fine as a fraction of the officer fine.
struct SamplingRanges {
  Range payoff{0.5, 100.0};
  Range officer_fine{0.1, 50.0};
  Range citizen_fine_fraction{0.0, 0.95};
  Range share{0.05, 0.95};
  Range detection_fraction{0.05, 0.95};
  Range harassment_fraction{0.0, 0.95};
  Range network_size{1.0, 50.0};
};

struct ScenarioConfig {
  std::string name = "default";
  ModelParams params;
  double income_difference = 100.0;
  std::optional<double> search_max;
  BudgetConvention convention = BudgetConvention::AsPrinted;
  std::uint64_t seed = 20240601;
  std::string output_dir = "out";
  ChainSpec chain;
  FigureSpec fig1, fig2, fig3, fig4;
  int verify_samples = 1000;
  SamplingRanges ranges;

  json snapshot() const;
};

inline std::vector<double> linspace(double start, double stop, int count) {
  std::vector<double> v;
  if (count <= 0) return v;
  v.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    v.push_back(start);
    return v;
  }
  for (int i = 0; i < count; ++i) v.push_back(start + (stop - start) * i / (count - 1));
  return v;
}

/// Figure bases derived from the scenario parameters. The harassment sweeps
/// hold p at 0.5; with x = 0.9 and P = 60 the network utility stays positive
/// along the whole p_h grid. The bribe-count sweep along p uses x = 0.4 and
/// ties p_h to p / 2.
inline void apply_figure_defaults(ScenarioConfig& c) {
  c.fig1.params = c.params;
  c.fig1.grid = linspace(0.06, 0.60, 28);
  c.fig1.harassment_ratio.reset();

  c.fig2.params = c.params;
  c.fig2.params.detection = 0.5;
  c.fig2.params.harassment_detection = 0.0;  // swept
  c.fig2.params.share = 0.9;
  c.fig2.params.payoff = 60.0;
  c.fig2.grid = linspace(0.0, 0.45, 10);
  c.fig2.harassment_ratio.reset();

  c.fig3.params = c.params;
  c.fig3.params.share = 0.4;
  c.fig3.grid = linspace(0.05, 0.35, 13);
  c.fig3.harassment_ratio = 0.5;

  c.fig4.params = c.fig2.params;
  c.fig4.grid = linspace(0.05, 0.45, 9);
  c.fig4.harassment_ratio.reset();
}

inline ScenarioConfig default_config() {
  ScenarioConfig c;
  apply_figure_defaults(c);
  return c;
}

inline const char* to_string(BudgetConvention c) {
  return c == BudgetConvention::AsPrinted ? "as-printed" : "gross-of-share";
}

inline BudgetConvention parse_convention(const std::string& s) {
  if (s == "as-printed") return BudgetConvention::AsPrinted;
  if (s == "gross-of-share") return BudgetConvention::GrossOfShare;
  throw Error(ErrorKind::Config, "budget convention must be 'as-printed' or 'gross-of-share', got '" + s + "'");
}

namespace detail {

[[noreturn]] inline void config_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::Config, path + ": " + msg);
}

inline void reject_unknown(const json& obj, const std::string& path,
                           std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) config_error(path, "expected an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items())
    if (!keys.count(key)) config_error(path.empty() ? key : path + "." + key, "unknown key");
}

inline std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline double number(const json& v, const std::string& path) {
  if (!v.is_number()) config_error(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) config_error(path, "must be finite");
  return d;
}

inline int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) config_error(path, "expected an integer");
  return v.get<int>();
}

inline void read_params(const json& obj, const std::string& path, ModelParams& m) {
  reject_unknown(obj, path, {"P", "P_min", "F_O", "F_C", "p", "p_h", "x", "n"});
  const std::pair<const char*, double ModelParams::*> fields[] = {
      {"P", &ModelParams::payoff},          {"P_min", &ModelParams::reservation_payoff},
      {"F_O", &ModelParams::officer_fine},  {"F_C", &ModelParams::citizen_fine},
      {"p", &ModelParams::detection},       {"p_h", &ModelParams::harassment_detection},
      {"x", &ModelParams::share}};
  for (const auto& [key, member] : fields)
    if (obj.contains(key)) m.*member = number(obj[key], join(path, key));
  if (obj.contains("n")) m.network_size = integer(obj["n"], join(path, "n"));
}

inline void check_params(const ModelParams& m, const std::string& path) {
  try {
    validate(m);
    punishment_regime(m);
  } catch (const Error& e) {
    config_error(path, e.what());
  }
}

inline std::vector<double> read_grid(const json& v, const std::string& path) {
  std::vector<double> grid;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i)
      grid.push_back(number(v[i], path + "[" + std::to_string(i) + "]"));
  } else if (v.is_object()) {
    reject_unknown(v, path, {"start", "stop", "count"});
    for (const char* key : {"start", "stop", "count"})
      if (!v.contains(key)) config_error(join(path, key), "missing");
    const int count = integer(v["count"], join(path, "count"));
    if (count < 1) config_error(join(path, "count"), "must be >= 1");
    grid = linspace(number(v["start"], join(path, "start")), number(v["stop"], join(path, "stop")), count);
  } else {
    config_error(path, "expected an array or {start, stop, count}");
  }
  if (grid.empty()) config_error(path, "grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid[i] < 0.0 || grid[i] > 1.0)
      config_error(path + "[" + std::to_string(i) + "]", "grid values must lie in [0,1]");
  return grid;
}

inline void read_figure(const json& obj, const std::string& path, const ModelParams& base,
                        FigureSpec& fig) {
  reject_unknown(obj, path, {"grid", "overrides", "p_h_ratio"});
  fig.params = base;
  if (obj.contains("overrides")) read_params(obj["overrides"], join(path, "overrides"), fig.params);
  if (obj.contains("grid")) fig.grid = read_grid(obj["grid"], join(path, "grid"));
  if (obj.contains("p_h_ratio")) {
    if (obj["p_h_ratio"].is_null()) {
      fig.harassment_ratio.reset();
    } else {
      const double r = number(obj["p_h_ratio"], join(path, "p_h_ratio"));
      if (r < 0.0 || r >= 1.0) config_error(join(path, "p_h_ratio"), "must lie in [0,1)");
      fig.harassment_ratio = r;
    }
  }
}

inline Range read_range(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) config_error(path, "expected [lo, hi]");
  Range r{number(v[0], path + "[0]"), number(v[1], path + "[1]")};
  if (r.lo > r.hi) config_error(path, "lo must not exceed hi");
  return r;
}

inline std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace detail

/// Parses a scenario from JSON text. `source` labels error messages.
inline ScenarioConfig parse_config(const std::string& text, const std::string& source = "<config>") {
  using namespace detail;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Config, source + ":" + std::to_string(line_of_offset(text, e.byte)) +
                                       ": malformed JSON (" + e.what() + ")");
  }
  ScenarioConfig c = default_config();
  reject_unknown(root, "", {"name", "params", "D_r", "search_max", "budget_convention", "seed",
                            "output_dir", "chain", "figures", "verify"});
  if (root.contains("name")) {
    if (!root["name"].is_string()) config_error("name", "expected a string");
    c.name = root["name"].get<std::string>();
  }
  if (root.contains("params")) read_params(root["params"], "params", c.params);
  check_params(c.params, "params");
  apply_figure_defaults(c);

  if (root.contains("D_r")) {
    c.income_difference = number(root["D_r"], "D_r");
    if (c.income_difference < 0.0) config_error("D_r", "must be >= 0");
  }
  if (root.contains("search_max") && !root["search_max"].is_null()) {
    c.search_max = number(root["search_max"], "search_max");
    if (*c.search_max <= 0.0) config_error("search_max", "must be > 0");
  }
  if (root.contains("budget_convention")) {
    if (!root["budget_convention"].is_string()) config_error("budget_convention", "expected a string");
    try {
      c.convention = parse_convention(root["budget_convention"].get<std::string>());
    } catch (const Error& e) {
      config_error("budget_convention", e.what());
    }
  }
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) config_error("seed", "expected a non-negative integer");
    c.seed = root["seed"].get<std::uint64_t>();
  }
  if (root.contains("output_dir")) {
    if (!root["output_dir"].is_string()) config_error("output_dir", "expected a string");
    c.output_dir = root["output_dir"].get<std::string>();
  }
  if (root.contains("chain")) {
    const json& ch = root["chain"];
    reject_unknown(ch, "chain", {"bribe", "max_rank", "elite_rank"});
    if (ch.contains("bribe") && !ch["bribe"].is_null()) {
      c.chain.bribe = number(ch["bribe"], "chain.bribe");
      if (*c.chain.bribe < 0.0) config_error("chain.bribe", "must be >= 0");
    }
    if (ch.contains("max_rank")) {
      c.chain.max_rank = integer(ch["max_rank"], "chain.max_rank");
      if (c.chain.max_rank < 1) config_error("chain.max_rank", "must be >= 1");
    }
    if (ch.contains("elite_rank") && !ch["elite_rank"].is_null()) {
      c.chain.elite_rank = integer(ch["elite_rank"], "chain.elite_rank");
      if (*c.chain.elite_rank < 1) config_error("chain.elite_rank", "must be >= 1");
    }
  }
  const std::pair<const char*, FigureSpec*> slots[] = {
      {"fig1", &c.fig1}, {"fig2", &c.fig2}, {"fig3", &c.fig3}, {"fig4", &c.fig4}};
  if (root.contains("figures")) {
    const json& figs = root["figures"];
    reject_unknown(figs, "figures", {"fig1", "fig2", "fig3", "fig4"});
    for (const auto& [key, fig] : slots) {
      if (!figs.contains(key)) continue;
      const ModelParams base = fig->params;
      read_figure(figs[key], std::string("figures.") + key, base, *fig);
    }
  }
  for (const auto& [key, fig] : slots) {
    try {
      validate(fig->params);
    } catch (const Error& e) {
      config_error(std::string("figures.") + key + ".overrides", e.what());
    }
  }
  if (root.contains("verify")) {
    const json& v = root["verify"];
    reject_unknown(v, "verify", {"samples", "ranges"});
    if (v.contains("samples")) {
      c.verify_samples = integer(v["samples"], "verify.samples");
      if (c.verify_samples < 1) config_error("verify.samples", "must be >= 1");
    }
    if (v.contains("ranges")) {
      const json& r = v["ranges"];
      reject_unknown(r, "verify.ranges",
                     {"P", "F_O", "F_C_fraction", "x", "p_fraction", "p_h_fraction", "n"});
      const std::pair<const char*, Range SamplingRanges::*> fields[] = {
          {"P", &SamplingRanges::payoff},
          {"F_O", &SamplingRanges::officer_fine},
          {"F_C_fraction", &SamplingRanges::citizen_fine_fraction},
          {"x", &SamplingRanges::share},
          {"p_fraction", &SamplingRanges::detection_fraction},
          {"p_h_fraction", &SamplingRanges::harassment_fraction},
          {"n", &SamplingRanges::network_size}};
      for (const auto& [key, member] : fields)
        if (r.contains(key)) c.ranges.*member = read_range(r[key], std::string("verify.ranges.") + key);
    }
  }
  return c;
}

inline ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Config, path + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

namespace detail {

inline json params_json(const ModelParams& m) {
  return json{{"P", m.payoff},          {"P_min", m.reservation_payoff},
              {"F_O", m.officer_fine},  {"F_C", m.citizen_fine},
              {"p", m.detection},       {"p_h", m.harassment_detection},
              {"x", m.share},           {"n", m.network_size}};
}

inline json figure_json(const FigureSpec& f) {
  json j{{"overrides", params_json(f.params)}, {"grid", f.grid}};
  j["p_h_ratio"] = f.harassment_ratio ? json(*f.harassment_ratio) : json(nullptr);
  return j;
}

inline json range_json(const Range& r) { return json::array({r.lo, r.hi}); }

}  // namespace detail

/// Fully resolved configuration, recorded alongside every run.
inline json ScenarioConfig::snapshot() const {
  using namespace detail;
  json j;
  j["name"] = name;
  j["params"] = params_json(params);
  j["D_r"] = income_difference;
  j["search_max"] = search_max ? json(*search_max) : json(nullptr);
  j["budget_convention"] = to_string(convention);
  j["seed"] = seed;
  j["output_dir"] = output_dir;
  j["chain"] = {{"bribe", chain.bribe ? json(*chain.bribe) : json(nullptr)},
                {"max_rank", chain.max_rank},
                {"elite_rank", chain.elite_rank ? json(*chain.elite_rank) : json(nullptr)}};
  j["figures"] = {{"fig1", figure_json(fig1)}, {"fig2", figure_json(fig2)},
                  {"fig3", figure_json(fig3)}, {"fig4", figure_json(fig4)}};
  j["verify"] = {{"samples", verify_samples},
                 {"ranges",
                  {{"P", range_json(ranges.payoff)},
                   {"F_O", range_json(ranges.officer_fine)},
                   {"F_C_fraction", range_json(ranges.citizen_fine_fraction)},
                   {"x", range_json(ranges.share)},
                   {"p_fraction", range_json(ranges.detection_fraction)},
                   {"p_h_fraction", range_json(ranges.harassment_fraction)},
                   {"n", range_json(ranges.network_size)}}}};
  return j;
}

}  // namespace briberynet::cli
