#include "ddqe/io/config.hpp"

#include <set>

#include "ddqe/io/toml.hpp"

namespace ddqe::io {

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw ConfigError("config: key '" + key + "': " + why);
}

double need_number(const TomlTable& t, const std::string& key, double fallback,
                   bool require_nonneg = true) {
  auto it = t.find(key);
  if (it == t.end()) return fallback;
  if (!it->second.is_int() && !it->second.is_float()) bad(key, "expected a number");
  const double x = it->second.as_number();
  if (require_nonneg && x < 0.0) bad(key, "must be nonnegative");
  return x;
}

std::int64_t need_int(const TomlTable& t, const std::string& key, std::int64_t fallback,
                      bool require_nonneg = true) {
  auto it = t.find(key);
  if (it == t.end()) return fallback;
  if (!it->second.is_int()) bad(key, "expected an integer");
  const std::int64_t x = it->second.as_int();
  if (require_nonneg && x < 0) bad(key, "must be nonnegative");
  return x;
}

std::string need_string(const TomlTable& t, const std::string& key,
                        const std::string& fallback) {
  auto it = t.find(key);
  if (it == t.end()) return fallback;
  if (!it->second.is_string()) bad(key, "expected a string");
  return it->second.as_string();
}

bool need_bool(const TomlTable& t, const std::string& key, bool fallback) {
  auto it = t.find(key);
  if (it == t.end()) return fallback;
  if (!it->second.is_bool()) bad(key, "expected a boolean");
  return it->second.as_bool();
}

}  // namespace

RunConfig parse_config(const std::string& toml_text) {
  TomlTable t;
  try {
    t = parse_toml(toml_text);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }

  RunConfig cfg;
  const std::string scen = need_string(t, "scenario", "");
  if (scen == "central-spin")
    cfg.scenario = Scenario::central_spin;
  else if (scen == "dirac")
    cfg.scenario = Scenario::dirac;
  else if (scen == "validate")
    cfg.scenario = Scenario::validate;
  else if (scen.empty())
    throw ConfigError("config: key 'scenario' is required");
  else
    bad("scenario", "unknown scenario '" + scen + "'");

  if (!t.count("seed")) throw ConfigError("config: key 'seed' is required");
  cfg.seed = static_cast<std::uint64_t>(need_int(t, "seed", 0));

  cfg.serial = need_bool(t, "serial", false);
  cfg.emit_svg = need_bool(t, "emit_svg", false);
  cfg.output = need_string(t, "output", cfg.output);
  cfg.hbar = need_number(t, "hbar", 1.0);
  if (cfg.hbar <= 0.0) bad("hbar", "must be positive");

  std::set<std::string> known = {"scenario", "seed", "serial", "emit_svg", "output",
                                 "hbar"};

  switch (cfg.scenario) {
    case Scenario::central_spin: {
      known.insert({"omega", "case", "delta_sq_mean", "K", "t_max", "points",
                    "delta_dist"});
      cfg.cs.omega = need_number(t, "omega", cfg.cs.omega);
      cfg.cs.case_label = need_string(t, "case", "");
      if (!cfg.cs.case_label.empty() && cfg.cs.case_label != "i" &&
          cfg.cs.case_label != "ii" && cfg.cs.case_label != "iii")
        bad("case", "must be one of \"i\", \"ii\", \"iii\"");
      cfg.cs.delta_sq_mean = need_number(t, "delta_sq_mean", cfg.cs.delta_sq_mean, false);
      if (t.count("delta_sq_mean") && cfg.cs.delta_sq_mean < 0.0)
        bad("delta_sq_mean", "must be nonnegative");
      if (cfg.cs.case_label.empty() && cfg.cs.delta_sq_mean < 0.0)
        throw ConfigError("config: central-spin needs 'case' or 'delta_sq_mean'");
      cfg.cs.K = static_cast<int>(need_int(t, "K", cfg.cs.K));
      if (cfg.cs.K < 1) bad("K", "must be >= 1");
      cfg.cs.t_max = need_number(t, "t_max", cfg.cs.t_max);
      if (cfg.cs.t_max <= 0.0) bad("t_max", "must be positive");
      cfg.cs.points = static_cast<int>(need_int(t, "points", cfg.cs.points));
      if (cfg.cs.points < 2) bad("points", "must be >= 2");
      cfg.cs.delta_dist = need_string(t, "delta_dist", cfg.cs.delta_dist);
      if (cfg.cs.delta_dist != "fixed" && cfg.cs.delta_dist != "gaussian")
        bad("delta_dist", "must be \"fixed\" or \"gaussian\"");
      break;
    }
    case Scenario::dirac: {
      known.insert({"p0", "c0", "ell", "sigma", "v", "t_max", "points",
                    "snapshot_times", "kernel_mode", "K", "n", "length", "dt"});
      cfg.dirac.p0 = need_number(t, "p0", cfg.dirac.p0);
      if (cfg.dirac.p0 <= 0.0) bad("p0", "must be positive");
      cfg.dirac.c0 = need_number(t, "c0", cfg.dirac.c0);
      cfg.dirac.ell = need_number(t, "ell", cfg.dirac.ell);
      if (cfg.dirac.ell <= 0.0) bad("ell", "must be positive");
      cfg.dirac.sigma = need_number(t, "sigma", cfg.dirac.sigma);
      if (cfg.dirac.sigma <= 0.0) bad("sigma", "must be positive");
      cfg.dirac.v = need_number(t, "v", cfg.dirac.v);
      if (cfg.dirac.v <= 0.0) bad("v", "must be positive");
      cfg.dirac.t_max = need_number(t, "t_max", cfg.dirac.t_max);
      if (cfg.dirac.t_max <= 0.0) bad("t_max", "must be positive");
      cfg.dirac.points = static_cast<int>(need_int(t, "points", cfg.dirac.points));
      if (cfg.dirac.points < 2) bad("points", "must be >= 2");
      if (auto it = t.find("snapshot_times"); it != t.end()) {
        if (!it->second.is_array()) bad("snapshot_times", "expected an array");
        for (const auto& v : it->second.as_array()) {
          if (!v.is_int() && !v.is_float()) bad("snapshot_times", "expected numbers");
          const double x = v.as_number();
          if (x < 0.0) bad("snapshot_times", "times must be nonnegative");
          cfg.dirac.snapshot_times.push_back(x);
        }
      }
      cfg.dirac.kernel_mode = need_string(t, "kernel_mode", cfg.dirac.kernel_mode);
      if (cfg.dirac.kernel_mode != "exact" && cfg.dirac.kernel_mode != "large-time")
        bad("kernel_mode", "must be \"exact\" or \"large-time\"");
      cfg.dirac.K = static_cast<int>(need_int(t, "K", cfg.dirac.K));
      cfg.dirac.n = static_cast<int>(need_int(t, "n", cfg.dirac.n));
      if (cfg.dirac.n < 16 || (cfg.dirac.n & (cfg.dirac.n - 1)) != 0)
        bad("n", "must be a power of two >= 16");
      cfg.dirac.length = need_number(t, "length", cfg.dirac.length);
      cfg.dirac.dt = need_number(t, "dt", cfg.dirac.dt);
      break;
    }
    case Scenario::validate: {
      known.insert({"quick"});
      cfg.validate.quick = need_bool(t, "quick", false);
      break;
    }
  }

  for (const auto& [key, value] : t)
    if (!known.count(key)) bad(key, "unknown key (strict mode)");
  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  TomlTable t;
  switch (cfg.scenario) {
    case Scenario::central_spin: t["scenario"] = TomlValue{std::string("central-spin")}; break;
    case Scenario::dirac: t["scenario"] = TomlValue{std::string("dirac")}; break;
    case Scenario::validate: t["scenario"] = TomlValue{std::string("validate")}; break;
  }
  t["seed"] = TomlValue{static_cast<std::int64_t>(cfg.seed)};
  t["serial"] = TomlValue{cfg.serial};
  t["emit_svg"] = TomlValue{cfg.emit_svg};
  t["output"] = TomlValue{cfg.output};
  t["hbar"] = TomlValue{cfg.hbar};
  switch (cfg.scenario) {
    case Scenario::central_spin: {
      t["omega"] = TomlValue{cfg.cs.omega};
      if (!cfg.cs.case_label.empty()) t["case"] = TomlValue{cfg.cs.case_label};
      if (cfg.cs.delta_sq_mean >= 0.0) t["delta_sq_mean"] = TomlValue{cfg.cs.delta_sq_mean};
      t["K"] = TomlValue{static_cast<std::int64_t>(cfg.cs.K)};
      t["t_max"] = TomlValue{cfg.cs.t_max};
      t["points"] = TomlValue{static_cast<std::int64_t>(cfg.cs.points)};
      t["delta_dist"] = TomlValue{cfg.cs.delta_dist};
      break;
    }
    case Scenario::dirac: {
      t["p0"] = TomlValue{cfg.dirac.p0};
      t["c0"] = TomlValue{cfg.dirac.c0};
      t["ell"] = TomlValue{cfg.dirac.ell};
      t["sigma"] = TomlValue{cfg.dirac.sigma};
      t["v"] = TomlValue{cfg.dirac.v};
      t["t_max"] = TomlValue{cfg.dirac.t_max};
      t["points"] = TomlValue{static_cast<std::int64_t>(cfg.dirac.points)};
      if (!cfg.dirac.snapshot_times.empty()) {
        TomlValue::Array arr;
        for (double x : cfg.dirac.snapshot_times) arr.push_back(TomlValue{x});
        t["snapshot_times"] = TomlValue{arr};
      }
      t["kernel_mode"] = TomlValue{cfg.dirac.kernel_mode};
      t["K"] = TomlValue{static_cast<std::int64_t>(cfg.dirac.K)};
      t["n"] = TomlValue{static_cast<std::int64_t>(cfg.dirac.n)};
      if (cfg.dirac.length > 0.0) t["length"] = TomlValue{cfg.dirac.length};
      if (cfg.dirac.dt > 0.0) t["dt"] = TomlValue{cfg.dirac.dt};
      break;
    }
    case Scenario::validate: {
      t["quick"] = TomlValue{cfg.validate.quick};
      break;
    }
  }
  return serialize_toml(t);
}

}  // namespace ddqe::io
