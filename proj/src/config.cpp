#include "stumpboost/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "stumpboost/errors.hpp"

namespace stumpboost {

std::string experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::gen: return "gen";
    case ExperimentKind::train: return "train";
    case ExperimentKind::sweep: return "sweep";
    case ExperimentKind::bounds: return "bounds";
    case ExperimentKind::rademacher: return "rademacher";
    case ExperimentKind::margin: return "margin";
  }
  return "unknown";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || !end || *end != '\0' || !std::isfinite(x))
    throw ConfigError(line, "malformed number '" + v + "'");
  return x;
}

std::size_t parse_size(const std::string& v, int line) {
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (v.empty() || !end || *end != '\0' ||
      v.find_first_not_of("0123456789") != std::string::npos)
    throw ConfigError(line, "malformed non-negative integer '" + v + "'");
  return static_cast<std::size_t>(x);
}

bool parse_bool(const std::string& v, int line) {
  if (v == "0") return false;
  if (v == "1") return true;
  throw ConfigError(line, "expected 0 or 1, got '" + v + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

LossKind parse_loss_kind(const std::string& v, int line) {
  if (v == "logistic") return LossKind::logistic;
  if (v == "exponential") return LossKind::exponential;
  if (v == "least_squares") return LossKind::least_squares;
  if (v == "modified_least_squares") return LossKind::modified_least_squares;
  if (v == "p_norm") return LossKind::p_norm;
  throw ConfigError(line, "unknown loss '" + v + "'");
}

StepSchedule parse_schedule(const std::string& v, int line) {
  const std::vector<std::string> parts = split(v, ':');
  if (parts.empty()) throw ConfigError(line, "empty schedule");
  if (parts[0] == "unrestricted") {
    if (parts.size() != 1)
      throw ConfigError(line, "schedule unrestricted takes no parameters");
    return StepSchedule::unrestricted();
  }
  if (parts[0] == "constant") {
    if (parts.size() != 2)
      throw ConfigError(line, "schedule constant:H takes one parameter");
    return StepSchedule::constant(parse_double(parts[1], line));
  }
  if (parts[0] == "power") {
    if (parts.size() != 3)
      throw ConfigError(line, "schedule power:H0:G takes two parameters");
    return StepSchedule::power(parse_double(parts[1], line),
                               parse_double(parts[2], line));
  }
  throw ConfigError(line, "unknown schedule '" + parts[0] + "'");
}

StopRule parse_stop(const std::string& v, int line) {
  const std::vector<std::string> parts = split(v, ':');
  if (parts.empty()) throw ConfigError(line, "empty stop rule");
  if (parts[0] == "none" && parts.size() == 1) return StopRule::none();
  if (parts[0] == "cv" && parts.size() == 1) return StopRule::cv_rule();
  if (parts[0] == "rho" && parts.size() == 2)
    return StopRule::rho_rule(parse_double(parts[1], line));
  if (parts[0] == "theory" && parts.size() == 2)
    return StopRule::theory_rule(parse_double(parts[1], line));
  if (parts[0] == "oracle" && parts.size() == 2) {
    if (parts[1] == "error")
      return StopRule::oracle_rule(OracleCriterion::error);
    if (parts[1] == "convex")
      return StopRule::oracle_rule(OracleCriterion::convex);
    throw ConfigError(line, "oracle criterion must be error or convex");
  }
  throw ConfigError(line, "unknown stop rule '" + v + "'");
}

struct KeySchema {
  std::set<std::string> required;
  std::set<std::string> optional;
};

KeySchema schema_for(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::gen:
      return {{"experiment", "d", "m", "seed"}, {}};
    case ExperimentKind::train:
      return {{"experiment", "d", "m", "seed"},
              {"loss", "p", "schedule", "max_iters", "stop", "inner_tol",
               "record_true", "normalize_basis"}};
    case ExperimentKind::sweep:
      return {{"experiment", "d", "m_list", "seed"},
              {"n_seeds", "loss", "p", "schedule", "max_iters", "stop",
               "inner_tol"}};
    case ExperimentKind::bounds:
      return {{"experiment", "d", "m", "seed"},
              {"loss", "p", "schedule", "max_iters", "inner_tol"}};
    case ExperimentKind::rademacher:
      return {{"experiment", "seed"}, {"m", "m_list", "n_draws"}};
    case ExperimentKind::margin:
      return {{"experiment", "instance", "h", "K"}, {}};
  }
  throw ConfigError(0, "unknown experiment");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  static const std::set<std::string> kAllKeys = {
      "experiment", "d",       "m",          "m_list",      "seed",
      "loss",       "p",       "schedule",   "max_iters",   "stop",
      "inner_tol",  "n_seeds", "n_draws",    "record_true", "normalize_basis",
      "instance",   "h",       "K"};
  std::map<std::string, std::pair<std::string, int>> kv;  // key -> (value, line)
  {
    std::stringstream ss(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(ss, raw)) {
      ++line_no;
      const auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      const std::string line = trim(raw);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError(line_no, "expected key=value, got '" + line + "'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) throw ConfigError(line_no, "empty key");
      if (!kAllKeys.count(key))
        throw ConfigError(line_no, "unknown key '" + key + "'");
      if (kv.count(key))
        throw ConfigError(line_no, "duplicate key '" + key + "'");
      kv.emplace(key, std::make_pair(value, line_no));
    }
  }

  const auto it_exp = kv.find("experiment");
  if (it_exp == kv.end())
    throw ConfigError(0, "missing required key 'experiment'");
  RunConfig cfg;
  {
    const std::string& v = it_exp->second.first;
    const int line = it_exp->second.second;
    if (v == "gen") cfg.experiment = ExperimentKind::gen;
    else if (v == "train") cfg.experiment = ExperimentKind::train;
    else if (v == "sweep") cfg.experiment = ExperimentKind::sweep;
    else if (v == "bounds") cfg.experiment = ExperimentKind::bounds;
    else if (v == "rademacher") cfg.experiment = ExperimentKind::rademacher;
    else if (v == "margin") cfg.experiment = ExperimentKind::margin;
    else throw ConfigError(line, "unknown experiment '" + v + "'");
  }

  const KeySchema schema = schema_for(cfg.experiment);
  for (const auto& [key, vl] : kv) {
    if (!schema.required.count(key) && !schema.optional.count(key))
      throw ConfigError(vl.second, "unknown key '" + key + "' for experiment " +
                                       experiment_name(cfg.experiment));
  }
  for (const std::string& key : schema.required) {
    if (!kv.count(key))
      throw ConfigError(0, "missing required key '" + key + "'");
  }
  if (cfg.experiment == ExperimentKind::rademacher &&
      !kv.count("m") && !kv.count("m_list"))
    throw ConfigError(0, "rademacher needs m or m_list");
  if (kv.count("m") && kv.count("m_list"))
    throw ConfigError(kv.at("m_list").second, "m and m_list are exclusive");

  double p_value = 0.0;
  bool have_p = false;
  for (const auto& [key, vl] : kv) {
    const std::string& v = vl.first;
    const int line = vl.second;
    if (key == "experiment") continue;
    if (key == "d") {
      const std::size_t d = parse_size(v, line);
      if (d < 1) throw ConfigError(line, "d must be >= 1");
      cfg.d = static_cast<int>(d);
    } else if (key == "m") {
      cfg.m = parse_size(v, line);
      if (cfg.m < 1) throw ConfigError(line, "m must be >= 1");
    } else if (key == "m_list") {
      for (const std::string& tok : split(v, ',')) {
        const std::size_t m = parse_size(trim(tok), line);
        if (m < 1) throw ConfigError(line, "m_list entries must be >= 1");
        cfg.m_list.push_back(m);
      }
      if (cfg.m_list.empty()) throw ConfigError(line, "empty m_list");
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_size(v, line));
    } else if (key == "loss") {
      cfg.loss.kind = parse_loss_kind(v, line);
    } else if (key == "p") {
      p_value = parse_double(v, line);
      have_p = true;
    } else if (key == "schedule") {
      cfg.schedule = parse_schedule(v, line);
    } else if (key == "max_iters") {
      cfg.max_iters = parse_size(v, line);
      if (cfg.max_iters < 1) throw ConfigError(line, "max_iters must be >= 1");
    } else if (key == "stop") {
      cfg.stop = parse_stop(v, line);
    } else if (key == "inner_tol") {
      cfg.inner_tol = parse_double(v, line);
      if (cfg.inner_tol < 0.0) throw ConfigError(line, "inner_tol must be >= 0");
    } else if (key == "n_seeds") {
      cfg.n_seeds = parse_size(v, line);
      if (cfg.n_seeds < 1) throw ConfigError(line, "n_seeds must be >= 1");
    } else if (key == "n_draws") {
      cfg.n_draws = parse_size(v, line);
      if (cfg.n_draws < 1) throw ConfigError(line, "n_draws must be >= 1");
    } else if (key == "record_true") {
      cfg.record_true = parse_bool(v, line);
    } else if (key == "normalize_basis") {
      cfg.normalize_basis = parse_bool(v, line);
    } else if (key == "instance") {
      if (v.empty()) throw ConfigError(line, "empty instance path");
      cfg.instance = v;
    } else if (key == "h") {
      cfg.h = parse_double(v, line);
      if (cfg.h <= 0.0) throw ConfigError(line, "h must be > 0");
    } else if (key == "K") {
      cfg.k_steps = parse_size(v, line);
    } else {
      throw ConfigError(line, "unknown key '" + key + "'");
    }
  }

  if (have_p) {
    if (cfg.loss.kind != LossKind::p_norm)
      throw ConfigError(kv.at("p").second, "p is only valid with loss=p_norm");
    if (!(p_value >= 2.0))
      throw ConfigError(kv.at("p").second, "p must be >= 2");
    cfg.loss.p = p_value;
  } else if (cfg.loss.kind == LossKind::p_norm) {
    throw ConfigError(0, "loss=p_norm requires key 'p'");
  }

  if (kv.count("schedule")) {
    try {
      validate(cfg.schedule);
    } catch (const Error& e) {
      throw ConfigError(kv.at("schedule").second, e.what());
    }
  }
  if (kv.count("stop")) {
    try {
      validate(cfg.stop);
    } catch (const Error& e) {
      throw ConfigError(kv.at("stop").second, e.what());
    }
  }
  if (cfg.experiment == ExperimentKind::train &&
      (cfg.stop.kind == StopKind::cv || cfg.stop.kind == StopKind::oracle))
    throw ConfigError(kv.at("stop").second,
                      "train supports stop=none|rho:R|theory:S; use sweep for "
                      "cv and oracle");
  if (cfg.experiment == ExperimentKind::bounds &&
      cfg.schedule.kind == ScheduleKind::unrestricted)
    throw ConfigError(kv.count("schedule") ? kv.at("schedule").second : 0,
                      "bounds requires a restricted (constant or power) "
                      "schedule");
  if (cfg.normalize_basis && cfg.schedule.kind != ScheduleKind::unrestricted)
    throw ConfigError(kv.at("normalize_basis").second,
                      "normalize_basis=1 requires schedule=unrestricted");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  RunConfig cfg = parse_config(buf.str());
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  cfg.base_dir = parent.empty() ? std::string(".") : parent.string();
  return cfg;
}

}  // namespace stumpboost
