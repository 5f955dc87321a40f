#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stumpboost/boost.hpp"
#include "stumpboost/loss.hpp"
#include "stumpboost/stopping.hpp"

namespace stumpboost {

enum class ExperimentKind { gen, train, sweep, bounds, rademacher, margin };

std::string experiment_name(ExperimentKind kind);

// Fully resolved experiment description. Parsed from key=value text with
// '#' comments; each experiment admits a fixed key set, anything else is
// rejected with the offending line number. Defaults: loss=least_squares,
// schedule=power:1:0.6667, inner_tol=1e-10, max_iters=256, stop=none,
// n_seeds=20, n_draws=10000, record_true=1, normalize_basis=0.
struct RunConfig {
  ExperimentKind experiment = ExperimentKind::train;
  int d = 1;
  std::size_t m = 0;
  std::vector<std::size_t> m_list;
  std::uint64_t seed = 0;
  LossSpec loss = LossSpec::least_squares();
  StepSchedule schedule{};
  std::size_t max_iters = 256;
  StopRule stop{};
  double inner_tol = 1e-10;
  std::size_t n_seeds = 20;
  std::size_t n_draws = 10000;
  bool record_true = true;
  bool normalize_basis = false;
  std::string instance;  // margin: points CSV, relative to base_dir
  double h = 0.1;        // margin: constant step cap
  std::size_t k_steps = 0;  // margin: iteration count (key K)
  std::string base_dir = ".";
};

RunConfig parse_config(const std::string& text);
// parse_config on the file's contents, with base_dir set to its directory.
RunConfig load_config(const std::string& path);

}  // namespace stumpboost
