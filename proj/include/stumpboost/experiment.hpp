#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stumpboost/config.hpp"

namespace stumpboost {

// One sweep outcome; excess_err is true_err minus the 0.25 floor of the
// synthetic target.
struct SummaryRow {
  std::size_t m = 0;
  int d = 1;
  std::uint64_t seed = 0;  // derived per-run stream, not the master seed
  std::optional<double> stop_budget{};
  std::size_t stopped_iter = 0;
  double final_total_alpha = 0.0;
  double true_err = 0.0;
  double excess_err = 0.0;
  double true_excess_convex = 0.0;
};

std::string summary_csv_header();

// Run one sweep cell: sample synth(d, m, run_seed), apply the stop rule,
// measure the stopped ensemble exactly.
SummaryRow run_sweep_cell(const RunConfig& config, std::size_t m,
                          std::uint64_t run_seed);

// Execute the configured experiment, writing its CSV(s) under out_dir:
// gen -> data.csv, train -> trace.csv, sweep -> summary.csv,
// bounds -> bounds.csv, rademacher -> rademacher.csv, margin -> margin.csv.
// Returns the paths written.
std::vector<std::string> run_experiment(const RunConfig& config,
                                        const std::string& out_dir);

}  // namespace stumpboost
