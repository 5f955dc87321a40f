#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "stumpboost/basis.hpp"
#include "stumpboost/dataset.hpp"
#include "stumpboost/ensemble.hpp"
#include "stumpboost/loss.hpp"

namespace stumpboost {

// Per-iteration cap h_k on the step magnitude.
enum class ScheduleKind { constant, power, unrestricted };

struct StepSchedule {
  ScheduleKind kind = ScheduleKind::power;
  double h0 = 1.0;       // constant / power leading coefficient
  double gexp = 0.6667;  // power: h_k = h0 * (k+1)^(-gexp)

  static StepSchedule constant(double h0);
  static StepSchedule power(double h0, double gexp);
  static StepSchedule unrestricted();

  // Cap for iteration k (0-based). +inf for unrestricted.
  double cap(std::size_t k) const;

  // True when sum h_k diverges while sum h_k^2 stays finite (the caps can
  // carry the objective arbitrarily far while the quadratic slack stays
  // summable): power with gexp in (1/2, 1]. Constant and unrestricted
  // schedules never qualify.
  bool consistency_conditions() const;
};

void validate(const StepSchedule& schedule);
std::string schedule_name(const StepSchedule& schedule);

// First n caps h_0..h_{n-1}. Restricted schedules only.
Eigen::ArrayXd schedule_caps(const StepSchedule& schedule, std::size_t n);

struct BoostConfig {
  LossSpec loss = LossSpec::least_squares();
  StepSchedule schedule{};
  std::size_t max_iters = 256;
  double inner_tol = 1e-10;  // slack allowed in each greedy minimization
  std::uint64_t seed = 0;
  // Record exact population error/excess-risk columns for the synthetic
  // target with true_model_d triangle periods.
  bool record_true_risk = false;
  int true_model_d = 1;
  // Matching-pursuit mode: candidate stumps rescaled to unit empirical
  // second moment; recorded alpha refers to the rescaled stump while the
  // ensemble stores the equivalent raw-stump coefficient. Requires the
  // unrestricted schedule (a cap would bind in the rescaled coordinates).
  bool normalize_basis = false;
};

void validate(const BoostConfig& config);

struct TraceRow {
  std::size_t iter = 0;  // 1-based step index
  double threshold = 0.0;
  int sign = 1;
  double alpha = 0.0;        // recorded step weight
  double total_alpha = 0.0;  // sum of |alpha| up to this row
  double s_k = 0.0;          // sum of caps spent; equals total_alpha when unrestricted
  double train_obj = 0.0;    // empirical risk after the step
  double train_err = 0.0;    // training 0-1 error after the step
  std::optional<double> true_err{};
  std::optional<double> true_excess{};
};

struct RunTrace {
  BoostConfig config{};
  double initial_objective = 0.0;  // empirical risk of f = 0
  std::vector<TraceRow> rows;
  Ensemble final_ensemble{};

  std::size_t iterations() const { return rows.size(); }
  double final_objective() const {
    return rows.empty() ? initial_objective : rows.back().train_obj;
  }
};

struct GreedyStep {
  SignedStump stump{};
  double alpha = 0.0;      // optimal step within the cap (recorded scale)
  double objective = 0.0;  // empirical risk after taking the step
};

// One boosting step: scan every candidate threshold, solve the capped
// 1-D minimization for each, return the best within tol of the scan
// infimum. margins = f(x_i)*y_i for the current ensemble, aligned with
// data. cap may be +inf (exact line search per candidate). Ties break
// toward the smallest threshold, then sign +1; candidates vanishing on
// the sample are skipped. normalize rescales each candidate to unit
// empirical second moment before solving.
GreedyStep greedy_step(const LossSpec& loss, const Dataset& data,
                       const Eigen::ArrayXd& margins, double cap, double tol,
                       bool normalize = false);
GreedyStep greedy_step(const LossSpec& loss, const Dataset& data,
                       const Ensemble& ensemble, double cap, double tol,
                       bool normalize = false);

// Unconstrained minimizer of a -> empirical risk of f + a*g. Throws
// UnboundedError when the section has no finite minimizer and
// DegenerateDirectionError when g vanishes on the sample.
double exact_line_search(const Ensemble& f, const SignedStump& g,
                         const LossSpec& loss, const Dataset& data);

// Run boosting from f = 0 for max_iters steps. Row k reports the state
// after step k. When total_alpha_budget is set, the run stops just
// before the step that would push sum |alpha| past the budget, so the
// returned ensemble always satisfies coef_l1 <= budget in raw mode.
RunTrace run_boost(const BoostConfig& config, const Dataset& data,
                   std::optional<double> total_alpha_budget = {});

// Ensemble made of the first k recorded steps (k = 0 gives f = 0).
Ensemble ensemble_prefix_from_trace(const RunTrace& trace, std::size_t k);

// Sum of squared recorded steps vs twice the total objective drop. For a
// least-squares, normalized-basis, unrestricted run the two agree to
// rounding; other modes are rejected.
struct EnergyLedger {
  double sum_alpha_sq = 0.0;
  double twice_drop = 0.0;
};
EnergyLedger energy_ledger(const RunTrace& trace);

std::string trace_csv_header();
void write_trace_csv(const RunTrace& trace, const std::string& path);

}  // namespace stumpboost
