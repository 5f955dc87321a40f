#pragma once

#include <cstdint>
#include <string>

#include "stumpboost/boost.hpp"
#include "stumpboost/dataset.hpp"

namespace stumpboost {

enum class StopKind { none, rho, theory, cv, oracle };
enum class OracleCriterion { error, convex };

struct StopRule {
  StopKind kind = StopKind::none;
  double rho = 0.25;                       // rho rule exponent, in (0,1)
  double slack = 0.2;                      // theory rule exponent shrink, in [0,1]
  double validation_fraction = 1.0 / 3.0;  // cv rule, in (0,1)
  OracleCriterion oracle = OracleCriterion::error;

  static StopRule none();
  static StopRule rho_rule(double rho);
  static StopRule theory_rule(double slack);
  static StopRule cv_rule();
  static StopRule oracle_rule(OracleCriterion criterion);
};

void validate(const StopRule& rule);
std::string stop_rule_name(const StopRule& rule);

// Total-step-size budget m^rho: grows without bound, yet slowly enough
// for the deviation term budget^2/sqrt(m) to vanish whenever rho < 1/4.
double rho_budget(std::size_t m, double rho);

// Loss-specific budget sitting strictly inside the rate that keeps the
// uniform-deviation term lipschitz_bound(beta)*beta/sqrt(m) vanishing:
//   logistic                 m^{(1/2)(1-slack)}
//   exponential              (ln m)^{1-slack}
//   least squares / modified m^{(1/4)(1-slack)}
//   p-norm                   m^{(1/(2p))(1-slack)}
// slack in [0,1]; m >= 2.
double theory_budget(const LossSpec& loss, std::size_t m, double slack);

// Index of the first minimum of curve; with nondecreasing budgets this is
// the smallest budget attaining the minimum.
std::size_t pick_cv_budget_index(const Eigen::ArrayXd& curve);

struct CvResult {
  double budget = 0.0;
  Ensemble ensemble{};
  std::size_t stopped_iter = 0;
  double final_total_alpha = 0.0;
};

// Shuffle by stream 1 of config.seed, train on the leading 1-fraction
// share, score every realized total-step-size against held-out
// classification error, then retrain on all data capped at the winning
// budget (winner = smallest budget attaining the minimum).
CvResult cv_stop(const BoostConfig& config, const Dataset& data,
                 double validation_fraction = 1.0 / 3.0);

// Stop at the trace row minimizing the recorded population criterion
// (classification error or excess convex risk); tie-break smallest index.
// Rows must carry the population metrics.
struct OracleResult {
  std::size_t stopped_iter = 0;
  Ensemble ensemble{};
  double criterion_value = 0.0;
};
OracleResult oracle_stop(const RunTrace& trace, OracleCriterion criterion);

}  // namespace stumpboost
