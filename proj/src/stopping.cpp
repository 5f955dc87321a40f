#include "stumpboost/stopping.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "stumpboost/csv.hpp"
#include "stumpboost/rng.hpp"

namespace stumpboost {

StopRule StopRule::none() { return StopRule{}; }
StopRule StopRule::rho_rule(double rho) {
  StopRule r;
  r.kind = StopKind::rho;
  r.rho = rho;
  return r;
}
StopRule StopRule::theory_rule(double slack) {
  StopRule r;
  r.kind = StopKind::theory;
  r.slack = slack;
  return r;
}
StopRule StopRule::cv_rule() {
  StopRule r;
  r.kind = StopKind::cv;
  return r;
}
StopRule StopRule::oracle_rule(OracleCriterion criterion) {
  StopRule r;
  r.kind = StopKind::oracle;
  r.oracle = criterion;
  return r;
}

void validate(const StopRule& rule) {
  switch (rule.kind) {
    case StopKind::none:
    case StopKind::oracle:
      return;
    case StopKind::rho:
      if (!std::isfinite(rule.rho) || rule.rho <= 0.0 || rule.rho >= 1.0)
        throw PreconditionError("stop rule: rho must lie in (0,1)");
      return;
    case StopKind::theory:
      if (!std::isfinite(rule.slack) || rule.slack < 0.0 || rule.slack > 1.0)
        throw PreconditionError("stop rule: slack must lie in [0,1]");
      return;
    case StopKind::cv:
      if (!std::isfinite(rule.validation_fraction) ||
          rule.validation_fraction <= 0.0 || rule.validation_fraction >= 1.0)
        throw PreconditionError(
            "stop rule: validation fraction must lie in (0,1)");
      return;
  }
  throw PreconditionError("stop rule: unknown kind");
}

std::string stop_rule_name(const StopRule& rule) {
  switch (rule.kind) {
    case StopKind::none:
      return "none";
    case StopKind::rho:
      return "rho:" + fmt(rule.rho);
    case StopKind::theory:
      return "theory:" + fmt(rule.slack);
    case StopKind::cv:
      return "cv";
    case StopKind::oracle:
      return rule.oracle == OracleCriterion::error ? "oracle:error"
                                                   : "oracle:convex";
  }
  return "unknown";
}

double rho_budget(std::size_t m, double rho) {
  if (m < 1) throw PreconditionError("rho_budget: m must be >= 1");
  if (!std::isfinite(rho) || rho <= 0.0 || rho >= 1.0)
    throw PreconditionError("rho_budget: rho must lie in (0,1)");
  return std::pow(static_cast<double>(m), rho);
}

double theory_budget(const LossSpec& loss, std::size_t m, double slack) {
  validate(loss);
  if (m < 2) throw PreconditionError("theory_budget: m must be >= 2");
  if (!std::isfinite(slack) || slack < 0.0 || slack > 1.0)
    throw PreconditionError("theory_budget: slack must lie in [0,1]");
  const double md = static_cast<double>(m);
  const double shrink = 1.0 - slack;
  switch (loss.kind) {
    case LossKind::logistic:
      return std::pow(md, 0.5 * shrink);
    case LossKind::exponential:
      return std::pow(std::log(md), shrink);
    case LossKind::least_squares:
    case LossKind::modified_least_squares:
      return std::pow(md, 0.25 * shrink);
    case LossKind::p_norm:
      return std::pow(md, shrink / (2.0 * loss.p));
  }
  throw PreconditionError("theory_budget: unknown loss");
}

std::size_t pick_cv_budget_index(const Eigen::ArrayXd& curve) {
  if (curve.size() == 0)
    throw PreconditionError("pick_cv_budget_index: empty curve");
  std::size_t best = 0;
  for (Eigen::Index i = 1; i < curve.size(); ++i)
    if (curve[i] < curve[static_cast<Eigen::Index>(best)])
      best = static_cast<std::size_t>(i);
  return best;
}

CvResult cv_stop(const BoostConfig& config, const Dataset& data,
                 double validation_fraction) {
  validate(config);
  validate(data);
  if (config.normalize_basis)
    throw PreconditionError("cv_stop: normalized runs are not supported");
  if (!std::isfinite(validation_fraction) || validation_fraction <= 0.0 ||
      validation_fraction >= 1.0)
    throw PreconditionError("cv_stop: validation fraction must lie in (0,1)");
  const std::size_t m = static_cast<std::size_t>(data.size());
  if (m < 3) throw PreconditionError("cv_stop: needs at least 3 samples");
  const std::size_t n_val = static_cast<std::size_t>(
      std::llround(static_cast<double>(m) * validation_fraction));
  if (n_val < 1 || n_val >= m)
    throw PreconditionError("cv_stop: degenerate train/validation split");
  const std::size_t n_train = m - n_val;

  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  std::mt19937_64 rng(derive_stream(config.seed, 1));
  shuffle_indices(idx, rng);

  Dataset train, val;
  train.x.resize(static_cast<Eigen::Index>(n_train));
  train.y.resize(static_cast<Eigen::Index>(n_train));
  val.x.resize(static_cast<Eigen::Index>(n_val));
  val.y.resize(static_cast<Eigen::Index>(n_val));
  for (std::size_t i = 0; i < n_train; ++i) {
    train.x[static_cast<Eigen::Index>(i)] = data.x[static_cast<Eigen::Index>(idx[i])];
    train.y[static_cast<Eigen::Index>(i)] = data.y[static_cast<Eigen::Index>(idx[i])];
  }
  for (std::size_t i = 0; i < n_val; ++i) {
    const std::size_t src = idx[n_train + i];
    val.x[static_cast<Eigen::Index>(i)] = data.x[static_cast<Eigen::Index>(src)];
    val.y[static_cast<Eigen::Index>(i)] = data.y[static_cast<Eigen::Index>(src)];
  }

  // Exploratory pass: plain training run, scored on the held-out third by
  // replaying its steps against the validation points.
  BoostConfig explore = config;
  explore.record_true_risk = false;
  const RunTrace trace = run_boost(explore, train);

  double budget = 0.0;
  if (!trace.rows.empty()) {
    Eigen::ArrayXd fval = Eigen::ArrayXd::Zero(val.x.size());
    Eigen::ArrayXd curve(static_cast<Eigen::Index>(trace.rows.size()));
    for (std::size_t k = 0; k < trace.rows.size(); ++k) {
      const TraceRow& r = trace.rows[k];
      fval += (val.x <= r.threshold).cast<double>() *
              (r.alpha * static_cast<double>(r.sign));
      curve[static_cast<Eigen::Index>(k)] = empirical_01_error(fval, val.y);
    }
    budget = trace.rows[pick_cv_budget_index(curve)].total_alpha;
  }

  const RunTrace retrained = run_boost(config, data, budget);
  CvResult out;
  out.budget = budget;
  out.ensemble = retrained.final_ensemble;
  out.stopped_iter = retrained.rows.size();
  out.final_total_alpha =
      retrained.rows.empty() ? 0.0 : retrained.rows.back().total_alpha;
  return out;
}

OracleResult oracle_stop(const RunTrace& trace, OracleCriterion criterion) {
  if (trace.rows.empty())
    throw PreconditionError("oracle_stop: empty trace");
  Eigen::ArrayXd values(static_cast<Eigen::Index>(trace.rows.size()));
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    const TraceRow& r = trace.rows[i];
    const std::optional<double>& v =
        criterion == OracleCriterion::error ? r.true_err : r.true_excess;
    if (!v)
      throw PreconditionError("oracle_stop: trace lacks population metrics");
    values[static_cast<Eigen::Index>(i)] = *v;
  }
  const std::size_t best = pick_cv_budget_index(values);
  OracleResult out;
  out.stopped_iter = best + 1;
  out.ensemble = ensemble_prefix_from_trace(trace, best + 1);
  out.criterion_value = values[static_cast<Eigen::Index>(best)];
  return out;
}

}  // namespace stumpboost
