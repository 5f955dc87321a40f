#include "stumpboost/boost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "stumpboost/csv.hpp"
#include "stumpboost/line_search.hpp"
#include "stumpboost/synth.hpp"

namespace stumpboost {

StepSchedule StepSchedule::constant(double h0) {
  return {ScheduleKind::constant, h0, 0.0};
}
StepSchedule StepSchedule::power(double h0, double gexp) {
  return {ScheduleKind::power, h0, gexp};
}
StepSchedule StepSchedule::unrestricted() {
  return {ScheduleKind::unrestricted, 0.0, 0.0};
}

double StepSchedule::cap(std::size_t k) const {
  switch (kind) {
    case ScheduleKind::constant:
      return h0;
    case ScheduleKind::power:
      return h0 * std::pow(static_cast<double>(k + 1), -gexp);
    case ScheduleKind::unrestricted:
      return std::numeric_limits<double>::infinity();
  }
  throw PreconditionError("schedule: unknown kind");
}

bool StepSchedule::consistency_conditions() const {
  return kind == ScheduleKind::power && gexp > 0.5 && gexp <= 1.0;
}

void validate(const StepSchedule& schedule) {
  switch (schedule.kind) {
    case ScheduleKind::unrestricted:
      return;
    case ScheduleKind::constant:
      if (!std::isfinite(schedule.h0) || schedule.h0 <= 0.0)
        throw PreconditionError("schedule: constant cap must be > 0");
      return;
    case ScheduleKind::power:
      if (!std::isfinite(schedule.h0) || schedule.h0 <= 0.0)
        throw PreconditionError("schedule: power coefficient must be > 0");
      if (!std::isfinite(schedule.gexp) || schedule.gexp < 0.0)
        throw PreconditionError("schedule: power exponent must be >= 0");
      return;
  }
  throw PreconditionError("schedule: unknown kind");
}

std::string schedule_name(const StepSchedule& schedule) {
  switch (schedule.kind) {
    case ScheduleKind::constant:
      return "constant:" + fmt(schedule.h0);
    case ScheduleKind::power:
      return "power:" + fmt(schedule.h0) + ":" + fmt(schedule.gexp);
    case ScheduleKind::unrestricted:
      return "unrestricted";
  }
  return "unknown";
}

Eigen::ArrayXd schedule_caps(const StepSchedule& schedule, std::size_t n) {
  validate(schedule);
  if (schedule.kind == ScheduleKind::unrestricted)
    throw PreconditionError("schedule_caps: unrestricted schedule has no caps");
  Eigen::ArrayXd caps(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k)
    caps[static_cast<Eigen::Index>(k)] = schedule.cap(k);
  return caps;
}

void validate(const BoostConfig& config) {
  validate(config.loss);
  validate(config.schedule);
  if (!std::isfinite(config.inner_tol) || config.inner_tol < 0.0)
    throw PreconditionError("boost config: inner_tol must be >= 0");
  if (config.normalize_basis &&
      config.schedule.kind != ScheduleKind::unrestricted)
    throw PreconditionError(
        "boost config: normalize_basis requires the unrestricted schedule");
  if (config.record_true_risk && config.true_model_d < 1)
    throw PreconditionError("boost config: true_model_d must be >= 1");
}

namespace {

// Sample sorted by abscissa, with the candidate thresholds and the number
// of points each one covers. All per-step scans run in this order.
struct SortedSample {
  Eigen::ArrayXd xs;
  Eigen::ArrayXd ys;
  std::vector<double> thresholds;
  std::vector<Eigen::Index> counts;
};

SortedSample build_sorted(const Dataset& data) {
  validate(data);
  if (data.size() == 0) throw EmptyDatasetError("boosting needs samples");
  const Eigen::Index m = data.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return data.x[a] < data.x[b];
  });
  SortedSample s;
  s.xs.resize(m);
  s.ys.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    s.xs[i] = data.x[order[static_cast<std::size_t>(i)]];
    s.ys[i] = data.y[order[static_cast<std::size_t>(i)]];
  }
  s.thresholds = candidate_thresholds(s.xs);
  s.counts.reserve(s.thresholds.size());
  for (double t : s.thresholds) {
    const double* end = std::upper_bound(s.xs.data(), s.xs.data() + m, t);
    s.counts.push_back(end - s.xs.data());
  }
  return s;
}

struct ScanResult {
  double threshold = 1.0;
  Eigen::Index c = 0;   // points covered by the winning stump
  double rec_alpha = 0.0;  // recorded step (rescaled-stump scale in normalize mode)
  double coef = 0.0;       // raw-stump coefficient
  double q_new = 0.0;      // empirical risk after the step
};

// Pick the candidate threshold (sign +1; the symmetric step range makes
// -1 redundant) whose optimal step yields the lowest objective, breaking
// ties toward the smallest threshold. cap == +inf solves each candidate
// exactly and may throw UnboundedError.
ScanResult scan_candidates(const LossSpec& loss, const SortedSample& s,
                           const Eigen::ArrayXd& u, double q_prev, double cap,
                           bool normalize) {
  const Eigen::Index m = s.xs.size();
  const double md = static_cast<double>(m);
  const bool restricted = std::isfinite(cap);

  ScanResult best;
  double best_q = std::numeric_limits<double>::infinity();
  bool found = false;
  const auto consider = [&](std::size_t j, double a_raw, double q_new) {
    if (!(q_new < best_q)) return;
    best_q = q_new;
    const Eigen::Index c = s.counts[j];
    best.threshold = s.thresholds[j];
    best.c = c;
    best.coef = a_raw;
    best.rec_alpha =
        normalize ? a_raw * std::sqrt(static_cast<double>(c) / md) : a_raw;
    best.q_new = q_new;
    found = true;
  };

  if (loss.kind == LossKind::least_squares) {
    // Residual prefix sums give the closed-form step per candidate.
    Eigen::Index done = 0;
    double r_sum = 0.0;
    for (std::size_t j = 0; j < s.thresholds.size(); ++j) {
      const Eigen::Index c = s.counts[j];
      for (; done < c; ++done) r_sum += s.ys[done] * (1.0 - u[done]);
      if (c == 0) continue;
      double a = r_sum / static_cast<double>(c);
      if (restricted) a = std::clamp(a, -cap, cap);
      const double drop =
          (a * r_sum - 0.5 * a * a * static_cast<double>(c)) / md;
      consider(j, a, q_prev - drop);
    }
  } else if (loss.kind == LossKind::exponential) {
    // Prefix weights e^{-u} split by label give the closed-form step.
    Eigen::Index done = 0;
    double wp = 0.0, wn = 0.0;
    double total = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) total += std::exp(-u[i]);
    for (std::size_t j = 0; j < s.thresholds.size(); ++j) {
      const Eigen::Index c = s.counts[j];
      for (; done < c; ++done) {
        const double w = std::exp(-u[done]);
        (s.ys[done] > 0.0 ? wp : wn) += w;
      }
      if (c == 0) continue;
      double a;
      if (wp == 0.0 || wn == 0.0) {
        if (!restricted)
          throw UnboundedError(
              "greedy step: exponential objective unbounded along a candidate");
        a = wp == 0.0 ? -cap : cap;
      } else {
        a = 0.5 * std::log(wp / wn);
        if (restricted) a = std::clamp(a, -cap, cap);
      }
      const double q_new =
          (wp * std::exp(-a) + wn * std::exp(a) + (total - wp - wn)) / md;
      consider(j, a, q_new);
    }
  } else {
    // Generic convex losses: per-candidate 1-D solve on the covered
    // prefix; the untouched suffix contributes a precomputed constant.
    Eigen::ArrayXd suffix(m + 1);
    suffix[m] = 0.0;
    for (Eigen::Index i = m - 1; i >= 0; --i)
      suffix[i] = suffix[i + 1] + loss_value(loss, u[i]);
    for (std::size_t j = 0; j < s.thresholds.size(); ++j) {
      const Eigen::Index c = s.counts[j];
      if (c == 0) continue;
      const auto up = u.head(c);
      const auto yp = s.ys.head(c);
      const double a = restricted ? minimize_restricted(loss, up, yp, cap)
                                  : minimize_exact(loss, up, yp);
      const double q_new =
          (direction_objective(loss, up, yp, a) + suffix[c]) / md;
      consider(j, a, q_new);
    }
  }

  if (!found)
    throw PreconditionError("greedy step: no usable candidate threshold");
  if (!std::isfinite(best.q_new) || !std::isfinite(best.coef))
    throw NumericError("greedy step: objective not finite");
  return best;
}

}  // namespace

GreedyStep greedy_step(const LossSpec& loss, const Dataset& data,
                       const Eigen::ArrayXd& margins, double cap, double tol,
                       bool normalize) {
  validate(loss);
  if (margins.size() != data.size())
    throw PreconditionError("greedy_step: margins/data length mismatch");
  if (std::isnan(cap) || cap <= 0.0)
    throw PreconditionError("greedy_step: cap must be > 0");
  if (!std::isfinite(tol) || tol < 0.0)
    throw PreconditionError("greedy_step: tol must be >= 0");
  if (normalize && std::isfinite(cap))
    throw PreconditionError("greedy_step: normalization needs an uncapped step");

  const Eigen::Index m = data.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return data.x[a] < data.x[b];
  });
  SortedSample s;
  s.xs.resize(m);
  s.ys.resize(m);
  Eigen::ArrayXd u(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index o = order[static_cast<std::size_t>(i)];
    s.xs[i] = data.x[o];
    s.ys[i] = data.y[o];
    u[i] = margins[o];
  }
  s.thresholds = candidate_thresholds(s.xs);
  for (double t : s.thresholds) {
    const double* end = std::upper_bound(s.xs.data(), s.xs.data() + m, t);
    s.counts.push_back(end - s.xs.data());
  }

  const double q_prev = empirical_risk(loss, u);
  // The per-candidate solves resolve to machine precision, far inside tol.
  const ScanResult r = scan_candidates(loss, s, u, q_prev, cap, normalize);
  return GreedyStep{SignedStump{r.threshold, +1}, r.rec_alpha, r.q_new};
}

GreedyStep greedy_step(const LossSpec& loss, const Dataset& data,
                       const Ensemble& ensemble, double cap, double tol,
                       bool normalize) {
  const Eigen::ArrayXd margins = predict(ensemble, data.x) * data.y;
  return greedy_step(loss, data, margins, cap, tol, normalize);
}

double exact_line_search(const Ensemble& f, const SignedStump& g,
                         const LossSpec& loss, const Dataset& data) {
  validate(g);
  validate(data);
  if (data.size() == 0) throw EmptyDatasetError("exact_line_search: no samples");
  const Eigen::ArrayXd u = predict(f, data.x) * data.y;
  const Eigen::ArrayXd d =
      (data.x <= g.threshold).cast<double>() * static_cast<double>(g.sign) *
      data.y;
  return minimize_exact(loss, u, d);
}

RunTrace run_boost(const BoostConfig& config, const Dataset& data,
                   std::optional<double> total_alpha_budget) {
  validate(config);
  if (total_alpha_budget &&
      (std::isnan(*total_alpha_budget) || *total_alpha_budget < 0.0))
    throw PreconditionError("run_boost: budget must be >= 0");

  const SortedSample s = build_sorted(data);
  const Eigen::Index m = s.xs.size();
  const bool unrestricted =
      config.schedule.kind == ScheduleKind::unrestricted;

  RunTrace trace;
  trace.config = config;
  Eigen::ArrayXd u = Eigen::ArrayXd::Zero(m);
  double q = empirical_risk(config.loss, u);
  trace.initial_objective = q;
  trace.rows.reserve(config.max_iters);

  Ensemble ens;
  double total_alpha = 0.0;
  double cap_spent = 0.0;

  for (std::size_t k = 0; k < config.max_iters; ++k) {
    const double cap = config.schedule.cap(k);
    ScanResult step;
    try {
      step = scan_candidates(config.loss, s, u, q, cap, config.normalize_basis);
    } catch (const NumericError& e) {
      throw NumericError("iteration " + std::to_string(k + 1) + ": " + e.what());
    }

    if (total_alpha_budget &&
        total_alpha + std::abs(step.rec_alpha) > *total_alpha_budget)
      break;  // the crossing step is not taken

    u.head(step.c) += step.coef * s.ys.head(step.c);
    q = empirical_risk(config.loss, u);
    total_alpha += std::abs(step.rec_alpha);
    cap_spent = unrestricted ? total_alpha : cap_spent + cap;
    ens.terms.push_back(StumpTerm{step.coef, SignedStump{step.threshold, +1}});

    TraceRow row;
    row.iter = k + 1;
    row.threshold = step.threshold;
    row.sign = +1;
    row.alpha = step.rec_alpha;
    row.total_alpha = total_alpha;
    row.s_k = cap_spent;
    row.train_obj = q;
    row.train_err = empirical_01_error(u * s.ys, s.ys);
    if (config.record_true_risk) {
      row.true_err = true_class_error(ens, config.true_model_d);
      row.true_excess = true_excess_convex(ens, config.true_model_d);
    }
    trace.rows.push_back(row);
  }

  trace.final_ensemble = std::move(ens);
  return trace;
}

Ensemble ensemble_prefix_from_trace(const RunTrace& trace, std::size_t k) {
  if (k > trace.rows.size())
    throw PreconditionError("ensemble_prefix_from_trace: k exceeds trace length");
  if (trace.config.normalize_basis)
    throw PreconditionError(
        "ensemble_prefix_from_trace: normalized traces do not record raw coefficients");
  Ensemble ens;
  ens.terms.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const TraceRow& r = trace.rows[i];
    ens.terms.push_back(StumpTerm{r.alpha, SignedStump{r.threshold, r.sign}});
  }
  return ens;
}

EnergyLedger energy_ledger(const RunTrace& trace) {
  const BoostConfig& c = trace.config;
  if (c.loss.kind != LossKind::least_squares || !c.normalize_basis ||
      c.schedule.kind != ScheduleKind::unrestricted)
    throw PreconditionError(
        "energy_ledger: needs a least-squares, normalized, uncapped run");
  EnergyLedger ledger;
  for (const TraceRow& r : trace.rows) ledger.sum_alpha_sq += r.alpha * r.alpha;
  ledger.twice_drop = 2.0 * (trace.initial_objective - trace.final_objective());
  return ledger;
}

std::string trace_csv_header() {
  return "iter,threshold,sign,alpha,total_alpha,s_k,train_obj,train_err,"
         "true_err,true_excess";
}

void write_trace_csv(const RunTrace& trace, const std::string& path) {
  std::ostringstream out;
  out << trace_csv_header() << '\n';
  for (const TraceRow& r : trace.rows) {
    out << r.iter << ',' << fmt(r.threshold) << ',' << r.sign << ','
        << fmt(r.alpha) << ',' << fmt(r.total_alpha) << ',' << fmt(r.s_k)
        << ',' << fmt(r.train_obj) << ',' << fmt(r.train_err) << ','
        << (r.true_err ? fmt(*r.true_err) : std::string()) << ','
        << (r.true_excess ? fmt(*r.true_excess) : std::string()) << '\n';
  }
  write_file_atomic(path, out.str());
}

}  // namespace stumpboost
