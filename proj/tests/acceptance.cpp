// End-to-end acceptance gate. Each numbered block exercises one observable
// guarantee of the library at fixed seeds and tolerances and prints exactly
// one PASS/FAIL line; the exit code is nonzero when any block fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stumpboost/boost.hpp"
#include "stumpboost/bounds.hpp"
#include "stumpboost/loss.hpp"
#include "stumpboost/margin.hpp"
#include "stumpboost/rng.hpp"
#include "stumpboost/stopping.hpp"
#include "stumpboost/synth.hpp"

using namespace stumpboost;

namespace {

int g_failed = 0;

void report(int idx, bool ok, const std::string& label,
            const std::string& detail = "") {
  std::printf("[%2d/10] %s  %s\n", idx, ok ? "PASS" : "FAIL", label.c_str());
  if (!ok && !detail.empty()) std::printf("        %s\n", detail.c_str());
  if (!ok) ++g_failed;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::string fmt_g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

MarginInstance two_basis_instance() {
  MarginInstance inst;
  inst.g.resize(2, 2);
  inst.g << 1.0, 1.0, -1.0, 1.0;
  inst.y.resize(2);
  inst.y << 1.0, -1.0;
  return inst;
}

}  // namespace

int main() {
  // 1. The synthetic family's best possible classification error is 1/4
  //    for every dimension, certified by an exact internal integral.
  {
    bool ok = true;
    std::string detail;
    try {
      for (int d = 1; d <= 8; ++d)
        if (bayes_error(d) != 0.25) {
          ok = false;
          detail = "d=" + std::to_string(d);
          break;
        }
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    report(1, ok, "population error of the synthetic target is 1/4 for d=1..8",
           detail);
  }

  // 2. Greedy descent never lets the training objective rise by more than
  //    the inner tolerance, across 1000 randomized runs covering all five
  //    losses and both cap schedules.
  std::vector<RunTrace> traces;  // reused by block 3
  {
    bool ok = true;
    std::string detail;
    int violations = 0;
    const std::vector<LossSpec> losses{
        LossSpec::logistic(), LossSpec::exponential(),
        LossSpec::least_squares(), LossSpec::modified_least_squares(),
        LossSpec::p_norm(2.0)};
    const double pvals[3] = {2.0, 2.5, 3.0};
    try {
      for (std::size_t li = 0; li < losses.size(); ++li) {
        for (int rep = 0; rep < 200; ++rep) {
          std::mt19937_64 rng(
              derive_stream(9001, li * 200 + static_cast<std::size_t>(rep)));
          const std::size_t m = 10 + uniform_below(rng, 41);
          const int d = 1 + static_cast<int>(uniform_below(rng, 4));
          const Dataset data = sample_synthetic(d, m, rng());
          BoostConfig cfg;
          cfg.loss = losses[li];
          if (cfg.loss.kind == LossKind::p_norm) cfg.loss.p = pvals[rep % 3];
          cfg.schedule = (rep % 2 == 0) ? StepSchedule::power(1.0, 0.6667)
                                        : StepSchedule::constant(0.3);
          cfg.max_iters = 20;
          const RunTrace trace = run_boost(cfg, data);
          double prev = trace.initial_objective;
          for (const TraceRow& r : trace.rows) {
            if (r.train_obj > prev + cfg.inner_tol) ++violations;
            prev = r.train_obj;
          }
          traces.push_back(trace);
        }
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    if (violations > 0) {
      ok = false;
      detail = std::to_string(violations) + " rising steps";
    }
    report(2, ok,
           "training objective is monotone within tolerance on 1000 runs",
           detail);
  }

  // 3. On every one of those traces, the observed objective gap to the
  //    final ensemble stays below both convergence bounds at every step.
  {
    bool ok = !traces.empty();
    std::string detail = traces.empty() ? "no traces from block 2" : "";
    int violations = 0;
    try {
      for (const RunTrace& trace : traces) {
        const LossSpec& loss = trace.config.loss;
        const double m_curv = curvature_bound(loss);
        BoundInputs in;
        in.h = schedule_caps(trace.config.schedule, 21);
        in.eps_bar = eps_bar_sequence(in.h, m_curv, trace.config.inner_tol);
        in.f0_norm = 0.0;
        in.fbar_norm = coef_l1(trace.final_ensemble);
        in.curvature_m = m_curv;
        const double psi_final =
            auxiliary_psi(loss, trace.final_objective());
        in.delta_a0 = std::max(
            0.0, auxiliary_psi(loss, trace.initial_objective) - psi_final);
        for (std::size_t k = 0; k <= trace.iterations(); ++k) {
          const double q =
              k == 0 ? trace.initial_objective : trace.rows[k - 1].train_obj;
          const double gap = std::max(0.0, auxiliary_psi(loss, q) - psi_final);
          if (gap > lemma42_bound(in, k) + 1e-9) ++violations;
          if (gap > cor43_bound(in, k) + 1e-9) ++violations;
        }
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    if (violations > 0) {
      ok = false;
      detail = std::to_string(violations) + " bound violations";
    }
    report(3, ok, "objective gaps stay under both convergence bounds",
           detail);
  }

  // 4. In matching-pursuit mode the recorded steps satisfy an exact energy
  //    identity: the sum of squared steps equals twice the objective drop.
  {
    bool ok = true;
    std::string detail;
    double worst = 0.0;
    try {
      for (int rep = 0; rep < 100; ++rep) {
        std::mt19937_64 rng(derive_stream(9002, static_cast<std::size_t>(rep)));
        const std::size_t m = 5 + uniform_below(rng, 36);
        const int d = 1 + static_cast<int>(uniform_below(rng, 4));
        const Dataset data = sample_synthetic(d, m, rng());
        BoostConfig cfg;
        cfg.loss = LossSpec::least_squares();
        cfg.schedule = StepSchedule::unrestricted();
        cfg.normalize_basis = true;
        cfg.max_iters = 50;
        const EnergyLedger ledger = energy_ledger(run_boost(cfg, data));
        worst = std::max(worst,
                         std::abs(ledger.sum_alpha_sq - ledger.twice_drop));
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    if (worst > 1e-8) {
      ok = false;
      detail = "max residual " + fmt_g(worst);
    }
    report(4, ok, "squared steps equal twice the objective drop (100 runs)",
           detail);
  }

  // 5. Long runs on 100 samples overfit: the best true error seen along
  //    the path beats the final ensemble's by at least 0.02 on average.
  {
    bool ok = true;
    std::string detail;
    try {
      std::vector<double> best, last;
      for (int rep = 0; rep < 20; ++rep) {
        const std::uint64_t s = derive_stream(9005, static_cast<std::size_t>(rep));
        const Dataset data = sample_synthetic(2, 100, s);
        BoostConfig cfg;
        cfg.loss = LossSpec::least_squares();
        cfg.schedule = StepSchedule::power(1.0, 0.6667);
        cfg.max_iters = 1024;
        cfg.record_true_risk = true;
        cfg.true_model_d = 2;
        cfg.seed = s;
        const RunTrace trace = run_boost(cfg, data);
        double mn = std::numeric_limits<double>::infinity();
        for (const TraceRow& r : trace.rows) mn = std::min(mn, *r.true_err);
        best.push_back(mn);
        last.push_back(*trace.rows.back().true_err);
      }
      const double gain = mean(last) - mean(best);
      if (!(gain >= 0.02)) {
        ok = false;
        detail = "mean improvement " + fmt_g(gain) + " < 0.02";
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    report(5, ok, "unstopped runs overfit by >= 0.02 true error on average",
           detail);
  }

  // 6. Held-out stopping learns: mean excess error strictly falls over
  //    m = 50, 200, 800 and ends at or below 0.10.
  {
    bool ok = true;
    std::string detail;
    try {
      std::vector<double> means;
      const std::size_t ms[3] = {50, 200, 800};
      for (std::size_t mi = 0; mi < 3; ++mi) {
        std::vector<double> excess;
        for (int rep = 0; rep < 20; ++rep) {
          const std::uint64_t s =
              derive_stream(9006, mi * 20 + static_cast<std::size_t>(rep));
          const Dataset data = sample_synthetic(2, ms[mi], s);
          BoostConfig cfg;
          cfg.loss = LossSpec::least_squares();
          cfg.schedule = StepSchedule::power(1.0, 0.6667);
          cfg.max_iters = 512;
          cfg.seed = s;
          const CvResult res = cv_stop(cfg, data);
          excess.push_back(true_class_error(res.ensemble, 2) - 0.25);
        }
        means.push_back(mean(excess));
      }
      if (!(means[0] > means[1] && means[1] > means[2])) {
        ok = false;
        detail = "means " + fmt_g(means[0]) + ", " + fmt_g(means[1]) + ", " +
                 fmt_g(means[2]) + " not strictly decreasing";
      } else if (!(means[2] <= 0.10)) {
        ok = false;
        detail = "mean excess at m=800 is " + fmt_g(means[2]) + " > 0.10";
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    report(6, ok, "held-out stopping: excess error falls with sample size",
           detail);
  }

  // 7. The m^rho budget rule also learns, for both tested exponents.
  {
    bool ok = true;
    std::string detail;
    try {
      for (const double rho : {1.0 / 6.0, 1.0 / 4.0}) {
        double small_m = 0.0, large_m = 0.0;
        const std::size_t ms[2] = {50, 800};
        for (std::size_t mi = 0; mi < 2; ++mi) {
          std::vector<double> excess;
          for (int rep = 0; rep < 20; ++rep) {
            const std::uint64_t s = derive_stream(
                9007, (rho < 0.2 ? 0 : 100) + mi * 20 +
                          static_cast<std::size_t>(rep));
            const Dataset data = sample_synthetic(2, ms[mi], s);
            BoostConfig cfg;
            cfg.loss = LossSpec::least_squares();
            cfg.schedule = StepSchedule::power(1.0, 0.6667);
            cfg.max_iters = 256;
            cfg.seed = s;
            const RunTrace trace =
                run_boost(cfg, data, rho_budget(ms[mi], rho));
            excess.push_back(
                true_class_error(trace.final_ensemble, 2) - 0.25);
          }
          (mi == 0 ? small_m : large_m) = mean(excess);
        }
        if (!(large_m < small_m)) {
          ok = false;
          detail = "rho=" + fmt_g(rho) + ": excess " + fmt_g(large_m) +
                   " at m=800 vs " + fmt_g(small_m) + " at m=50";
          break;
        }
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    report(7, ok, "budget rule m^rho: larger samples give smaller excess",
           detail);
  }

  // 8. On the separable two-column instance: the exact best margin is 1,
  //    the run's loss decays at the certified rate, and with a fine step
  //    the normalized margin ends close to the optimum.
  {
    bool ok = true;
    std::string detail;
    try {
      const MarginInstance inst = two_basis_instance();
      const double gamma = max_l1_margin(inst);
      if (std::abs(gamma - 1.0) > 1e-9) {
        ok = false;
        detail = "best margin " + fmt_g(gamma) + " != 1";
      }
      // independent grid scan over the weight simplex agrees
      double grid = -std::numeric_limits<double>::infinity();
      for (int i = -200; i <= 200; ++i) {
        const double w1 = static_cast<double>(i) / 200.0;
        const double rem = 1.0 - std::abs(w1);
        for (int j = -200; j <= 200; ++j) {
          const double w2 = rem * static_cast<double>(j) / 200.0;
          double worst = std::numeric_limits<double>::infinity();
          for (Eigen::Index r = 0; r < inst.g.rows(); ++r)
            worst = std::min(worst, inst.y[r] * (w1 * inst.g(r, 0) +
                                                 w2 * inst.g(r, 1)));
          grid = std::max(grid, worst);
        }
      }
      if (std::abs(grid - gamma) > 1e-2) {
        ok = false;
        detail = "grid oracle " + fmt_g(grid) + " vs solver " + fmt_g(gamma);
      }
      const std::vector<MarginRow> coarse = margin_run(inst, 0.1, 200);
      for (const MarginRow& r : coarse) {
        const double cap =
            std::exp(-0.1 * (gamma - 0.1) * static_cast<double>(r.k));
        if (r.exp_loss > cap + 1e-9) {
          ok = false;
          detail = "k=" + std::to_string(r.k) + ": loss " +
                   fmt_g(r.exp_loss) + " above " + fmt_g(cap);
          break;
        }
      }
      const std::vector<MarginRow> fine = margin_run(inst, 0.01, 2000);
      if (ok && fine.back().norm_margin < 0.94) {
        ok = false;
        detail = "final normalized margin " + fmt_g(fine.back().norm_margin);
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    report(8, ok, "separable instance: margin 1, certified decay, margin>=0.94",
           detail);
  }

  // 9. Complexity estimates scale like 1/sqrt(m) across a 16x range and
  //    agree with exact enumeration on small samples.
  {
    bool ok = true;
    std::string detail;
    try {
      double est[3];
      const std::size_t ms[3] = {25, 100, 400};
      for (std::size_t i = 0; i < 3; ++i) {
        std::mt19937_64 rng(derive_stream(9009, i));
        Eigen::ArrayXd xs(static_cast<Eigen::Index>(ms[i]));
        for (Eigen::Index j = 0; j < xs.size(); ++j) xs[j] = uniform01(rng);
        est[i] = rademacher_mc(xs, 10000, derive_stream(9009, 100 + i)).estimate;
      }
      for (int i = 0; i < 2; ++i) {
        const double ratio = est[i + 1] / est[i];
        if (ratio < 0.35 || ratio > 0.65) {
          ok = false;
          detail = "ratio " + fmt_g(ratio) + " outside [0.35, 0.65]";
        }
      }
      std::mt19937_64 rng(derive_stream(9009, 7));
      for (const std::size_t m : {5, 8, 12}) {
        Eigen::ArrayXd xs(static_cast<Eigen::Index>(m));
        for (Eigen::Index j = 0; j < xs.size(); ++j) xs[j] = uniform01(rng);
        const RademacherEstimate ex = rademacher_exact(xs);
        const RademacherEstimate mc = rademacher_mc(xs, 10000, 977);
        if (std::abs(mc.estimate - ex.estimate) > 3.0 * mc.std_error) {
          ok = false;
          detail = "m=" + std::to_string(m) + ": |" + fmt_g(mc.estimate) +
                   " - " + fmt_g(ex.estimate) + "| > 3 SE";
        }
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    report(9, ok, "complexity shrinks like 1/sqrt(m) and matches enumeration",
           detail);
  }

  // 10. Harder targets are harder: the excess convex risk at the hindsight
  //     stopping point grows strictly with the target dimension.
  {
    bool ok = true;
    std::string detail;
    try {
      std::vector<double> means;
      const int ds[3] = {1, 3, 5};
      for (std::size_t di = 0; di < 3; ++di) {
        std::vector<double> vals;
        for (int rep = 0; rep < 20; ++rep) {
          const std::uint64_t s =
              derive_stream(9010, di * 20 + static_cast<std::size_t>(rep));
          const Dataset data = sample_synthetic(ds[di], 300, s);
          BoostConfig cfg;
          cfg.loss = LossSpec::least_squares();
          cfg.schedule = StepSchedule::power(1.0, 0.6667);
          cfg.max_iters = 256;
          cfg.record_true_risk = true;
          cfg.true_model_d = ds[di];
          cfg.seed = s;
          const RunTrace trace = run_boost(cfg, data);
          vals.push_back(
              oracle_stop(trace, OracleCriterion::convex).criterion_value);
        }
        means.push_back(mean(vals));
      }
      if (!(means[0] < means[1] && means[1] < means[2])) {
        ok = false;
        detail = "means " + fmt_g(means[0]) + ", " + fmt_g(means[1]) + ", " +
                 fmt_g(means[2]) + " not strictly increasing";
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    report(10, ok, "hindsight-stopped excess risk grows with dimension",
           detail);
  }

  if (g_failed == 0) {
    std::printf("all 10 acceptance checks passed\n");
    return 0;
  }
  std::printf("%d acceptance check(s) failed\n", g_failed);
  return 1;
}
