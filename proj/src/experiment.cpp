#include "stumpboost/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <random>
#include <sstream>

#include "stumpboost/bounds.hpp"
#include "stumpboost/csv.hpp"
#include "stumpboost/errors.hpp"
#include "stumpboost/margin.hpp"
#include "stumpboost/rng.hpp"
#include "stumpboost/synth.hpp"

namespace stumpboost {

namespace fs = std::filesystem;

std::string summary_csv_header() {
  return "m,d,seed,stop_budget,stopped_iter,final_total_alpha,true_err,"
         "excess_err,true_excess_convex";
}

namespace {

BoostConfig boost_config_for(const RunConfig& config, std::uint64_t seed) {
  BoostConfig bc;
  bc.loss = config.loss;
  bc.schedule = config.schedule;
  bc.max_iters = config.max_iters;
  bc.inner_tol = config.inner_tol;
  bc.seed = seed;
  bc.record_true_risk = false;
  bc.true_model_d = config.d;
  bc.normalize_basis = config.normalize_basis;
  return bc;
}

SummaryRow measure_ensemble(const Ensemble& ens, const RunConfig& config,
                            std::size_t m, std::uint64_t run_seed) {
  SummaryRow row;
  row.m = m;
  row.d = config.d;
  row.seed = run_seed;
  row.final_total_alpha = coef_l1(ens);
  row.true_err = true_class_error(ens, config.d);
  row.excess_err = row.true_err - 0.25;
  row.true_excess_convex = true_excess_convex(ens, config.d);
  return row;
}

std::string sweep_metadata_line(const RunConfig& config) {
  std::ostringstream out;
  out << "# d=" << config.d << " m_list=";
  for (std::size_t i = 0; i < config.m_list.size(); ++i) {
    if (i) out << ',';
    out << config.m_list[i];
  }
  out << " n_seeds=" << config.n_seeds << " seed=" << config.seed
      << " loss=" << loss_name(config.loss.kind);
  if (config.loss.kind == LossKind::p_norm) out << " p=" << fmt(config.loss.p);
  out << " schedule=" << schedule_name(config.schedule)
      << " stop=" << stop_rule_name(config.stop);
  return out.str();
}

void append_summary_row(std::ostringstream& out, const SummaryRow& row) {
  out << row.m << ',' << row.d << ',' << row.seed << ',';
  if (row.stop_budget) out << fmt(*row.stop_budget);
  out << ',' << row.stopped_iter << ',' << fmt(row.final_total_alpha) << ','
      << fmt(row.true_err) << ',' << fmt(row.excess_err) << ','
      << fmt(row.true_excess_convex) << '\n';
}

std::string run_gen(const RunConfig& config, const fs::path& out_dir) {
  const Dataset data = sample_synthetic(config.d, config.m, config.seed);
  std::ostringstream out;
  out << "x,y\n";
  for (Eigen::Index i = 0; i < data.x.size(); ++i)
    out << fmt(data.x[i]) << ',' << fmt(data.y[i]) << '\n';
  const std::string path = (out_dir / "data.csv").string();
  write_file_atomic(path, out.str());
  return path;
}

std::optional<double> pre_run_budget(const RunConfig& config, std::size_t m) {
  switch (config.stop.kind) {
    case StopKind::rho: return rho_budget(m, config.stop.rho);
    case StopKind::theory:
      return theory_budget(config.loss, m, config.stop.slack);
    default: return std::nullopt;
  }
}

std::string run_train(const RunConfig& config, const fs::path& out_dir) {
  const Dataset data = sample_synthetic(config.d, config.m, config.seed);
  BoostConfig bc = boost_config_for(config, config.seed);
  bc.record_true_risk = config.record_true;
  const RunTrace trace =
      run_boost(bc, data, pre_run_budget(config, config.m));
  const std::string path = (out_dir / "trace.csv").string();
  write_trace_csv(trace, path);
  return path;
}

std::string run_sweep(const RunConfig& config, const fs::path& out_dir) {
  std::ostringstream out;
  out << sweep_metadata_line(config) << '\n' << summary_csv_header() << '\n';
  for (std::size_t mi = 0; mi < config.m_list.size(); ++mi) {
    for (std::size_t si = 0; si < config.n_seeds; ++si) {
      const std::uint64_t run_seed =
          derive_stream(config.seed, mi * config.n_seeds + si);
      try {
        append_summary_row(out,
                           run_sweep_cell(config, config.m_list[mi], run_seed));
      } catch (const NumericError& e) {
        std::ostringstream msg;
        msg << "sweep cell m=" << config.m_list[mi] << " seed_index=" << si
            << " stream=" << run_seed << ": " << e.what();
        throw NumericError(msg.str());
      }
    }
  }
  const std::string path = (out_dir / "summary.csv").string();
  write_file_atomic(path, out.str());
  return path;
}

std::string run_bounds(const RunConfig& config, const fs::path& out_dir) {
  const Dataset data = sample_synthetic(config.d, config.m, config.seed);
  const BoostConfig bc = boost_config_for(config, config.seed);
  const RunTrace trace = run_boost(bc, data);
  const std::size_t k_max = trace.iterations();

  const auto psi_obj = [&](double q) { return auxiliary_psi(config.loss, q); };
  const double psi_final = psi_obj(trace.final_objective());

  BoundInputs in;
  in.h = schedule_caps(config.schedule, k_max + 1);
  in.curvature_m = curvature_bound(config.loss);
  in.eps_bar = eps_bar_sequence(in.h, in.curvature_m, config.inner_tol);
  in.f0_norm = 0.0;
  in.fbar_norm = coef_l1(trace.final_ensemble);
  in.delta_a0 = std::max(0.0, psi_obj(trace.initial_objective) - psi_final);

  std::ostringstream out;
  out << bounds_csv_header() << '\n';
  for (std::size_t k = 0; k <= k_max; ++k) {
    const double obj =
        k == 0 ? trace.initial_objective : trace.rows[k - 1].train_obj;
    const double gap = std::max(0.0, psi_obj(obj) - psi_final);
    out << k << ',' << fmt(lemma42_bound(in, k)) << ','
        << fmt(cor43_bound(in, k)) << ',' << fmt(gap) << '\n';
  }
  const std::string path = (out_dir / "bounds.csv").string();
  write_file_atomic(path, out.str());
  return path;
}

std::string run_rademacher(const RunConfig& config, const fs::path& out_dir) {
  std::vector<std::size_t> ms = config.m_list;
  if (ms.empty()) ms.push_back(config.m);
  std::ostringstream out;
  out << rademacher_csv_header() << '\n';
  for (std::size_t idx = 0; idx < ms.size(); ++idx) {
    const std::uint64_t stream = derive_stream(config.seed, idx);
    std::mt19937_64 rng(stream);
    Eigen::ArrayXd xs(static_cast<Eigen::Index>(ms[idx]));
    for (Eigen::Index i = 0; i < xs.size(); ++i) xs[i] = uniform01(rng);
    const RademacherEstimate est = rademacher_mc(xs, config.n_draws, stream);
    out << ms[idx] << ',' << fmt(est.estimate) << ',' << fmt(est.std_error)
        << ',' << est.n_draws << ',' << est.seed << '\n';
  }
  const std::string path = (out_dir / "rademacher.csv").string();
  write_file_atomic(path, out.str());
  return path;
}

std::string run_margin(const RunConfig& config, const fs::path& out_dir) {
  const std::string inst_path =
      (fs::path(config.base_dir) / config.instance).string();
  const MarginInstance inst = read_margin_instance(inst_path);
  const std::vector<MarginRow> rows = margin_run(inst, config.h, config.k_steps);
  const double gamma_star = max_l1_margin(inst);
  const std::string path = (out_dir / "margin.csv").string();
  write_margin_csv(rows, gamma_star, config.h, path);
  return path;
}

}  // namespace

SummaryRow run_sweep_cell(const RunConfig& config, std::size_t m,
                          std::uint64_t run_seed) {
  const Dataset data = sample_synthetic(config.d, m, run_seed);
  BoostConfig bc = boost_config_for(config, run_seed);

  switch (config.stop.kind) {
    case StopKind::none: {
      const RunTrace trace = run_boost(bc, data);
      SummaryRow row = measure_ensemble(trace.final_ensemble, config, m, run_seed);
      row.stopped_iter = trace.iterations();
      return row;
    }
    case StopKind::rho:
    case StopKind::theory: {
      const double budget = *pre_run_budget(config, m);
      const RunTrace trace = run_boost(bc, data, budget);
      SummaryRow row = measure_ensemble(trace.final_ensemble, config, m, run_seed);
      row.stop_budget = budget;
      row.stopped_iter = trace.iterations();
      return row;
    }
    case StopKind::cv: {
      const CvResult res = cv_stop(bc, data, config.stop.validation_fraction);
      SummaryRow row = measure_ensemble(res.ensemble, config, m, run_seed);
      row.stop_budget = res.budget;
      row.stopped_iter = res.stopped_iter;
      return row;
    }
    case StopKind::oracle: {
      bc.record_true_risk = true;
      const RunTrace trace = run_boost(bc, data);
      const OracleResult res = oracle_stop(trace, config.stop.oracle);
      SummaryRow row = measure_ensemble(res.ensemble, config, m, run_seed);
      row.stopped_iter = res.stopped_iter;
      return row;
    }
  }
  throw PreconditionError("run_sweep_cell: unknown stop rule");
}

std::vector<std::string> run_experiment(const RunConfig& config,
                                        const std::string& out_dir) {
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir);

  switch (config.experiment) {
    case ExperimentKind::gen: return {run_gen(config, dir)};
    case ExperimentKind::train: return {run_train(config, dir)};
    case ExperimentKind::sweep: return {run_sweep(config, dir)};
    case ExperimentKind::bounds: return {run_bounds(config, dir)};
    case ExperimentKind::rademacher: return {run_rademacher(config, dir)};
    case ExperimentKind::margin: return {run_margin(config, dir)};
  }
  throw PreconditionError("run_experiment: unknown experiment");
}

}  // namespace stumpboost
