#include "stumpboost/margin.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "stumpboost/csv.hpp"
#include "stumpboost/errors.hpp"
#include "stumpboost/line_search.hpp"

namespace stumpboost {

void validate(const MarginInstance& inst) {
  if (inst.g.rows() < 1 || inst.g.cols() < 1)
    throw PreconditionError("margin instance: needs >= 1 point and >= 1 basis");
  if (inst.y.size() != inst.g.rows())
    throw PreconditionError("margin instance: label count mismatch");
  if (!inst.g.allFinite() || inst.g.cwiseAbs().maxCoeff() > 1.0)
    throw PreconditionError("margin instance: basis values must lie in [-1,1]");
  if (!((inst.y == 1.0) || (inst.y == -1.0)).all())
    throw PreconditionError("margin instance: labels must be -1 or +1");
}

namespace {

// Dense simplex with Bland's rule on
//   max gamma  s.t.  -y_i (Gw)_i + gamma + s_i = 0,
//                    sum_j (u_j + v_j) + t = 1,   all variables >= 0,
// where w = u - v. The start basis {s_1..s_n, t} is feasible (w = 0,
// gamma = 0); Bland's rule guarantees termination despite the degenerate
// zero right-hand sides.
double solve_margin_lp(const Eigen::MatrixXd& g, const Eigen::ArrayXd& y) {
  const Eigen::Index n = g.rows();
  const Eigen::Index j_basis = g.cols();
  const Eigen::Index gamma_col = 2 * j_basis;
  const Eigen::Index slack0 = gamma_col + 1;
  const Eigen::Index t_col = slack0 + n;
  const Eigen::Index n_cols = t_col + 1;
  const Eigen::Index n_rows = n + 1;

  Eigen::MatrixXd tab = Eigen::MatrixXd::Zero(n_rows, n_cols + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < j_basis; ++j) {
      const double a = y[i] * g(i, j);
      tab(i, j) = -a;
      tab(i, j_basis + j) = a;
    }
    tab(i, gamma_col) = 1.0;
    tab(i, slack0 + i) = 1.0;
  }
  for (Eigen::Index j = 0; j < 2 * j_basis; ++j) tab(n, j) = 1.0;
  tab(n, t_col) = 1.0;
  tab(n, n_cols) = 1.0;

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(n_cols);
  cost[gamma_col] = 1.0;
  double objective = 0.0;
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(n_rows));
  for (Eigen::Index i = 0; i < n; ++i) basis[static_cast<std::size_t>(i)] = slack0 + i;
  basis[static_cast<std::size_t>(n)] = t_col;

  constexpr double kEps = 1e-11;
  for (int iter = 0; iter < 10000; ++iter) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n_cols; ++j) {
      if (cost[j] > 1e-9) {
        enter = j;
        break;  // Bland: smallest improving index
      }
    }
    if (enter < 0) return objective;

    Eigen::Index leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n_rows; ++i) {
      const double a = tab(i, enter);
      if (a <= kEps) continue;
      const double ratio = tab(i, n_cols) / a;
      const bool better =
          ratio < best_ratio - kEps ||
          (ratio < best_ratio + kEps && leave >= 0 &&
           basis[static_cast<std::size_t>(i)] <
               basis[static_cast<std::size_t>(leave)]);
      if (leave < 0 || better) {
        best_ratio = std::min(best_ratio, ratio);
        leave = i;
      }
    }
    if (leave < 0)
      throw NumericError("margin LP: unbounded tableau");

    const double pivot = tab(leave, enter);
    tab.row(leave) /= pivot;
    for (Eigen::Index i = 0; i < n_rows; ++i) {
      if (i == leave) continue;
      const double f = tab(i, enter);
      if (f != 0.0) tab.row(i) -= f * tab.row(leave);
    }
    const double cf = cost[enter];
    cost -= cf * tab.row(leave).head(n_cols).transpose();
    objective += cf * tab(leave, n_cols);
    basis[static_cast<std::size_t>(leave)] = enter;
  }
  throw NumericError("margin LP: iteration limit reached");
}

}  // namespace

double max_l1_margin(const MarginInstance& inst) {
  validate(inst);
  return solve_margin_lp(inst.g, inst.y);
}

double margin_error(const Eigen::ArrayXd& f_values, const Eigen::ArrayXd& y,
                    double gamma) {
  if (f_values.size() != y.size())
    throw PreconditionError("margin_error: length mismatch");
  if (f_values.size() == 0) throw EmptyDatasetError("margin_error: no points");
  return (f_values * y <= gamma).cast<double>().mean();
}

std::vector<MarginRow> margin_run(const MarginInstance& inst, double h,
                                  std::size_t k_steps) {
  validate(inst);
  if (!std::isfinite(h) || h <= 0.0)
    throw PreconditionError("margin_run: step cap must be > 0");
  const LossSpec loss = LossSpec::exponential();
  const Eigen::Index n = inst.g.rows();
  const Eigen::Index j_basis = inst.g.cols();
  Eigen::ArrayXd u = Eigen::ArrayXd::Zero(n);
  double total = 0.0;

  std::vector<MarginRow> rows;
  rows.reserve(k_steps + 1);
  rows.push_back(MarginRow{0, 1.0, 0.0});

  for (std::size_t k = 1; k <= k_steps; ++k) {
    double best_obj = std::numeric_limits<double>::infinity();
    double best_a = 0.0;
    Eigen::Index best_j = -1;
    for (Eigen::Index j = 0; j < j_basis; ++j) {
      const Eigen::ArrayXd d = inst.g.col(j).array() * inst.y;
      if ((d == 0.0).all()) continue;
      const double a = minimize_restricted(loss, u, d, h);
      const double obj = direction_objective(loss, u, d, a);
      if (obj < best_obj) {  // ties keep the smallest column index
        best_obj = obj;
        best_a = a;
        best_j = j;
      }
    }
    if (best_j >= 0) {
      u += best_a * (inst.g.col(best_j).array() * inst.y);
      total += std::abs(best_a);
    }
    MarginRow row;
    row.k = k;
    row.exp_loss = (-u).exp().mean();
    row.norm_margin = total > 0.0 ? u.minCoeff() / total : 0.0;
    rows.push_back(row);
  }
  return rows;
}

MarginInstance read_margin_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open instance file: " + path);
  std::vector<double> labels;
  std::vector<std::vector<double>> gvals;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<double> fields;
    while (std::getline(ss, tok, ',')) {
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      while (end && (*end == ' ' || *end == '\t' || *end == '\r')) ++end;
      if (!end || *end != '\0' || tok.empty() || !std::isfinite(v))
        throw ConfigError(line_no, "instance: malformed number '" + tok + "'");
      fields.push_back(v);
    }
    if (fields.size() < 2)
      throw ConfigError(line_no, "instance: expected y,g1,... per row");
    if (!gvals.empty() && fields.size() - 1 != gvals.front().size())
      throw ConfigError(line_no, "instance: inconsistent column count");
    if (fields.front() != 1.0 && fields.front() != -1.0)
      throw ConfigError(line_no, "instance: label must be -1 or +1");
    for (std::size_t i = 1; i < fields.size(); ++i)
      if (std::abs(fields[i]) > 1.0)
        throw ConfigError(line_no, "instance: basis values must lie in [-1,1]");
    labels.push_back(fields.front());
    gvals.emplace_back(fields.begin() + 1, fields.end());
  }
  if (gvals.empty()) throw ConfigError(0, "instance: no data rows");

  MarginInstance inst;
  inst.g.resize(static_cast<Eigen::Index>(gvals.size()),
                static_cast<Eigen::Index>(gvals.front().size()));
  inst.y.resize(static_cast<Eigen::Index>(labels.size()));
  for (Eigen::Index i = 0; i < inst.g.rows(); ++i) {
    inst.y[i] = labels[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < inst.g.cols(); ++j)
      inst.g(i, j) = gvals[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  validate(inst);
  return inst;
}

std::string margin_csv_header() { return "k,exp_loss,norm_margin,bound"; }

void write_margin_csv(const std::vector<MarginRow>& rows, double gamma_star,
                      double h, const std::string& path) {
  std::ostringstream out;
  out << margin_csv_header() << '\n';
  for (const MarginRow& r : rows) {
    const double bound =
        std::exp(-static_cast<double>(r.k) * h * (gamma_star - h));
    out << r.k << ',' << fmt(r.exp_loss) << ',' << fmt(r.norm_margin) << ','
        << fmt(bound) << '\n';
  }
  write_file_atomic(path, out.str());
}

}  // namespace stumpboost
