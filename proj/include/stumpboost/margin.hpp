#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace stumpboost {

// Finite separable-classification instance: G(i, j) = g_j(x_i) in [-1,1],
// y in {+1,-1}. Negating a column is equivalent to negating its weight,
// so signed weights cover the negation closure of the dictionary.
struct MarginInstance {
  Eigen::MatrixXd g;  // n_points x n_basis
  Eigen::ArrayXd y;
};

void validate(const MarginInstance& inst);

// gamma* = max over Sum |w| <= 1 of min_i y_i * (G w)_i, by exact LP.
// Nonpositive result means the instance is not separable by the dictionary.
double max_l1_margin(const MarginInstance& inst);

// Fraction of points with margin y_i * f_i <= gamma (inclusive).
double margin_error(const Eigen::ArrayXd& f_values, const Eigen::ArrayXd& y,
                    double gamma);

struct MarginRow {
  std::size_t k = 0;
  double exp_loss = 1.0;     // mean of exp(-y_i f_k(x_i))
  double norm_margin = 0.0;  // min_i y_i f_k(x_i) / sum |alpha|; 0 at k = 0
};

// Constant-step boosting of the exponential loss over the instance columns
// with exact inner search on [-h, h] per column (ties: smallest column
// index, then positive step). Returns rows k = 0..K, row 0 being f = 0.
// On a separable instance with h < gamma*, exp_loss decays at least like
// exp(-k*h*(gamma* - h)).
std::vector<MarginRow> margin_run(const MarginInstance& inst, double h,
                                  std::size_t k_steps);

// Rows are y,g1,g2,... ; one point per line.
MarginInstance read_margin_instance(const std::string& path);

std::string margin_csv_header();
void write_margin_csv(const std::vector<MarginRow>& rows, double gamma_star,
                      double h, const std::string& path);

}  // namespace stumpboost
