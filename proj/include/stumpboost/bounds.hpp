#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Core>

namespace stumpboost {

// Shared inputs of the multi-step convergence bounds. h holds the step
// caps h_0..h_{n-1}; eps_bar the per-step slack terms
// eps_bar_j = h_j^2 * M / 2 + eps_j (eps_bar_sequence builds them).
// Throughout, s_j = f0_norm + h_0 + ... + h_{j-1}.
struct BoundInputs {
  Eigen::ArrayXd h;
  Eigen::ArrayXd eps_bar;
  double f0_norm = 0.0;      // ||f_0||_1 of the starting ensemble
  double fbar_norm = 0.0;    // ||fbar||_1 of the comparator
  double delta_a0 = 0.0;     // A(f_0) - A(fbar), >= 0
  double curvature_m = 1.0;  // uniform curvature constant M
};

void validate(const BoundInputs& in);

Eigen::ArrayXd eps_bar_sequence(const Eigen::ArrayXd& h, double curvature_m,
                                double eps);

// Objective gap after k steps of a greedy run with caps h:
//   (f0_norm + fbar_norm) / (s_k + fbar_norm) * delta_a0
//     + sum_{j=1}^{k} (s_j + fbar_norm) / (s_k + fbar_norm) * eps_bar_{j-1}.
// Requires h.size() >= k; k = 0 returns delta_a0.
double lemma42_bound(const BoundInputs& in, std::size_t k);

// Tighter form for nonincreasing caps and f_0 = 0, optimized over a split
// point l in [1, k]:
//   fbar_norm / (s_k + fbar_norm) * delta_a0
//     + min_l [ l * (s_l + fbar_norm) / (s_k + fbar_norm) * h_0^2
//               + (k - l) * h_l^2 ] * M.
// Requires h.size() >= k + 1; k = 0 returns delta_a0.
double cor43_bound(const BoundInputs& in, std::size_t k);

// Population risk bound for an early-stopped run on m samples with
// accumulated cap beta_m:
//   q_fbar + (2*c_s + 1) * beta_m / sqrt(m) + (fbar_norm + 1) / sqrt(m)
//     + fbar_norm / (fbar_norm + beta_m)
// with the last term set to 0 when both norms vanish.
double thm32_bound(double c_s, std::size_t m, double beta_m, double fbar_norm,
                   double q_fbar);

// Optimization residual at stopping index k_m, with beta_m = s_{k_m}:
//   min_{1<=l<=k_m} [ (s_l + fbar_norm) / (beta_m + fbar_norm) * h_0^2 * l
//                     + (k_m - l) * h_l^2 ] * M.
// Requires h nonincreasing with h.size() >= k_m + 1; k_m >= 1.
double thm33_delta(const Eigen::ArrayXd& h, std::size_t k_m, double fbar_norm,
                   double curvature_m);

// Uniform deviation envelope 2 * gamma * beta * R for Lipschitz constant
// gamma, coefficient-ball radius beta, Rademacher complexity R.
double uniform_dev_bound(double gamma, double beta, double rademacher);

// Rademacher complexity of the signed-stump class on the sample points:
// E_sigma sup_{a, s} s * sum_i sigma_i * 1{x_i <= a} / m. The per-draw
// supremum is |max prefix sum| over sorted points, never splitting ties.
struct RademacherEstimate {
  double estimate = 0.0;
  double std_error = 0.0;  // 0 for exact enumeration
  std::size_t n_draws = 0;
  std::uint64_t seed = 0;
};

RademacherEstimate rademacher_mc(const Eigen::ArrayXd& xs, std::size_t n_draws,
                                 std::uint64_t seed);
// Exact average over all 2^m sign vectors; m <= 20.
RademacherEstimate rademacher_exact(const Eigen::ArrayXd& xs);

std::string bounds_csv_header();
std::string rademacher_csv_header();

}  // namespace stumpboost
