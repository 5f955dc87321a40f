#include "stumpboost/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "stumpboost/errors.hpp"
#include "stumpboost/rng.hpp"

namespace stumpboost {

namespace {

void require_caps(const Eigen::ArrayXd& h) {
  if (!h.allFinite() || (h.size() > 0 && h.minCoeff() <= 0.0))
    throw PreconditionError("bounds: caps must be finite and > 0");
}

void require_nonincreasing(const Eigen::ArrayXd& h) {
  for (Eigen::Index i = 1; i < h.size(); ++i)
    if (h[i] > h[i - 1])
      throw PreconditionError("bounds: caps must be nonincreasing");
}

// s[j] = f0_norm + h_0 + ... + h_{j-1}, j = 0..k.
std::vector<double> cap_prefix(const Eigen::ArrayXd& h, std::size_t k,
                               double f0_norm) {
  std::vector<double> s(k + 1, f0_norm);
  for (std::size_t j = 1; j <= k; ++j)
    s[j] = s[j - 1] + h[static_cast<Eigen::Index>(j - 1)];
  return s;
}

// Tie groups of sorted points are inseparable, so the per-draw supremum
// only sees prefix sums ending at a group boundary.
std::vector<Eigen::Index> tie_group_ends(const Eigen::ArrayXd& xs_sorted) {
  std::vector<Eigen::Index> ends;
  const Eigen::Index m = xs_sorted.size();
  for (Eigen::Index i = 0; i < m; ++i)
    if (i + 1 == m || xs_sorted[i + 1] != xs_sorted[i]) ends.push_back(i + 1);
  return ends;
}

}  // namespace

void validate(const BoundInputs& in) {
  require_caps(in.h);
  if (in.eps_bar.size() != in.h.size())
    throw PreconditionError("bounds: h and eps_bar lengths differ");
  if (in.eps_bar.size() > 0 &&
      (!in.eps_bar.allFinite() || in.eps_bar.minCoeff() < 0.0))
    throw PreconditionError("bounds: slack terms must be >= 0");
  if (!std::isfinite(in.f0_norm) || in.f0_norm < 0.0 ||
      !std::isfinite(in.fbar_norm) || in.fbar_norm < 0.0)
    throw PreconditionError("bounds: norms must be >= 0");
  if (!std::isfinite(in.delta_a0) || in.delta_a0 < 0.0)
    throw PreconditionError("bounds: delta_a0 must be >= 0");
  if (!std::isfinite(in.curvature_m) || in.curvature_m < 0.0)
    throw PreconditionError("bounds: curvature constant must be >= 0");
}

Eigen::ArrayXd eps_bar_sequence(const Eigen::ArrayXd& h, double curvature_m,
                                double eps) {
  require_caps(h);
  if (!std::isfinite(curvature_m) || curvature_m < 0.0 ||
      !std::isfinite(eps) || eps < 0.0)
    throw PreconditionError("eps_bar_sequence: constants must be >= 0");
  return h.square() * (0.5 * curvature_m) + eps;
}

double lemma42_bound(const BoundInputs& in, std::size_t k) {
  validate(in);
  if (k > static_cast<std::size_t>(in.h.size()))
    throw PreconditionError("lemma42_bound: k exceeds the cap sequence");
  if (k == 0) return in.delta_a0;
  const std::vector<double> s = cap_prefix(in.h, k, in.f0_norm);
  const double denom = s[k] + in.fbar_norm;
  double out = (in.f0_norm + in.fbar_norm) / denom * in.delta_a0;
  for (std::size_t j = 1; j <= k; ++j)
    out += (s[j] + in.fbar_norm) / denom *
           in.eps_bar[static_cast<Eigen::Index>(j - 1)];
  return out;
}

double cor43_bound(const BoundInputs& in, std::size_t k) {
  validate(in);
  require_nonincreasing(in.h);
  if (in.f0_norm != 0.0)
    throw PreconditionError("cor43_bound: requires a zero starting function");
  if (k == 0) return in.delta_a0;
  if (k + 1 > static_cast<std::size_t>(in.h.size()))
    throw PreconditionError("cor43_bound: needs caps h_0..h_k");
  const std::vector<double> s = cap_prefix(in.h, k, 0.0);
  const double denom = s[k] + in.fbar_norm;
  const double h0sq = in.h[0] * in.h[0];
  double inner = std::numeric_limits<double>::infinity();
  for (std::size_t l = 1; l <= k; ++l) {
    const double hl = in.h[static_cast<Eigen::Index>(l)];
    const double v = static_cast<double>(l) * (s[l] + in.fbar_norm) / denom * h0sq +
                     static_cast<double>(k - l) * hl * hl;
    inner = std::min(inner, v);
  }
  return in.fbar_norm / denom * in.delta_a0 + inner * in.curvature_m;
}

double thm32_bound(double c_s, std::size_t m, double beta_m, double fbar_norm,
                   double q_fbar) {
  if (m < 1) throw PreconditionError("thm32_bound: m must be >= 1");
  if (!std::isfinite(c_s) || c_s < 0.0 || !std::isfinite(beta_m) ||
      beta_m < 0.0 || !std::isfinite(fbar_norm) || fbar_norm < 0.0 ||
      !std::isfinite(q_fbar))
    throw PreconditionError("thm32_bound: invalid inputs");
  const double root_m = std::sqrt(static_cast<double>(m));
  const double shrink =
      (fbar_norm == 0.0 && beta_m == 0.0) ? 0.0
                                          : fbar_norm / (fbar_norm + beta_m);
  return q_fbar + (2.0 * c_s + 1.0) * beta_m / root_m +
         (fbar_norm + 1.0) / root_m + shrink;
}

double thm33_delta(const Eigen::ArrayXd& h, std::size_t k_m, double fbar_norm,
                   double curvature_m) {
  require_caps(h);
  require_nonincreasing(h);
  if (k_m < 1) throw PreconditionError("thm33_delta: k_m must be >= 1");
  if (k_m + 1 > static_cast<std::size_t>(h.size()))
    throw PreconditionError("thm33_delta: needs caps h_0..h_{k_m}");
  if (!std::isfinite(fbar_norm) || fbar_norm < 0.0 ||
      !std::isfinite(curvature_m) || curvature_m < 0.0)
    throw PreconditionError("thm33_delta: invalid constants");
  const std::vector<double> s = cap_prefix(h, k_m, 0.0);
  const double beta_m = s[k_m];
  const double h0sq = h[0] * h[0];
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t l = 1; l <= k_m; ++l) {
    const double hl = h[static_cast<Eigen::Index>(l)];
    const double v =
        (s[l] + fbar_norm) / (beta_m + fbar_norm) * h0sq * static_cast<double>(l) +
        static_cast<double>(k_m - l) * hl * hl;
    best = std::min(best, v);
  }
  return best * curvature_m;
}

double uniform_dev_bound(double gamma, double beta, double rademacher) {
  if (!std::isfinite(gamma) || gamma < 0.0 || !std::isfinite(beta) ||
      beta < 0.0 || !std::isfinite(rademacher) || rademacher < 0.0)
    throw PreconditionError("uniform_dev_bound: inputs must be >= 0");
  return 2.0 * gamma * beta * rademacher;
}

RademacherEstimate rademacher_mc(const Eigen::ArrayXd& xs, std::size_t n_draws,
                                 std::uint64_t seed) {
  if (xs.size() == 0) throw EmptyDatasetError("rademacher_mc: no points");
  if (n_draws < 1) throw PreconditionError("rademacher_mc: n_draws must be >= 1");
  Eigen::ArrayXd sorted = xs;
  std::sort(sorted.data(), sorted.data() + sorted.size());
  const std::vector<Eigen::Index> ends = tie_group_ends(sorted);
  const double md = static_cast<double>(xs.size());

  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t draw = 0; draw < n_draws; ++draw) {
    std::mt19937_64 rng(derive_stream(seed, draw));
    double run = 0.0, sup = 0.0;
    std::size_t next_end = 0;
    for (Eigen::Index i = 0; i < sorted.size(); ++i) {
      run += (rng() >> 63) ? 1.0 : -1.0;
      if (next_end < ends.size() && ends[next_end] == i + 1) {
        sup = std::max(sup, std::abs(run));
        ++next_end;
      }
    }
    const double v = sup / md;
    sum += v;
    sum_sq += v * v;
  }

  RademacherEstimate est;
  est.estimate = sum / static_cast<double>(n_draws);
  if (n_draws > 1) {
    const double n = static_cast<double>(n_draws);
    const double var =
        std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
    est.std_error = std::sqrt(var / n);
  }
  est.n_draws = n_draws;
  est.seed = seed;
  return est;
}

RademacherEstimate rademacher_exact(const Eigen::ArrayXd& xs) {
  if (xs.size() == 0) throw EmptyDatasetError("rademacher_exact: no points");
  if (xs.size() > 20)
    throw PreconditionError("rademacher_exact: m must be <= 20");
  Eigen::ArrayXd sorted = xs;
  std::sort(sorted.data(), sorted.data() + sorted.size());
  const std::vector<Eigen::Index> ends = tie_group_ends(sorted);
  const std::size_t m = static_cast<std::size_t>(xs.size());
  const double md = static_cast<double>(m);

  double sum = 0.0;
  const std::uint64_t patterns = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    double run = 0.0, sup = 0.0;
    std::size_t next_end = 0;
    for (std::size_t i = 0; i < m; ++i) {
      run += (mask >> i) & 1 ? 1.0 : -1.0;
      if (next_end < ends.size() &&
          static_cast<std::size_t>(ends[next_end]) == i + 1) {
        sup = std::max(sup, std::abs(run));
        ++next_end;
      }
    }
    sum += sup / md;
  }

  RademacherEstimate est;
  est.estimate = sum / static_cast<double>(patterns);
  est.std_error = 0.0;
  est.n_draws = patterns;
  est.seed = 0;
  return est;
}

std::string bounds_csv_header() { return "k,lemma42,cor43,observed_gap"; }

std::string rademacher_csv_header() {
  return "m,estimate,stderr,n_draws,seed";
}

}  // namespace stumpboost
