#include "stumpboost/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "stumpboost/rng.hpp"

namespace stumpboost {

namespace {

void require_model(int d) {
  if (d < 1) throw PreconditionError("synthetic target: d must be >= 1");
}

// f restricted to the open intervals between its distinct thresholds:
// f(x) = sum of contributions of terms with threshold >= x.
struct PieceFun {
  std::vector<double> thresholds;  // distinct, ascending
  std::vector<double> suffix;      // suffix[j] = f just above thresholds[j-1]

  explicit PieceFun(const Ensemble& ens) {
    std::vector<std::pair<double, double>> terms;
    terms.reserve(ens.terms.size());
    for (const StumpTerm& t : ens.terms) {
      validate(t.stump);
      terms.emplace_back(t.stump.threshold, t.coef * t.stump.sign);
    }
    std::sort(terms.begin(), terms.end());
    for (const auto& [a, v] : terms) {
      if (thresholds.empty() || thresholds.back() != a) thresholds.push_back(a);
    }
    suffix.assign(thresholds.size() + 1, 0.0);
    std::size_t ti = terms.size();
    for (std::size_t k = thresholds.size(); k-- > 0;) {
      suffix[k] = suffix[k + 1];
      while (ti > 0 && terms[ti - 1].first == thresholds[k]) {
        suffix[k] += terms[ti - 1].second;
        --ti;
      }
    }
  }

  double operator()(double x) const {
    const auto it =
        std::lower_bound(thresholds.begin(), thresholds.end(), x);
    return suffix[static_cast<std::size_t>(it - thresholds.begin())];
  }
};

// Merged integration grid: the target's kink points plus the ensemble's
// thresholds, so every cell has constant f and linear eta.
std::vector<double> merged_grid(const PieceFun& f, int d, int kinks_per_period) {
  std::vector<double> g;
  const int n = kinks_per_period * d;
  g.reserve(static_cast<std::size_t>(n) + f.thresholds.size() + 2);
  for (int j = 0; j <= n; ++j)
    g.push_back(static_cast<double>(j) / static_cast<double>(n));
  for (double a : f.thresholds)
    if (a > 0.0 && a < 1.0) g.push_back(a);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

}  // namespace

double target_probability(int d, double x) {
  require_model(d);
  if (!std::isfinite(x) || x < 0.0 || x > 1.0)
    throw PreconditionError("target_probability: x must lie in [0,1]");
  const double z = static_cast<double>(d) * x;
  const double frac = z - std::floor(z);
  return frac <= 0.5 ? 2.0 * frac : 2.0 * (1.0 - frac);
}

double target_regression(int d, double x) {
  return 2.0 * target_probability(d, x) - 1.0;
}

double bayes_error(int d) {
  require_model(d);
  // min(eta, 1-eta) is linear between consecutive quarter-period points,
  // so midpoint integration is exact; the formula value must match it.
  const int n = 4 * d;
  double integral = 0.0;
  for (int j = 0; j < n; ++j) {
    const double mid = (static_cast<double>(j) + 0.5) / static_cast<double>(n);
    const double eta = target_probability(d, mid);
    integral += std::min(eta, 1.0 - eta) / static_cast<double>(n);
  }
  if (std::abs(integral - 0.25) > 1e-12)
    throw NumericError("bayes_error: exact integral check failed");
  return 0.25;
}

Dataset sample_synthetic(int d, std::size_t m, std::uint64_t seed) {
  require_model(d);
  std::mt19937_64 rng(seed);
  Dataset data;
  data.x.resize(static_cast<Eigen::Index>(m));
  data.y.resize(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const double x = uniform01(rng);
    const double u = uniform01(rng);
    data.x[static_cast<Eigen::Index>(i)] = x;
    data.y[static_cast<Eigen::Index>(i)] =
        u < target_probability(d, x) ? 1.0 : -1.0;
  }
  return data;
}

double true_class_error(const Ensemble& f, int d) {
  require_model(d);
  const PieceFun pf(f);
  const std::vector<double> g = merged_grid(pf, d, 2);
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double len = g[i + 1] - g[i];
    if (len <= 0.0) continue;
    const double mid = 0.5 * (g[i] + g[i + 1]);
    const double eta = target_probability(d, mid);
    err += len * (pf(mid) >= 0.0 ? 1.0 - eta : eta);
  }
  return err;
}

double true_excess_convex(const Ensemble& f, int d) {
  require_model(d);
  const PieceFun pf(f);
  const std::vector<double> g = merged_grid(pf, d, 2);
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double len = g[i + 1] - g[i];
    if (len <= 0.0) continue;
    const double mid = 0.5 * (g[i] + g[i + 1]);
    const double fv = pf(mid);
    const auto q = [&](double x) {
      const double diff = fv - target_regression(d, x);
      return diff * diff;
    };
    // Simpson's rule, exact for the quadratic integrand of each cell.
    integral += len / 6.0 * (q(g[i]) + 4.0 * q(mid) + q(g[i + 1]));
  }
  return 0.5 * integral;
}

}  // namespace stumpboost
