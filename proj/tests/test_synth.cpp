#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "stumpboost/ensemble.hpp"
#include "stumpboost/rng.hpp"
#include "stumpboost/synth.hpp"

using namespace stumpboost;

namespace {

Ensemble constant_ensemble(double value) {
  Ensemble f;
  f.terms.push_back({value, SignedStump{1.0, 1}});
  return f;
}

Ensemble random_ensemble(std::mt19937_64& rng, int max_terms) {
  Ensemble f;
  const int n = 1 + static_cast<int>(uniform_below(
                        rng, static_cast<std::uint64_t>(max_terms)));
  for (int t = 0; t < n; ++t)
    f.terms.push_back({4.0 * uniform01(rng) - 2.0,
                       SignedStump{uniform01(rng), uniform01(rng) < 0.5 ? 1 : -1}});
  return f;
}

// Interval-aligned midpoint quadrature oracle: split [0,1] at every point
// where f or the target changes shape, then integrate each cell with ~1e6
// panels per unit length. f is constant per cell, so only the target is
// re-evaluated.
double quadrature(const Ensemble& f, int d, bool class_error) {
  std::vector<double> cuts{0.0, 1.0};
  for (const auto& t : f.terms) cuts.push_back(t.stump.threshold);
  for (int j = 1; j < 4 * d; ++j)
    cuts.push_back(static_cast<double>(j) / (4.0 * d));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double total = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const double a = cuts[i - 1], b = cuts[i];
    if (b <= a) continue;
    const long panels = std::max(1L, std::lround((b - a) * 1e6));
    const double w = (b - a) / static_cast<double>(panels);
    const double fv = predict_one(f, 0.5 * (a + b));
    double acc = 0.0;
    for (long p = 0; p < panels; ++p) {
      const double x = a + (static_cast<double>(p) + 0.5) * w;
      const double eta = target_probability(d, x);
      if (class_error) {
        acc += fv >= 0.0 ? 1.0 - eta : eta;
      } else {
        const double fstar = 2.0 * eta - 1.0;
        acc += (fv - fstar) * (fv - fstar);
      }
    }
    total += acc * w;
  }
  return class_error ? total : 0.5 * total;
}

}  // namespace

TEST_CASE("target probability at pinned points") {
  CHECK(target_probability(1, 0.25) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(target_probability(2, 0.25) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(target_probability(2, 0.3) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(target_probability(1, 0.0) == 0.0);
  CHECK(target_probability(1, 1.0) == 0.0);  // {d*1} = 0 by the formula
}

TEST_CASE("target probability stays in [0,1]") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100000; ++i) {
    const int d = 1 + static_cast<int>(uniform_below(rng, 8));
    const double eta = target_probability(d, uniform01(rng));
    CHECK(eta >= 0.0);
    CHECK(eta <= 1.0);
  }
}

TEST_CASE("target regression function is 2*eta - 1") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 1000; ++i) {
    const int d = 1 + static_cast<int>(uniform_below(rng, 6));
    const double x = uniform01(rng);
    CHECK(target_regression(d, x) ==
          doctest::Approx(2.0 * target_probability(d, x) - 1.0)
              .epsilon(1e-14));
  }
}

TEST_CASE("eta integrates to one half") {
  for (int d = 1; d <= 8; ++d) {
    // f == +1 misclassifies exactly where y = -1, i.e. with mass 1 - eta
    const double integral_eta =
        1.0 - true_class_error(constant_ensemble(1.0), d);
    CHECK(std::abs(integral_eta - 0.5) <= 1e-12);
  }
}

TEST_CASE("bayes error is one quarter for every period count") {
  for (int d = 1; d <= 8; ++d) CHECK(bayes_error(d) == 0.25);
}

TEST_CASE("sampling is seeded and balanced") {
  CHECK(sample_synthetic(2, 0, 1).size() == 0);

  const Dataset a = sample_synthetic(3, 50, 99);
  const Dataset b = sample_synthetic(3, 50, 99);
  CHECK((a.x == b.x).all());
  CHECK((a.y == b.y).all());

  const Dataset big = sample_synthetic(2, 100000, 7);
  CHECK(std::abs(big.y.mean()) <= 3.0 / std::sqrt(100000.0));
  CHECK(big.x.minCoeff() >= 0.0);
  CHECK(big.x.maxCoeff() <= 1.0);
}

TEST_CASE("true classification error at pinned ensembles") {
  CHECK(true_class_error(constant_ensemble(1.0), 1) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(true_class_error(Ensemble{}, 1) ==
        doctest::Approx(0.5).epsilon(1e-12));

  // sign pattern of the d=1 optimal rule: -,+,- on (0,1/4),(1/4,3/4),(3/4,1)
  Ensemble bayes_like;
  bayes_like.terms.push_back({1.0, SignedStump{0.75, 1}});
  bayes_like.terms.push_back({-1.0, SignedStump{0.25, 1}});
  bayes_like.terms.push_back({-0.5, SignedStump{1.0, 1}});
  CHECK(true_class_error(bayes_like, 1) ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("excess convex risk at pinned ensembles") {
  CHECK(true_excess_convex(Ensemble{}, 1) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(true_excess_convex(constant_ensemble(1.0), 2) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("no ensemble beats the optimal rule") {
  std::mt19937_64 rng(43);
  for (int rep = 0; rep < 300; ++rep) {
    const int d = 1 + static_cast<int>(uniform_below(rng, 5));
    const Ensemble f = random_ensemble(rng, 6);
    CHECK(true_class_error(f, d) >= 0.25 - 1e-12);
  }
}

TEST_CASE("exact integrators agree with dense quadrature") {
  std::mt19937_64 rng(44);
  for (int rep = 0; rep < 100; ++rep) {
    const int d = 1 + static_cast<int>(uniform_below(rng, 4));
    const Ensemble f = random_ensemble(rng, 6);
    CHECK(std::abs(true_class_error(f, d) - quadrature(f, d, true)) <= 1e-9);
    CHECK(std::abs(true_excess_convex(f, d) - quadrature(f, d, false)) <=
          1e-9);
  }
}
