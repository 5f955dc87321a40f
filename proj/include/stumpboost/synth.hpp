#pragma once

#include <cstdint>

#include "stumpboost/dataset.hpp"
#include "stumpboost/ensemble.hpp"
#include "stumpboost/loss.hpp"

namespace stumpboost {

// Synthetic binary target on [0,1]: P(y=+1|x) is a triangle wave with d
// periods, eta(x) = 0.25 + 0.5*tri(frac(d*x)) in [0.25, 0.75], where
// tri rises 0 -> 1 on [0, 1/2] and falls back on [1/2, 1]. Piecewise
// linear with breakpoints at multiples of 1/(2d).
double target_probability(int d, double x);

// Conditional mean E[y|x] = 2*eta(x) - 1.
double target_regression(int d, double x);

// Bayes 0-1 risk: eta crosses 1/2 each half-period, so the optimal rule
// still errs with mass min(eta, 1-eta); the integral is 0.25 for every d.
double bayes_error(int d);

// m iid draws: x uniform on [0,1], y = +1 with probability eta(x).
Dataset sample_synthetic(int d, std::size_t m, std::uint64_t seed);

// Exact population 0-1 risk of sign(f) (ties predict +1). f is piecewise
// constant and eta piecewise linear; both integrate in closed form over
// the merged breakpoints.
double true_class_error(const Ensemble& f, int d);

// Exact population excess convex risk Q(f) - inf_g Q(g) for least squares,
// i.e. E[(f(x) - E[y|x])^2]. Quadratic integrand, still closed form.
double true_excess_convex(const Ensemble& f, int d);

}  // namespace stumpboost
