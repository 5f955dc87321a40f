#pragma once

#include <Eigen/Core>

#include "stumpboost/loss.hpp"

namespace stumpboost {

// One-dimensional solvers for a -> sum_i phi(u[i] + a*d[i]), the section of
// an empirical margin objective along direction d (d_i = g(x_i)*y_i).
// Entries of d may be zero (constant terms). The section is convex in a.
// Ref parameters accept contiguous blocks of larger arrays without copying.

using ConstArrayRef = Eigen::Ref<const Eigen::ArrayXd>;

// Raw section value and derivative (sums, not means).
double direction_objective(const LossSpec& loss, const ConstArrayRef& u,
                           const ConstArrayRef& d, double a);
double direction_derivative(const LossSpec& loss, const ConstArrayRef& u,
                            const ConstArrayRef& d, double a);

// Minimizer over [-cap, cap], cap > 0 finite: closed form for least
// squares, bisection on the derivative otherwise, resolved far below any
// documented step tolerance. A direction vanishing everywhere returns 0.
double minimize_restricted(const LossSpec& loss, const ConstArrayRef& u,
                           const ConstArrayRef& d, double cap);

// Unconstrained minimizer. Throws UnboundedError when the section
// decreases monotonically (possible for logistic/exponential when every
// active d_i has the same sign), DegenerateDirectionError when d is
// identically zero. When the minimum is attained on a half-line (the flat
// tail of modified least squares) the boundary of the flat set is
// returned.
double minimize_exact(const LossSpec& loss, const ConstArrayRef& u,
                      const ConstArrayRef& d);

}  // namespace stumpboost
