#pragma once

#include <Eigen/Core>
#include <cmath>
#include <vector>

#include "stumpboost/basis.hpp"

namespace stumpboost {

struct StumpTerm {
  double coef = 0.0;
  SignedStump stump;
};

// Additive model f(x) = sum coef * stump(x), starting from the zero function.
// coef_l1 is an upper bound for the dictionary 1-norm of f (the true norm is
// an infimum over representations and is not computable in general).
struct Ensemble {
  std::vector<StumpTerm> terms;
};

inline double predict_one(const Ensemble& ens, double x) {
  double f = 0.0;
  for (const auto& t : ens.terms) f += t.coef * stump_eval(t.stump, x);
  return f;
}

inline Eigen::ArrayXd predict(const Ensemble& ens, const Eigen::ArrayXd& xs) {
  Eigen::ArrayXd f = Eigen::ArrayXd::Zero(xs.size());
  for (const auto& t : ens.terms) {
    const double v = t.coef * t.stump.sign;
    f += (xs <= t.stump.threshold).cast<double>() * v;
  }
  return f;
}

inline double coef_l1(const Ensemble& ens) {
  double s = 0.0;
  for (const auto& t : ens.terms) s += std::abs(t.coef);
  return s;
}

// Fraction of points misclassified by sign(f), with f >= 0 predicting +1.
inline double empirical_01_error(const Eigen::ArrayXd& f, const Eigen::ArrayXd& y) {
  const Eigen::ArrayXd pred = (f >= 0.0).cast<double>() * 2.0 - 1.0;
  return (pred * y < 0.0).cast<double>().mean();
}

}  // namespace stumpboost
