#pragma once

#include <Eigen/Core>
#include <vector>

#include "stumpboost/errors.hpp"

namespace stumpboost {

// Dictionary element sign * I(x <= threshold) on [0,1]. The dictionary is
// closed under negation via the sign field.
struct SignedStump {
  double threshold = 1.0;  // in [0,1]
  int sign = +1;           // -1 or +1
};

void validate(const SignedStump& s);

// sign * 1 if x <= threshold else 0. x outside [0,1] -> PreconditionError.
double stump_eval(const SignedStump& s, double x);

// Strictly increasing thresholds realizing every distinct indicator pattern
// of I(x <= a), a in [0,1], on the sample — each pattern exactly once.
// Construction: midpoints of consecutive distinct sorted xs, plus 0 when the
// all-excluded pattern is realizable (min xs > 0), plus 1 for the
// all-included pattern. Empty xs -> EmptyDatasetError.
std::vector<double> candidate_thresholds(const Eigen::ArrayXd& xs);

}  // namespace stumpboost
