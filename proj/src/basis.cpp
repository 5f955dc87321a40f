#include "stumpboost/basis.hpp"

#include <algorithm>
#include <cmath>

namespace stumpboost {

void validate(const SignedStump& s) {
  if (!std::isfinite(s.threshold) || s.threshold < 0.0 || s.threshold > 1.0)
    throw PreconditionError("stump: threshold must lie in [0,1]");
  if (s.sign != 1 && s.sign != -1)
    throw PreconditionError("stump: sign must be -1 or +1");
}

double stump_eval(const SignedStump& s, double x) {
  validate(s);
  if (!std::isfinite(x) || x < 0.0 || x > 1.0)
    throw PreconditionError("stump_eval: x must lie in [0,1]");
  return x <= s.threshold ? static_cast<double>(s.sign) : 0.0;
}

std::vector<double> candidate_thresholds(const Eigen::ArrayXd& xs) {
  if (xs.size() == 0) throw EmptyDatasetError("candidate_thresholds: no samples");
  if (!xs.allFinite() || xs.minCoeff() < 0.0 || xs.maxCoeff() > 1.0)
    throw PreconditionError("candidate_thresholds: xs must lie in [0,1]");

  std::vector<double> sorted(xs.data(), xs.data() + xs.size());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<double> out;
  out.reserve(sorted.size() + 1);
  // The all-excluded pattern needs a threshold below every sample; when the
  // smallest sample is 0 no a in [0,1] excludes it, and 0 would duplicate
  // the pattern of the next candidate, so it is left out.
  if (sorted.front() > 0.0) out.push_back(0.0);
  for (std::size_t i = 1; i < sorted.size(); ++i)
    out.push_back(0.5 * (sorted[i - 1] + sorted[i]));
  out.push_back(1.0);
  return out;
}

}  // namespace stumpboost
