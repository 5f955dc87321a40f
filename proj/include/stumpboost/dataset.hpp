#pragma once

#include <Eigen/Core>

#include "stumpboost/errors.hpp"

namespace stumpboost {

// Binary classification sample on [0,1]: abscissae x, labels y in {-1,+1}.
struct Dataset {
  Eigen::ArrayXd x;
  Eigen::ArrayXd y;

  Eigen::Index size() const { return x.size(); }
};

inline void validate(const Dataset& data) {
  if (data.x.size() != data.y.size())
    throw PreconditionError("dataset: x/y length mismatch");
  if (data.x.size() > 0) {
    if (!data.x.allFinite() || data.x.minCoeff() < 0.0 || data.x.maxCoeff() > 1.0)
      throw PreconditionError("dataset: x outside [0,1]");
    if (!((data.y == 1.0) || (data.y == -1.0)).all())
      throw PreconditionError("dataset: labels must be -1 or +1");
  }
}

}  // namespace stumpboost
