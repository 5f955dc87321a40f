#include "stumpboost/loss.hpp"

#include <cmath>
#include <string>

namespace stumpboost {

namespace {

void require_finite(double u) {
  if (!std::isfinite(u)) throw NumericError("loss: non-finite margin");
}

}  // namespace

void validate(const LossSpec& spec) {
  switch (spec.kind) {
    case LossKind::logistic:
    case LossKind::exponential:
    case LossKind::least_squares:
    case LossKind::modified_least_squares:
      return;
    case LossKind::p_norm:
      if (!std::isfinite(spec.p) || spec.p < 2.0)
        throw PreconditionError("loss: p_norm requires p >= 2");
      return;
  }
  throw PreconditionError("loss: unknown kind");
}

double loss_value(const LossSpec& spec, double u) {
  require_finite(u);
  switch (spec.kind) {
    case LossKind::logistic:
      // ln(1 + e^{-u}) without overflow for large |u|.
      return u > 0.0 ? std::log1p(std::exp(-u)) : -u + std::log1p(std::exp(u));
    case LossKind::exponential:
      return std::exp(-u);
    case LossKind::least_squares:
      return 0.5 * (1.0 - u) * (1.0 - u);
    case LossKind::modified_least_squares: {
      const double t = 1.0 - u;
      return t > 0.0 ? 0.5 * t * t : 0.0;
    }
    case LossKind::p_norm:
      return std::pow(std::abs(1.0 - u), spec.p);
  }
  throw PreconditionError("loss: unknown kind");
}

double loss_derivative(const LossSpec& spec, double u) {
  require_finite(u);
  switch (spec.kind) {
    case LossKind::logistic:
      // -1 / (1 + e^u), evaluated on the non-overflowing branch.
      if (u >= 0.0) {
        const double e = std::exp(-u);
        return -e / (1.0 + e);
      }
      return -1.0 / (1.0 + std::exp(u));
    case LossKind::exponential:
      return -std::exp(-u);
    case LossKind::least_squares:
      return u - 1.0;
    case LossKind::modified_least_squares:
      return u < 1.0 ? u - 1.0 : 0.0;
    case LossKind::p_norm: {
      const double t = 1.0 - u;
      if (t >= 0.0) return -spec.p * std::pow(t, spec.p - 1.0);
      return spec.p * std::pow(-t, spec.p - 1.0);
    }
  }
  throw PreconditionError("loss: unknown kind");
}

double lipschitz_bound(const LossSpec& spec, double beta) {
  validate(spec);
  if (!std::isfinite(beta) || beta < 0.0)
    throw PreconditionError("lipschitz_bound: beta must be >= 0");
  switch (spec.kind) {
    case LossKind::logistic:
      return 1.0;
    case LossKind::exponential:
      return std::exp(beta);
    case LossKind::least_squares:
    case LossKind::modified_least_squares:
      return 2.0 * (beta + 1.0);
    case LossKind::p_norm:
      return spec.p * std::pow(beta + 1.0, spec.p - 1.0);
  }
  throw PreconditionError("loss: unknown kind");
}

double curvature_bound(const LossSpec& spec) {
  validate(spec);
  return spec.kind == LossKind::logistic ? 0.25 : 1.0;
}

double auxiliary_psi(const LossSpec& spec, double u) {
  require_finite(u);
  switch (spec.kind) {
    case LossKind::logistic:
    case LossKind::least_squares:
    case LossKind::modified_least_squares:
      return u;
    case LossKind::exponential:
      if (u <= 0.0) throw NumericError("auxiliary_psi: ln needs u > 0");
      return std::log(u);
    case LossKind::p_norm:
      if (u < 0.0) throw NumericError("auxiliary_psi: power needs u >= 0");
      return std::pow(u, 2.0 / spec.p) / (2.0 * (spec.p - 1.0));
  }
  throw PreconditionError("loss: unknown kind");
}

double empirical_risk(const LossSpec& spec, const Eigen::ArrayXd& margins) {
  validate(spec);
  if (margins.size() == 0) throw EmptyDatasetError("empirical_risk: no samples");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < margins.size(); ++i)
    sum += loss_value(spec, margins[i]);
  return sum / static_cast<double>(margins.size());
}

std::string_view loss_name(LossKind kind) {
  switch (kind) {
    case LossKind::logistic: return "logistic";
    case LossKind::exponential: return "exponential";
    case LossKind::least_squares: return "least_squares";
    case LossKind::modified_least_squares: return "modified_least_squares";
    case LossKind::p_norm: return "p_norm";
  }
  return "unknown";
}

}  // namespace stumpboost
