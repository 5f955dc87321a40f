#pragma once

#include <Eigen/Core>
#include <string_view>

#include "stumpboost/errors.hpp"

namespace stumpboost {

// Convex margin losses phi(u), u = f(x)*y. Each loss carries a Lipschitz
// bound gamma(beta) valid on |u| <= beta, a uniform curvature constant M for
// the one-dimensional sections of the (psi-transformed) empirical objective,
// and a monotone auxiliary map psi used only in bound bookkeeping.
enum class LossKind {
  logistic,                // ln(1 + e^{-u})
  exponential,             // e^{-u}
  least_squares,           // (1/2)(1-u)^2, == (1/2)(f-y)^2 for y = +-1
  modified_least_squares,  // (1/2)max(1-u, 0)^2
  p_norm,                  // |1-u|^p, p >= 2
};

struct LossSpec {
  LossKind kind = LossKind::least_squares;
  double p = 2.0;  // used by p_norm only

  static LossSpec logistic() { return {LossKind::logistic, 2.0}; }
  static LossSpec exponential() { return {LossKind::exponential, 2.0}; }
  static LossSpec least_squares() { return {LossKind::least_squares, 2.0}; }
  static LossSpec modified_least_squares() { return {LossKind::modified_least_squares, 2.0}; }
  static LossSpec p_norm(double p) { return {LossKind::p_norm, p}; }
};

// Throws PreconditionError for p_norm with p < 2 or non-finite p.
void validate(const LossSpec& spec);

// phi(u). Non-finite u -> NumericError.
double loss_value(const LossSpec& spec, double u);

// dphi/du. Kinks take the right-continuous branch (0 at u=1 for
// modified_least_squares). Non-finite u -> NumericError.
double loss_derivative(const LossSpec& spec, double u);

// Lipschitz constant of phi on |u| <= beta. beta < 0 -> PreconditionError.
double lipschitz_bound(const LossSpec& spec, double beta);

// Uniform curvature constant M of a |-> psi(E phi(f + a*g)) at a = 0,
// over |g| <= 1.
double curvature_bound(const LossSpec& spec);

// Monotone auxiliary map: identity except ln for exponential and
// u^{2/p}/(2(p-1)) for p_norm. Domain violation -> NumericError.
double auxiliary_psi(const LossSpec& spec, double u);

// Mean of phi over a margin vector. Empty input -> EmptyDatasetError.
double empirical_risk(const LossSpec& spec, const Eigen::ArrayXd& margins);

// Canonical config-file name of the loss.
std::string_view loss_name(LossKind kind);

}  // namespace stumpboost
