#include "stumpboost/line_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stumpboost/errors.hpp"

namespace stumpboost {

namespace {

void check_lengths(const ConstArrayRef& u, const ConstArrayRef& d) {
  if (u.size() != d.size())
    throw PreconditionError("line search: u/d length mismatch");
}

// Least-squares sections minimize exactly: a* = sum d*(1-u) / sum d^2.
bool ls_closed_form(const LossSpec& loss, const ConstArrayRef& u,
                    const ConstArrayRef& d, double* a) {
  if (loss.kind != LossKind::least_squares) return false;
  const double dd = (d * d).sum();
  if (dd == 0.0) return false;
  *a = (d * (1.0 - u)).sum() / dd;
  return true;
}

// Root of the nondecreasing derivative inside [lo, hi], where
// D(lo) < 0 < D(hi). Resolved to a width negligible against every
// documented objective tolerance.
double bisect(const LossSpec& loss, const ConstArrayRef& u,
              const ConstArrayRef& d, double lo, double hi) {
  const double width =
      1e-14 * std::max({1.0, std::abs(lo), std::abs(hi)});
  for (int it = 0; it < 200 && hi - lo > width; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (direction_derivative(loss, u, d, mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double direction_objective(const LossSpec& loss, const ConstArrayRef& u,
                           const ConstArrayRef& d, double a) {
  check_lengths(u, d);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i)
    sum += loss_value(loss, u[i] + a * d[i]);
  return sum;
}

double direction_derivative(const LossSpec& loss, const ConstArrayRef& u,
                            const ConstArrayRef& d, double a) {
  check_lengths(u, d);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i)
    if (d[i] != 0.0) sum += loss_derivative(loss, u[i] + a * d[i]) * d[i];
  return sum;
}

double minimize_restricted(const LossSpec& loss, const ConstArrayRef& u,
                           const ConstArrayRef& d, double cap) {
  check_lengths(u, d);
  validate(loss);
  if (!std::isfinite(cap) || cap <= 0.0)
    throw PreconditionError("minimize_restricted: cap must be finite and > 0");
  double a;
  if (ls_closed_form(loss, u, d, &a)) return std::clamp(a, -cap, cap);
  if ((d == 0.0).all()) return 0.0;
  if (direction_derivative(loss, u, d, -cap) >= 0.0) return -cap;
  if (direction_derivative(loss, u, d, cap) <= 0.0) return cap;
  return bisect(loss, u, d, -cap, cap);
}

double minimize_exact(const LossSpec& loss, const ConstArrayRef& u,
                      const ConstArrayRef& d) {
  check_lengths(u, d);
  validate(loss);
  if ((d == 0.0).all())
    throw DegenerateDirectionError("minimize_exact: direction vanishes on the sample");

  double a;
  if (ls_closed_form(loss, u, d, &a)) return a;

  const bool none_pos = (d <= 0.0).all();
  const bool none_neg = (d >= 0.0).all();
  if (none_pos || none_neg) {
    // One-sided direction: every active margin moves the same way.
    if (loss.kind == LossKind::logistic || loss.kind == LossKind::exponential)
      throw UnboundedError("minimize_exact: section decreases monotonically");
    if (loss.kind == LossKind::modified_least_squares) {
      // The section reaches 0 and stays there; return the edge of the flat
      // half-line: the tightest a with 1 - u_i - a*d_i <= 0 for all active i.
      double edge = none_neg ? -std::numeric_limits<double>::infinity()
                             : std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (d[i] == 0.0) continue;
        const double r = (1.0 - u[i]) / d[i];
        edge = none_neg ? std::max(edge, r) : std::min(edge, r);
      }
      return edge;
    }
    // p-norm sections are coercive; fall through to the bracketed solve.
  }

  // Coercive section: expand a bracket with D(lo) < 0 < D(hi), then bisect.
  double lo = -1.0, hi = 1.0;
  const double grow_limit = 0x1p40;
  while (direction_derivative(loss, u, d, hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > grow_limit)
      throw UnboundedError("minimize_exact: no finite minimizer found");
  }
  while (direction_derivative(loss, u, d, lo) >= 0.0) {
    hi = lo;
    lo *= 2.0;
    if (lo < -grow_limit)
      throw UnboundedError("minimize_exact: no finite minimizer found");
  }
  return bisect(loss, u, d, lo, hi);
}

}  // namespace stumpboost
