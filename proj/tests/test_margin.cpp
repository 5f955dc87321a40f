#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <vector>

#include "stumpboost/errors.hpp"
#include "stumpboost/margin.hpp"
#include "stumpboost/rng.hpp"

using namespace stumpboost;

namespace {

MarginInstance two_basis() {
  MarginInstance inst;
  inst.g.resize(2, 2);
  inst.g << 1.0, 1.0, -1.0, 1.0;
  inst.y.resize(2);
  inst.y << 1.0, -1.0;
  return inst;
}

MarginInstance random_instance(std::mt19937_64& rng, int n, int j) {
  MarginInstance inst;
  inst.g.resize(n, j);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < j; ++c) inst.g(r, c) = 2.0 * uniform01(rng) - 1.0;
  inst.y.resize(n);
  for (int r = 0; r < n; ++r) inst.y[r] = uniform01(rng) < 0.5 ? -1.0 : 1.0;
  return inst;
}

// Best margin over w in the l1 ball, scanned on a grid; lower bound on the
// exact value up to the grid resolution.
double grid_margin(const MarginInstance& inst, double step) {
  const Eigen::Index n = inst.g.rows();
  double best = -std::numeric_limits<double>::infinity();
  for (double w1 = -1.0; w1 <= 1.0 + 1e-12; w1 += step) {
    const double rem = 1.0 - std::abs(w1);
    for (double w2 = -rem; w2 <= rem + 1e-12; w2 += step) {
      double worst = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < n; ++i)
        worst = std::min(worst,
                         inst.y[i] * (w1 * inst.g(i, 0) + w2 * inst.g(i, 1)));
      best = std::max(best, worst);
    }
  }
  return best;
}

}  // namespace

TEST_CASE("best margin at pinned instances") {
  CHECK(max_l1_margin(two_basis()) == doctest::Approx(1.0).epsilon(1e-9));

  MarginInstance perfect;
  perfect.g.resize(3, 1);
  perfect.g << 1.0, -1.0, 1.0;
  perfect.y.resize(3);
  perfect.y << 1.0, -1.0, 1.0;
  CHECK(max_l1_margin(perfect) == doctest::Approx(1.0).epsilon(1e-9));

  MarginInstance unsep;
  unsep.g.resize(2, 1);
  unsep.g << 1.0, 1.0;
  unsep.y.resize(2);
  unsep.y << 1.0, -1.0;
  CHECK(max_l1_margin(unsep) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("single-column instances match the closed form") {
  // For one column the optimum sits at w in {-1, 0, +1}.
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 100; ++rep) {
    const MarginInstance inst =
        random_instance(rng, 2 + static_cast<int>(uniform_below(rng, 6)), 1);
    const Eigen::ArrayXd a = inst.y * inst.g.col(0).array();
    const double expect = std::max({0.0, a.minCoeff(), -a.maxCoeff()});
    CHECK(max_l1_margin(inst) == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("two-column instances match a grid scan") {
  std::mt19937_64 rng(62);
  for (int rep = 0; rep < 10; ++rep) {
    const MarginInstance inst =
        random_instance(rng, 2 + static_cast<int>(uniform_below(rng, 5)), 2);
    const double lp = max_l1_margin(inst);
    const double grid = grid_margin(inst, 5e-3);
    CHECK(lp >= grid - 1e-9);  // grid point is feasible
    CHECK(std::abs(lp - grid) <= 1e-2);
  }
}

TEST_CASE("best margin is invariant to point order and column negation") {
  std::mt19937_64 rng(63);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 3 + static_cast<int>(uniform_below(rng, 5));
    const int j = 1 + static_cast<int>(uniform_below(rng, 3));
    const MarginInstance inst = random_instance(rng, n, j);
    const double base = max_l1_margin(inst);

    MarginInstance perm = inst;
    std::vector<std::size_t> idx(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    shuffle_indices(idx, rng);
    for (int r = 0; r < n; ++r) {
      perm.g.row(r) = inst.g.row(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(r)]));
      perm.y[r] = inst.y[static_cast<Eigen::Index>(idx[static_cast<std::size_t>(r)])];
    }
    CHECK(max_l1_margin(perm) == doctest::Approx(base).epsilon(1e-9));

    MarginInstance flipped = inst;
    flipped.g.col(0) = -inst.g.col(0);
    CHECK(max_l1_margin(flipped) == doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("instance validation") {
  MarginInstance bad = two_basis();
  bad.g(0, 0) = 1.5;
  CHECK_THROWS_AS(validate(bad), PreconditionError);
  bad = two_basis();
  bad.y[0] = 0.5;
  CHECK_THROWS_AS(validate(bad), PreconditionError);
  bad = two_basis();
  bad.y.resize(1);
  CHECK_THROWS_AS(validate(bad), PreconditionError);
  CHECK_THROWS_AS(validate(MarginInstance{}), PreconditionError);
}

TEST_CASE("margin error counts points at or below the threshold") {
  Eigen::ArrayXd fp(2), yp(2);
  fp << 0.5, -0.5;
  yp << 1.0, -1.0;
  CHECK(margin_error(fp, yp, 0.4) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(margin_error(fp, yp, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(margin_error(Eigen::ArrayXd::Zero(2), yp, 0.0) ==
        doctest::Approx(1.0).epsilon(1e-12));

  Eigen::ArrayXd f(3), y(3);
  f << 0.5, -0.2, 0.7;
  y << 1.0, 1.0, -1.0;
  CHECK(margin_error(f, y, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(margin_error(f, y, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(margin_error(f, y, -0.75) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(margin_error(Eigen::ArrayXd(), Eigen::ArrayXd(), 0.0),
                  EmptyDatasetError);

  std::mt19937_64 rng(64);
  for (int rep = 0; rep < 50; ++rep) {
    Eigen::ArrayXd ff(5), yy(5);
    for (int i = 0; i < 5; ++i) {
      ff[i] = 4.0 * uniform01(rng) - 2.0;
      yy[i] = uniform01(rng) < 0.5 ? -1.0 : 1.0;
    }
    double prev = 0.0;
    for (double g = -2.5; g <= 2.5; g += 0.25) {
      const double cur = margin_error(ff, yy, g);
      CHECK(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("constant-step run on a perfectly aligned column") {
  MarginInstance perfect;
  perfect.g.resize(3, 1);
  perfect.g << 1.0, -1.0, 1.0;
  perfect.y.resize(3);
  perfect.y << 1.0, -1.0, 1.0;

  const std::vector<MarginRow> rows = margin_run(perfect, 0.1, 10);
  REQUIRE(rows.size() == 11);
  CHECK(rows[0].k == 0);
  CHECK(rows[0].exp_loss == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rows[0].norm_margin == doctest::Approx(0.0).epsilon(1e-12));
  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK(rows[k].exp_loss ==
          doctest::Approx(std::exp(-0.1 * static_cast<double>(k)))
              .epsilon(1e-9));
    CHECK(rows[k].norm_margin == doctest::Approx(1.0).epsilon(1e-9));
  }

  const std::vector<MarginRow> none = margin_run(perfect, 0.1, 0);
  REQUIRE(none.size() == 1);
  CHECK(none[0].exp_loss == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("loss decay bound holds row by row") {
  const MarginInstance inst = two_basis();
  const double gamma = max_l1_margin(inst);
  const double h = 0.1;
  const std::vector<MarginRow> rows = margin_run(inst, h, 200);
  REQUIRE(rows.size() == 201);
  for (const MarginRow& r : rows) {
    const double bound =
        std::exp(-static_cast<double>(r.k) * h * (gamma - h));
    CHECK(r.exp_loss <= bound + 1e-9);
  }
}

TEST_CASE("normalized margin approaches the best achievable value") {
  // No single column separates: the optimal mix is w = (1/2, 1/2).
  MarginInstance inst;
  inst.g.resize(3, 2);
  inst.g << 1.0, -0.2, -0.2, 1.0, -1.0, -0.5;
  inst.y.resize(3);
  inst.y << 1.0, 1.0, -1.0;
  const double gamma = max_l1_margin(inst);
  CHECK(gamma == doctest::Approx(0.4).epsilon(1e-9));

  const double h = 0.02;
  const std::vector<MarginRow> rows = margin_run(inst, h, 2500);
  // The normalized margin can wiggle step to step, but it may never exceed
  // the exact optimum and must end up within roughly one step of it.
  for (const MarginRow& r : rows) CHECK(r.norm_margin <= gamma + 1e-9);
  CHECK(rows.back().norm_margin >= gamma - h - 0.05);
}

TEST_CASE("step cap must be positive") {
  CHECK_THROWS_AS(margin_run(two_basis(), 0.0, 5), PreconditionError);
  CHECK_THROWS_AS(margin_run(two_basis(), -0.1, 5), PreconditionError);
}

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  std::ofstream out(name);
  out << body;
  out.close();
  return name;
}

}  // namespace

TEST_CASE("instance files parse and reject malformed rows") {
  const std::string good =
      write_temp("margin_good.csv", "1,1,1\n-1,-1,1\n");
  const MarginInstance inst = read_margin_instance(good);
  CHECK(inst.g.rows() == 2);
  CHECK(inst.g.cols() == 2);
  CHECK(inst.y[0] == 1.0);
  CHECK(inst.y[1] == -1.0);
  CHECK(inst.g(1, 0) == -1.0);
  CHECK(max_l1_margin(inst) == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(
      read_margin_instance(write_temp("margin_bad_label.csv", "2,0.5\n")),
      ConfigError);
  try {
    read_margin_instance("margin_bad_label.csv");
    FAIL("expected a parse error");
  } catch (const ConfigError& e) {
    CHECK(e.line == 1);
  }

  CHECK_THROWS_AS(read_margin_instance(write_temp(
                      "margin_ragged.csv", "1,0.5\n-1,0.5,0.2\n")),
                  ConfigError);
  try {
    read_margin_instance("margin_ragged.csv");
    FAIL("expected a parse error");
  } catch (const ConfigError& e) {
    CHECK(e.line == 2);
  }

  CHECK_THROWS_AS(
      read_margin_instance(write_temp("margin_range.csv", "1,1.5\n")),
      ConfigError);
  CHECK_THROWS_AS(
      read_margin_instance(write_temp("margin_empty.csv", "")), ConfigError);
  CHECK_THROWS_AS(
      read_margin_instance(write_temp("margin_text.csv", "1,abc\n")),
      ConfigError);
  CHECK_THROWS_AS(read_margin_instance("margin_missing_file.csv"), IoError);
}

TEST_CASE("csv header is pinned") {
  CHECK(margin_csv_header() == "k,exp_loss,norm_margin,bound");
}
