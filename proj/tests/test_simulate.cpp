#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "netabs/errors.hpp"
#include "netabs/graph.hpp"
#include "netabs/measures.hpp"
#include "netabs/rng.hpp"
#include "netabs/simulate.hpp"
#include "netabs/spectral.hpp"

using namespace netabs;

TEST_CASE("noise-free trajectories decay along the spectrum") {
  // With sigma = 0, x(t) relaxes to consensus; the centered norm decays
  // like exp(-lambda_2 t) for the slowest disagreement mode.
  const auto g = path_graph(4);
  const auto spec = decompose(g);
  Eigen::VectorXd x0(4);
  x0 << 3.0, -1.0, 2.0, 0.0;
  const double dt = 1e-3;
  const int steps = 4000;
  const Eigen::MatrixXd path =
      simulate_first_order_path(g, x0, dt, steps, 0.0, 1);
  REQUIRE(path.rows() == steps + 1);
  REQUIRE(path.cols() == 4);
  // Row 0 is the centered initial state.
  const Eigen::VectorXd c0 = x0.array() - x0.mean();
  CHECK((path.row(0).transpose() - c0).norm() <= 1e-12);
  // Centered rows stay centered and the norm is strictly decreasing.
  for (int k : {1, steps / 2, steps}) {
    CHECK(std::abs(path.row(k).sum()) <= 1e-9);
    CHECK(path.row(k).norm() < path.row(k - 1).norm() + 1e-15);
  }
  // Compare against the exact matrix-exponential flow at the endpoint.
  const double T = dt * steps;
  Eigen::VectorXd exact = Eigen::VectorXd::Zero(4);
  for (int k = 1; k < 4; ++k) {
    const Eigen::VectorXd u = spec.vectors.col(k);
    exact += std::exp(-spec.lambdas(k) * T) * u.dot(c0) * u;
  }
  // Euler steps at dt = 1e-3 track the flow to O(dt) per unit time.
  CHECK((path.row(steps).transpose() - exact).norm() <= 5e-3);
}

TEST_CASE("one deterministic step matches the Euler map bitwise") {
  const auto g = complete_graph(3);
  Eigen::VectorXd x0(3);
  x0 << 1.0, 0.0, -1.0;  // already centered
  const double dt = 0.125;  // power of two: the update is exact in binary
  const Eigen::MatrixXd path = simulate_first_order_path(g, x0, dt, 1, 0.0, 9);
  const Eigen::MatrixXd L = g.laplacian();
  const Eigen::VectorXd manual = x0 - dt * (L * x0);
  CHECK(path.row(1)(0) == manual(0));
  CHECK(path.row(1)(1) == manual(1));
  CHECK(path.row(1)(2) == manual(2));
}

TEST_CASE("first-order stats are reproducible and respect their options") {
  const auto g = complete_graph(4);
  SimOptions opt;
  opt.trials = 4;
  opt.seed = 11;
  opt.dt = 0.01;
  opt.t_burn = 2.0;
  opt.t_total = 10.0;
  const auto a = simulate_first_order(g, opt);
  const auto b = simulate_first_order(g, opt);
  CHECK(a.h2_sq.mean == b.h2_sq.mean);  // bitwise determinism
  CHECK(a.local_dev.mean == b.local_dev.mean);
  CHECK(a.trials == 4);
  CHECK(a.dt == doctest::Approx(0.01));
  CHECK(a.t_burn == doctest::Approx(2.0));
  CHECK(a.t_total == doctest::Approx(10.0));
  CHECK(a.seed == 11);
  REQUIRE(a.h2_sq.per_trial.size() == 4);
  // Trials differ from one another (independent streams).
  CHECK(a.h2_sq.per_trial[0] != a.h2_sq.per_trial[1]);
  // Std error is the sample std over sqrt(trials).
  double mean = 0.0;
  for (double v : a.h2_sq.per_trial) mean += v;
  mean /= 4.0;
  double var = 0.0;
  for (double v : a.h2_sq.per_trial) var += (v - mean) * (v - mean);
  var /= 3.0;
  CHECK(a.h2_sq.std_error ==
        doctest::Approx(std::sqrt(var / 4.0)).epsilon(1e-12));
  CHECK(a.h2_sq.mean == doctest::Approx(mean).epsilon(1e-12));
}

TEST_CASE("thread count does not change simulation statistics") {
  const auto g = gnm_random(12, 30, 3);
  SimOptions opt1;
  opt1.trials = 6;
  opt1.seed = 21;
  opt1.dt = 0.02;
  opt1.t_burn = 1.0;
  opt1.t_total = 4.0;
  SimOptions opt4 = opt1;
  opt4.threads = 4;
  const auto a = simulate_first_order(g, opt1);
  const auto b = simulate_first_order(g, opt4);
  REQUIRE(a.h2_sq.per_trial.size() == b.h2_sq.per_trial.size());
  for (size_t k = 0; k < a.h2_sq.per_trial.size(); ++k)
    CHECK(a.h2_sq.per_trial[k] == b.h2_sq.per_trial[k]);  // bitwise
}

TEST_CASE("long-run disagreement power approaches the closed form") {
  // E||x - avg||^2 -> h2^2 = tr(pinv L)/2 as dt -> 0; at a small finite dt
  // the Euler scheme inflates each mode by 1/(1 - lam dt / 2).
  const auto g = complete_graph(3);
  const auto spec = decompose(g);
  SimOptions opt;
  opt.trials = 24;
  opt.seed = 5;
  opt.dt = 0.02 / spec.lambda_max();  // fine grid: bias under 1%
  opt.t_burn = 30.0;
  opt.t_total = 1200.0;
  const auto st = simulate_first_order(g, opt);
  const double target = 1.0 / 3.0;  // two modes at lambda = 3
  CHECK(std::abs(st.h2_sq.mean - target) <=
        0.05 * target + 3.0 * st.h2_sq.std_error);
  // Local deviation power matches (1/2) sum 1/d_i in expectation.
  const double dev_target = local_deviation_1(g);
  CHECK(std::abs(st.local_dev.mean - dev_target) <=
        0.05 * dev_target + 3.0 * st.local_dev.std_error);
}

TEST_CASE("discretization bias follows the per-mode Euler correction") {
  // At a coarse dt the stationary variance of a mode with rate lam is
  // inflated by exactly 1/(1 - lam dt/2); check the measured average
  // against the corrected prediction rather than the continuum value.
  const auto g = complete_graph(3);
  SimOptions opt;
  opt.trials = 24;
  opt.seed = 7;
  opt.dt = 0.1 / 3.0;  // lam dt = 0.1: ~5% inflation per mode
  opt.t_burn = 30.0;
  opt.t_total = 900.0;
  const auto st = simulate_first_order(g, opt);
  const double lam = 3.0;
  const double corrected = 2.0 * (1.0 / (2.0 * lam)) /
                           (1.0 - lam * opt.dt / 2.0);
  CHECK(std::abs(st.h2_sq.mean - corrected) <=
        0.04 * corrected + 3.0 * st.h2_sq.std_error);
}

TEST_CASE("second-order position power approaches its closed form") {
  const auto g = complete_graph(3);
  const double beta = 1.0;
  SimOptions opt;
  opt.trials = 24;
  opt.seed = 13;
  opt.dt = 0.01;
  opt.t_burn = 60.0;
  opt.t_total = 1500.0;
  const auto st = simulate_second_order(g, beta, opt);
  // Theta_2^2 = (1/(2 beta)) sum lam^-2 = 1/9 on the triangle.
  const double target = 1.0 / 9.0;
  CHECK(std::abs(st.h2_sq.mean - target) <=
        0.08 * target + 4.0 * st.h2_sq.std_error);
}

TEST_CASE("paired simulation sees zero gap between identical networks") {
  const auto g = gnm_random(10, 22, 4);
  SimOptions opt;
  opt.trials = 4;
  opt.seed = 17;
  opt.dt = 0.01;
  opt.t_burn = 1.0;
  opt.t_total = 5.0;
  const auto st = simulate_pair_error(g, g, opt);
  // Identical dynamics driven by the identical noise path cancel exactly.
  CHECK(st.output_error.mean <= 1e-20);
  CHECK(st.h2_sq.mean > 0.0);
}

TEST_CASE("paired simulation validates node counts") {
  const auto g = complete_graph(4);
  const auto h = complete_graph(5);
  CHECK_THROWS_AS(simulate_pair_error(g, h, {}), invalid_input);
}

TEST_CASE("simulation rejects nonsensical grids") {
  const auto g = complete_graph(3);  // lambda_max = 3
  SimOptions opt;
  opt.dt = 1.0;  // dt * lambda_max = 3: the explicit scheme would diverge
  CHECK_THROWS_AS(simulate_first_order(g, opt), invalid_input);
  SimOptions opt2;
  opt2.t_burn = 5.0;
  opt2.t_total = 1.0;  // must exceed the burn-in
  CHECK_THROWS_AS(simulate_first_order(g, opt2), invalid_input);
  SimOptions opt3;
  opt3.trials = 0;
  CHECK_THROWS_AS(simulate_first_order(g, opt3), invalid_input);
  // Non-positive dt means "pick the default", not an error.
  SimOptions opt4;
  opt4.trials = 1;
  opt4.dt = -1.0;
  opt4.t_burn = 0.2;
  opt4.t_total = 0.4;
  CHECK(simulate_first_order(g, opt4).dt ==
        doctest::Approx(0.1 / 3.0).epsilon(1e-12));
  // The raw path helper does validate its explicit arguments.
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_AS(simulate_first_order_path(g, x0, 0.0, 5, 0.0, 1),
                  invalid_input);
  CHECK_THROWS_AS(simulate_first_order_path(g, x0, 0.1, -1, 0.0, 1),
                  invalid_input);
  Eigen::VectorXd bad = Eigen::VectorXd::Zero(5);
  CHECK_THROWS_AS(simulate_first_order_path(g, bad, 0.1, 5, 0.0, 1),
                  invalid_input);
  // Disconnected graphs have no stationary disagreement statistics.
  const WeightedGraph split(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  CHECK_THROWS_AS(simulate_first_order(split, {}), numeric_error);
}

TEST_CASE("default grids are derived from the spectrum") {
  const auto g = complete_graph(5);  // lambda_2 = lambda_max = 5
  SimOptions opt;
  opt.trials = 1;
  opt.t_burn = 0.4;
  opt.t_total = 0.8;
  const auto st = simulate_first_order(g, opt);
  CHECK(st.dt == doctest::Approx(0.1 / 5.0).epsilon(1e-12));
  SimOptions full;
  full.trials = 1;
  const auto st2 = simulate_first_order(g, full);
  CHECK(st2.t_burn == doctest::Approx(10.0 / 5.0).epsilon(1e-12));
  CHECK(st2.t_total == doctest::Approx(st2.t_burn + 200.0 / 5.0)
                           .epsilon(1e-12));
}
