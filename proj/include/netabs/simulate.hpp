#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "netabs/graph.hpp"

namespace netabs {

struct StatSeries {
  double mean = 0.0;
  double std_error = 0.0;           // sample std / sqrt(trials)
  std::vector<double> per_trial;    // time-averaged value per trial
};

struct SimOptions {
  double dt = 0.0;       // 0 -> 0.1 / lambda_max
  double t_burn = 0.0;   // 0 -> 10 / lambda_2
  double t_total = 0.0;  // 0 -> t_burn + 200 / lambda_2
  int trials = 8;
  std::uint64_t seed = 0;
  int threads = 1;
  double noise_intensity = 1.0;          // diffusion coefficient multiplier
  std::optional<Eigen::VectorXd> x0;     // initial state (default zero)
};

struct SimulationStats {
  StatSeries h2_sq;         // time average of ||x - mean(x)||^2
  StatSeries local_dev;     // time average of sum_i dev_i^2
  StatSeries output_error;  // paired runs only: ||y - y_s||^2
  double dt = 0.0;
  double t_burn = 0.0;
  double t_total = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
};

// Euler-Maruyama integration of the noisy consensus dynamics
// dx = -L x dt + sigma dW.  The solver integrates the disagreement
// component directly (initial state and injected noise are centered), which
// every reported statistic depends on exclusively; the free average mode is
// thereby exactly neutral.  local_dev tracks dev = D^-1 L x, the deviation
// of each node from the weighted average of its neighbors.
SimulationStats simulate_first_order(const WeightedGraph& g,
                                     const SimOptions& opt = {});

// Second-order dynamics dx = v dt, dv = (-L x - beta L v) dt + sigma dW.
// h2_sq tracks the position disagreement ||x - mean(x)||^2; local_dev
// tracks dev = D^-1 L v on velocities.
SimulationStats simulate_second_order(const WeightedGraph& g, double beta,
                                      const SimOptions& opt = {});

// Runs the original and abstraction side by side with an identical noise
// path; output_error tracks ||(x - mean) - (x_s - mean_s)||^2 and h2_sq the
// original's disagreement.
SimulationStats simulate_pair_error(const WeightedGraph& g,
                                    const WeightedGraph& g_s,
                                    const SimOptions& opt = {});

// Single trajectory of the centered state, one row per step (row 0 is the
// centered initial state).  sigma = 0 gives the deterministic flow.
Eigen::MatrixXd simulate_first_order_path(const WeightedGraph& g,
                                          const Eigen::VectorXd& x0,
                                          double dt, int steps, double sigma,
                                          std::uint64_t seed);

}  // namespace netabs
