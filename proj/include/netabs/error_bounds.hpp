#pragma once

#include <Eigen/Dense>

#include "netabs/graph.hpp"

namespace netabs {

// Exact H2 distance between the consensus transfer matrices of two
// connected Laplacians on the same node set, computed from the coupled
// observability equation on the agreement-free subspace (one Sylvester
// solve; no sampling).
double h2_error_exact(const Eigen::MatrixXd& L, const Eigen::MatrixXd& L_s);
double h2_error_exact(const WeightedGraph& g, const WeightedGraph& g_s);

// Trace-form a-priori upper bound on the same distance:
// sqrt( tr(L_s+ + L+ - 4 (L + L_s)+) / 2 ).
double h2_error_bound(const Eigen::MatrixXd& L, const Eigen::MatrixXd& L_s);
double h2_error_bound(const WeightedGraph& g, const WeightedGraph& g_s);

// Closed-form bound on the relative H2 error achievable by any abstraction
// with sandwich certificate eps in [0, 1):
// sqrt( eps (4 - eps) / ((1 - eps) (2 + eps)) ).
double relative_error_bound(double eps);

// Bound on the steady-state output error power lim E||y - y_s||^2 implied
// by the certificate: relative_error_bound(eps)^2 * tr(L+) / 2.
double output_error_bound(const Eigen::MatrixXd& L, double eps);
double output_error_bound(const WeightedGraph& g, double eps);

struct H2ErrorReport {
  double exact = 0.0;           // ||G - G_s||_H2
  double trace_bound = 0.0;     // a-priori trace-form bound
  double relative_bound = 0.0;  // bound on exact / h2_original (from eps)
  double relative_bound_absolute = 0.0;  // relative_bound * h2_original
  double output_bound = 0.0;    // bound on steady-state output error power
  double epsilon_used = 0.0;    // certificate eps the bounds were taken at
  double h2_original = 0.0;     // ||G||_H2 of the original
  double relative_error = 0.0;  // exact / h2_original
};

// Assembles the full chain for a certified pair; fields derived from eps
// are +inf when eps >= 1 (no finite certificate).
H2ErrorReport h2_error_report(const WeightedGraph& g,
                              const WeightedGraph& g_s, double eps);

}  // namespace netabs
