#pragma once

namespace netabs {

// Weight-design instance: n nodes, all-to-all couplings available, initial
// uniform weight w0, regularization strength gamma trading H2 performance
// against coupling cost.
struct RegularizationInstance {
  int n = 0;
  double w0 = 1.0;
  double gamma = 1.0;
};

struct L1Optimum {
  double w_remaining = 0.0;  // optimal uniform link weight
  double cost = 0.0;         // optimal objective value
  int sparsity_l0 = 0;       // nonzero couplings at the optimum (all of them)
};

// Closed-form minimizer of the l1-regularized design
// J(w) = sum over nonzero modes [ 1/(2 lambda) + gamma lambda ]:
// the optimum stays complete with w = 1/(n sqrt(2 gamma)) and
// J = (n-1) sqrt(2 gamma).  Requires gamma > 1/(8 n^2 w0^2) (otherwise the
// penalty is too weak to pull weights below w0).
L1Optimum l1_optimum(const RegularizationInstance& inst);

// The same objective evaluated at an arbitrary uniform complete-graph
// weight (all nonzero eigenvalues equal n * w).
double l1_cost_at(const RegularizationInstance& inst, double w_uniform);

// l0-regularized design over spanning trees: cost of the star witness with
// uniform weight `scale`, J = zeta_1/2 + gamma (n-1); approaches the
// unattained infimum gamma (n-1) as scale grows.
double l0_tree_cost(const RegularizationInstance& inst, double scale);
double l0_lower_bound(const RegularizationInstance& inst);  // gamma (n-1)

}  // namespace netabs
