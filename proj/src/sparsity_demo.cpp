#include "netabs/sparsity_demo.hpp"

#include <cmath>
#include <string>

#include "netabs/errors.hpp"

namespace netabs {

namespace {

void validate(const RegularizationInstance& inst) {
  if (inst.n < 2) throw invalid_input("instance needs n >= 2");
  if (!(inst.w0 > 0.0) || !std::isfinite(inst.w0))
    throw invalid_input("initial weight must be positive");
  if (!(inst.gamma > 0.0) || !std::isfinite(inst.gamma))
    throw invalid_input("regularization strength must be positive");
}

}  // namespace

L1Optimum l1_optimum(const RegularizationInstance& inst) {
  validate(inst);
  const double floor_gamma =
      1.0 / (8.0 * inst.n * inst.n * inst.w0 * inst.w0);
  if (!(inst.gamma > floor_gamma))
    throw invalid_input(
        "regularization too weak to sparsify: need gamma > " +
        std::to_string(floor_gamma));
  L1Optimum out;
  // Per-mode objective 1/(2 lambda) + gamma lambda is minimized at
  // lambda = 1/sqrt(2 gamma); a uniform complete graph with w = lambda/n
  // realizes all n-1 nonzero eigenvalues there simultaneously.
  out.w_remaining = 1.0 / (inst.n * std::sqrt(2.0 * inst.gamma));
  out.cost = (inst.n - 1) * std::sqrt(2.0 * inst.gamma);
  out.sparsity_l0 = inst.n * (inst.n - 1);
  return out;
}

double l1_cost_at(const RegularizationInstance& inst, double w_uniform) {
  validate(inst);
  if (!(w_uniform > 0.0)) throw invalid_input("weight must be positive");
  const double lam = inst.n * w_uniform;  // all nonzero eigenvalues
  return (inst.n - 1) * (0.5 / lam + inst.gamma * lam);
}

double l0_tree_cost(const RegularizationInstance& inst, double scale) {
  validate(inst);
  if (!(scale > 0.0)) throw invalid_input("weight scale must be positive");
  // Star with uniform weight s: eigenvalues {0, s (x n-2), n s}.
  const double h2_sq =
      0.5 * ((inst.n - 2) / scale + 1.0 / (inst.n * scale));
  return h2_sq + inst.gamma * (inst.n - 1);
}

double l0_lower_bound(const RegularizationInstance& inst) {
  validate(inst);
  return inst.gamma * (inst.n - 1);
}

}  // namespace netabs
