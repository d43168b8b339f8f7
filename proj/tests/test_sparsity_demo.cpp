#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "netabs/errors.hpp"
#include "netabs/graph.hpp"
#include "netabs/sparsity_demo.hpp"
#include "netabs/spectral.hpp"

using namespace netabs;

namespace {

double zeta1_of(const WeightedGraph& g) {
  const auto spec = decompose(g);
  double s = 0.0;
  for (int k = 1; k < spec.n(); ++k) s += 1.0 / spec.lambdas(k);
  return s;
}

}  // namespace

TEST_CASE("soft-penalty design has its closed-form dense optimum") {
  RegularizationInstance inst;
  inst.n = 10;
  inst.w0 = 1.0;
  inst.gamma = 2.0;
  const L1Optimum opt = l1_optimum(inst);
  CHECK(opt.w_remaining == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(opt.cost == doctest::Approx(18.0).epsilon(1e-12));
  CHECK(opt.sparsity_l0 == 90);  // every ordered pair keeps a coupling
  // The reported cost is the objective evaluated at the reported weight.
  CHECK(l1_cost_at(inst, opt.w_remaining) ==
        doctest::Approx(opt.cost).epsilon(1e-12));
}

TEST_CASE("the reported weight is the exact minimizer of the cost") {
  RegularizationInstance inst;
  inst.n = 7;
  inst.w0 = 2.0;
  inst.gamma = 0.9;
  const L1Optimum opt = l1_optimum(inst);
  const double c0 = l1_cost_at(inst, opt.w_remaining);
  // AM-GM floor: (n-1)(1/(2 lam) + gamma lam) >= (n-1) sqrt(2 gamma).
  CHECK(c0 == doctest::Approx((inst.n - 1) * std::sqrt(2.0 * inst.gamma))
                  .epsilon(1e-12));
  for (double f : {0.2, 0.5, 0.9, 0.99, 1.01, 1.3, 4.0}) {
    if (f == 1.0) continue;
    CHECK(l1_cost_at(inst, f * opt.w_remaining) > c0);
  }
}

TEST_CASE("cost agrees with the objective on the realized network") {
  // Evaluate the same objective through an explicit graph: noise power
  // tr(pinv L)/2 plus gamma times the total coupling strength tr(L).
  RegularizationInstance inst;
  inst.n = 8;
  inst.w0 = 1.0;
  inst.gamma = 1.4;
  const L1Optimum opt = l1_optimum(inst);
  for (double w : {opt.w_remaining, 0.1, 0.37}) {
    const auto g = complete_graph(inst.n, w);
    const double h2_sq = 0.5 * zeta1_of(g);
    const double penalty = inst.gamma * g.degrees().sum();
    CHECK(l1_cost_at(inst, w) ==
          doctest::Approx(h2_sq + penalty).epsilon(1e-10));
  }
}

TEST_CASE("hard-penalty tree designs approach an unattained floor") {
  RegularizationInstance inst;
  inst.n = 10;
  inst.w0 = 1.0;
  inst.gamma = 2.0;
  const double floor = l0_lower_bound(inst);
  CHECK(floor == doctest::Approx(18.0).epsilon(1e-12));
  // Strictly above the floor at every scale, strictly decreasing in scale.
  double prev = std::numeric_limits<double>::infinity();
  for (double s : {0.5, 1.0, 4.0, 30.0, 1e3, 1e6}) {
    const double c = l0_tree_cost(inst, s);
    CHECK(c > floor);
    CHECK(c < prev);
    prev = c;
  }
  // The gap is exactly the residual noise power of the star witness.
  const double s = 3.0;
  const auto star = star_graph(inst.n, s);
  CHECK(l0_tree_cost(inst, s) - floor ==
        doctest::Approx(0.5 * zeta1_of(star)).epsilon(1e-10));
  // At large scale the cost is within any tolerance of the floor.
  CHECK(l0_tree_cost(inst, 1e9) - floor < 1e-8);
  // A tree keeps 2(n-1) directed couplings versus n(n-1) for the dense
  // optimum: the hard penalty buys a factor n/2 in sparsity.
  CHECK(star.sparsity_l0() == 18);
  CHECK(l1_optimum(inst).sparsity_l0 == 90);
}

TEST_CASE("demo instance: both penalties meet at the same cost") {
  // gamma = 2 makes sqrt(2 gamma) = gamma, so the soft-penalty optimum
  // lands exactly on the hard-penalty floor.
  RegularizationInstance inst;
  inst.n = 10;
  inst.w0 = 1.0;
  inst.gamma = 2.0;
  CHECK(std::abs(l1_optimum(inst).cost - l0_lower_bound(inst)) <= 1e-12);
}

TEST_CASE("weight-design inputs are validated") {
  RegularizationInstance inst;
  inst.n = 10;
  inst.w0 = 1.0;
  inst.gamma = 2.0;
  SUBCASE("degenerate instances") {
    RegularizationInstance bad = inst;
    bad.n = 1;
    CHECK_THROWS_AS(l1_optimum(bad), invalid_input);
    bad = inst;
    bad.w0 = 0.0;
    CHECK_THROWS_AS(l1_optimum(bad), invalid_input);
    bad = inst;
    bad.gamma = -2.0;
    CHECK_THROWS_AS(l0_lower_bound(bad), invalid_input);
  }
  SUBCASE("penalty too weak to sparsify") {
    RegularizationInstance weak = inst;
    const double floor_gamma = 1.0 / (8.0 * 10 * 10 * 1.0 * 1.0);
    weak.gamma = floor_gamma;  // boundary itself is rejected
    CHECK_THROWS_AS(l1_optimum(weak), invalid_input);
    weak.gamma = floor_gamma * 1.01;
    CHECK_NOTHROW(l1_optimum(weak));
    // The weak-penalty guard only protects the optimum claim; the cost
    // evaluator itself stays available.
    weak.gamma = floor_gamma * 0.5;
    CHECK_NOTHROW(l1_cost_at(weak, 1.0));
  }
  SUBCASE("evaluator argument checks") {
    CHECK_THROWS_AS(l1_cost_at(inst, 0.0), invalid_input);
    CHECK_THROWS_AS(l1_cost_at(inst, -1.0), invalid_input);
    CHECK_THROWS_AS(l0_tree_cost(inst, 0.0), invalid_input);
  }
}
