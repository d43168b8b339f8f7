#include <cmath>
#include <cstdint>
#include <limits>

#include "doctest.h"
#include "netabs/abstraction.hpp"
#include "netabs/error_bounds.hpp"
#include "netabs/errors.hpp"
#include "netabs/graph.hpp"
#include "netabs/measures.hpp"
#include "netabs/spectral.hpp"
#include "oracles.hpp"

using namespace netabs;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

WeightedGraph random_connected(int n, int m, std::uint64_t seed) {
  for (std::uint64_t s = seed;; ++s) {
    auto g = gnm_random(n, m, s);
    if (g.is_connected()) return g;
  }
}

}  // namespace

TEST_CASE("exact noise distance between a triangle and its double") {
  const auto g = complete_graph(3);
  const auto g2 = g.scaled(2.0);
  // Modes at 3 and 6: err^2 = sum (1/(2l) + 1/(2ls) - 2/(l+ls)) over pairs
  // = 2 * (1/6 + 1/12 - 2/9) = 1/18.
  CHECK(h2_error_exact(g, g2) ==
        doctest::Approx(1.0 / std::sqrt(18.0)).epsilon(1e-10));
  CHECK(h2_error_exact(g, g) == doctest::Approx(0.0));
  // Symmetric in its arguments.
  CHECK(h2_error_exact(g2, g) ==
        doctest::Approx(h2_error_exact(g, g2)).epsilon(1e-12));
}

TEST_CASE("exact noise distance for scaled pairs in closed form") {
  // For L_s = k L the per-mode distance is (1/(2l))(1 + 1/k - 4/(1+k)),
  // i.e. err^2 = h2^2 * (1 + 1/k - 4/(1+k)).
  for (double k : {0.5, 1.3, 2.0}) {
    const auto g = random_connected(12, 40, 1);
    const auto gs = g.scaled(k);
    const double h2 = h2_norm(decompose(g));
    const double factor = 1.0 + 1.0 / k - 4.0 / (1.0 + k);
    CHECK(h2_error_exact(g, gs) ==
          doctest::Approx(h2 * std::sqrt(factor)).epsilon(1e-9));
  }
}

TEST_CASE("exact noise distance matches the frequency quadrature oracle") {
  for (std::uint64_t seed : {2u, 3u}) {
    const auto g = random_connected(9, 22, seed);
    const auto res = abstract_until(g, 0.7, seed);
    const double exact = h2_error_exact(g, res.graph_s);
    const double quad = oracles::h2_error_quadrature(g.laplacian(),
                                                     res.graph_s.laplacian());
    CHECK(exact == doctest::Approx(quad).epsilon(1e-6));
  }
}

TEST_CASE("trace bound dominates the exact distance") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_connected(15 + static_cast<int>(seed), 60, seed);
    const auto res = abstract_until(g, 0.75, 100 + seed);
    const double exact = h2_error_exact(g, res.graph_s);
    const double bound = h2_error_bound(g, res.graph_s);
    CHECK(exact <= bound * (1.0 + 1e-9) + 1e-12);
  }
}

TEST_CASE("certificate-level relative bound has its closed form") {
  // sqrt(eps (4 - eps) / ((1 - eps)(2 + eps))) at eps = 0.5 is sqrt(1.4).
  CHECK(relative_error_bound(0.5) ==
        doctest::Approx(std::sqrt(1.4)).epsilon(1e-12));
  CHECK(relative_error_bound(0.5) ==
        doctest::Approx(1.1832159566199232).epsilon(1e-12));
  CHECK(relative_error_bound(0.0) == doctest::Approx(0.0));
  // Monotone increasing on [0, 1).
  double prev = 0.0;
  for (double e = 0.05; e < 0.95; e += 0.05) {
    const double v = relative_error_bound(e);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(relative_error_bound(1.0), invalid_input);
  CHECK_THROWS_AS(relative_error_bound(-0.1), invalid_input);
}

TEST_CASE("full bound chain holds on certified abstractions") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto g = random_connected(20, 90, 200 + seed);
    const auto res = abstract_until(g, 0.65, seed);
    REQUIRE(res.certified);
    const double eps = res.epsilon_certified;
    const auto rep = h2_error_report(g, res.graph_s, eps);
    // exact <= trace bound; relative error <= certificate-level bound.
    CHECK(rep.exact <= rep.trace_bound * (1.0 + 1e-9) + 1e-12);
    CHECK(rep.relative_error <= rep.relative_bound * (1.0 + 1e-9));
    CHECK(rep.relative_bound_absolute ==
          doctest::Approx(rep.relative_bound * rep.h2_original)
              .epsilon(1e-12));
    CHECK(rep.h2_original ==
          doctest::Approx(h2_norm(decompose(g))).epsilon(1e-12));
    CHECK(rep.relative_error ==
          doctest::Approx(rep.exact / rep.h2_original).epsilon(1e-12));
    CHECK(rep.epsilon_used == doctest::Approx(eps));
    // Output power bound = relative_bound^2 * h2^2.
    CHECK(rep.output_bound ==
          doctest::Approx(rep.relative_bound * rep.relative_bound *
                          rep.h2_original * rep.h2_original)
              .epsilon(1e-9));
  }
}

TEST_CASE("report degrades gracefully without a finite certificate") {
  const auto g = complete_graph(4);
  const auto gs = g.scaled(3.0);  // eps* = 2: no (0,1) certificate
  const auto rep = h2_error_report(g, gs, 2.0);
  CHECK(std::isfinite(rep.exact));
  CHECK(std::isfinite(rep.trace_bound));
  CHECK(rep.relative_bound == kInf);
  CHECK(rep.relative_bound_absolute == kInf);
  CHECK(rep.output_bound == kInf);
  CHECK(rep.epsilon_used == doctest::Approx(2.0));
}

TEST_CASE("output power bound scales with the original noise norm") {
  const auto g = random_connected(14, 50, 5);
  const double h2 = h2_norm(decompose(g));
  const double b = output_error_bound(g, 0.4);
  const double r = relative_error_bound(0.4);
  CHECK(b == doctest::Approx(r * r * h2 * h2).epsilon(1e-12));
}

TEST_CASE("distance computations reject mismatched or split inputs") {
  const auto g = complete_graph(4);
  const auto h = complete_graph(5);
  CHECK_THROWS_AS(h2_error_exact(g, h), invalid_input);
  const WeightedGraph split(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  CHECK_THROWS_AS(h2_error_exact(g, split), numeric_error);
  CHECK_THROWS_AS(h2_error_bound(g, split), numeric_error);
}
