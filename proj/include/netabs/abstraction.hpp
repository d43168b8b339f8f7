#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netabs/graph.hpp"
#include "netabs/measures.hpp"
#include "netabs/spectral.hpp"

namespace netabs {

struct MeasureLoss {
  std::string name;
  double order_alpha = 0.0;
  double value_original = 0.0;
  double value_abstract = 0.0;
  double relative_loss = 0.0;
};

struct AbstractionResult {
  explicit AbstractionResult(WeightedGraph gs) : graph_s(std::move(gs)) {}

  WeightedGraph graph_s;        // the sparse abstraction
  long long m_samples = 0;      // number of i.i.d. link draws M
  int distinct_links = 0;       // |E_s|
  double d_requested = 0.0;     // link-density parameter d (M = ceil(d n / 2))
  double d_effective = 0.0;     // 2 |E_s| / n
  double epsilon_certified = 0.0;  // tightest sandwich eps*
  std::optional<double> epsilon_requested;  // set by the target-eps driver
  bool certified = false;       // eps* <= target (or eps* < 1 when no target)
  std::uint64_t seed = 0;       // caller's (master) seed
  int retries = 0;              // winning trial index / extra attempts used
  std::vector<MeasureLoss> loss_table;  // filled on demand
};

// Per-link sampling probabilities: pi(e) = w(e) r(e) / (n - 1), in the
// graph's canonical edge order.  Sums to one for a connected graph.
std::vector<double> sampling_distribution(const WeightedGraph& g,
                                          const Eigen::MatrixXd& resistances);
std::vector<double> sampling_distribution(const WeightedGraph& g);

// One sampling pass: M = ceil(d n / 2) i.i.d. draws from the resistance
// distribution; a link drawn c times gets weight c w(e) / (M pi(e)).
// The result carries the certified sandwich eps* against g.
AbstractionResult abstract(const WeightedGraph& g, double d,
                           std::uint64_t seed);

struct UntilOptions {
  double oversampling_c = 18.0;  // d = oversampling_c * ln(n) / eps^2
  int max_retries = 32;          // extra attempts beyond the first
  int threads = 1;               // trial-level parallelism
};

// Repeats the sampling pass with child seeds child_seed(master, t) for
// t = 0, 1, ... until eps* <= epsilon; the lowest certified trial index
// wins, so results are identical for any thread count.  If every attempt
// fails, returns the best (lowest eps*, then lowest index) with
// certified = false.  Requires epsilon in (1/sqrt(n), 1].
AbstractionResult abstract_until(const WeightedGraph& g, double epsilon,
                                 std::uint64_t master_seed,
                                 const UntilOptions& opt = {});

// Scales a certified abstraction by 1/(1 - eps*) so it bounds the original
// from above (original <= abstraction in the semidefinite order); every
// measure of the result is then at least as favorable as the original's.
WeightedGraph superiorize(const AbstractionResult& res,
                          const WeightedGraph& original);

// Lower bounds tying a measure's normalized index to the sparsity of the
// couplings: index * ||A||_l0 >= 2 rho* (n-1) and, for n > 2,
// index * ||A||_S01 >= 2 rho*, where rho* is the complete-graph index over
// the largest link weight.
struct TradeoffReport {
  double lhs_l0 = 0.0;
  double rhs_l0 = 0.0;
  double lhs_s01 = 0.0;
  double rhs_s01 = 0.0;
  bool holds = false;
};
TradeoffReport tradeoff_check(const MeasureDescriptor& m,
                              const WeightedGraph& g);

// A network split into a kept base and link-disjoint sparsifiable parts on
// a common node set.  Base may be empty; parts must be pairwise disjoint.
class PartitionedNetwork {
 public:
  PartitionedNetwork(WeightedGraph base, std::vector<WeightedGraph> parts);
  const WeightedGraph& base() const { return base_; }
  const std::vector<WeightedGraph>& parts() const { return parts_; }
  int n() const { return base_.n(); }
  Eigen::MatrixXd combined_laplacian() const;

 private:
  WeightedGraph base_;
  std::vector<WeightedGraph> parts_;
};

// Sparsifies only g1 (certifying on the range of its own Laplacian, which
// may be rank-deficient) while g0 is kept; reports both the local
// certificate and the closed-loop sandwich of L0 + L1_hat against L0 + L1.
struct LocalizedResult {
  AbstractionResult part;
  double epsilon_closed_loop = 0.0;
  double weight_total_part_original = 0.0;
  double weight_total_part_abstract = 0.0;
};
LocalizedResult abstract_localized(const WeightedGraph& g0,
                                   const WeightedGraph& g1, double epsilon,
                                   std::uint64_t master_seed,
                                   const UntilOptions& opt = {});

// Sparsifies every part independently (part i uses master child_seed(seed,
// i)); the global sandwich of base + sum of abstractions never exceeds the
// worst per-part certificate.
struct ParallelResult {
  std::vector<AbstractionResult> parts;
  double epsilon_global = 0.0;
  double epsilon_parts_max = 0.0;
  bool certified = false;
};
ParallelResult abstract_parallel(const PartitionedNetwork& net,
                                 double epsilon, std::uint64_t master_seed,
                                 const UntilOptions& opt = {});

// Computes original/abstract values and relative losses for each measure.
void fill_loss_table(AbstractionResult& res, const WeightedGraph& g,
                     const std::vector<MeasureDescriptor>& catalog);

}  // namespace netabs
