#include "netabs/abstraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <utility>

#include "netabs/rng.hpp"
#include "parallel.hpp"

namespace netabs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr long long kMaxSamples = 100'000'000;

// Everything reusable across repeated sampling passes on one original.
struct SamplingContext {
  const WeightedGraph* g = nullptr;
  LaplacianSpectrum spec;      // of the reference Laplacian for certification
  int cert_rank = 0;           // positive eigenpairs used for the sandwich
  std::vector<double> pi;      // per-link draw probabilities
  std::vector<double> cum;     // cumulative sums of pi
};

std::vector<double> cumulative(const std::vector<double>& pi) {
  std::vector<double> cum(pi.size());
  double run = 0.0;
  for (size_t k = 0; k < pi.size(); ++k) {
    run += pi[k];
    cum[k] = run;
  }
  return cum;
}

// Context for a connected graph: certification against all n-1 nonzero
// eigenpairs, probabilities w(e) r(e) / (n - 1).
SamplingContext full_context(const WeightedGraph& g) {
  SamplingContext ctx;
  ctx.g = &g;
  ctx.spec = decompose(g);
  if (!ctx.spec.connected())
    throw numeric_error("abstraction needs a connected graph");
  ctx.cert_rank = g.n() - 1;
  const Eigen::MatrixXd r =
      effective_resistances_from_pinv(pseudoinverse(ctx.spec));
  ctx.pi = sampling_distribution(g, r);
  ctx.cum = cumulative(ctx.pi);
  return ctx;
}

// Context for a possibly rank-deficient part: certification restricted to
// the range of its own Laplacian, probabilities normalized over the part.
SamplingContext part_context(const WeightedGraph& g) {
  SamplingContext ctx;
  ctx.g = &g;
  if (g.m() < 1) throw invalid_input("nothing to sparsify: part has no links");
  ctx.spec = decompose(g);
  const double cutoff = kConnectivityRel *
                        std::max(ctx.spec.lambdas.cwiseAbs().maxCoeff(), 0.0);
  ctx.cert_rank = 0;
  for (int k = 0; k < ctx.spec.n(); ++k)
    if (ctx.spec.lambdas[k] > cutoff) ++ctx.cert_rank;
  if (ctx.cert_rank == 0) throw numeric_error("part Laplacian is zero");
  const Eigen::MatrixXd r =
      effective_resistances_from_pinv(pseudoinverse(ctx.spec));
  ctx.pi.reserve(g.m());
  double total = 0.0;
  for (const Edge& e : g.edges()) {
    const double p = e.w * r(e.i, e.j);
    ctx.pi.push_back(p);
    total += p;
  }
  for (double& p : ctx.pi) p /= total;  // sums to rank exactly; normalize
  ctx.cum = cumulative(ctx.pi);
  return ctx;
}

// mu-range of the candidate against the context's reference eigenpairs.
double certify(const SamplingContext& ctx, const Eigen::MatrixXd& L_s) {
  const int n = ctx.spec.n();
  const int rank = ctx.cert_rank;
  const Eigen::MatrixXd U = ctx.spec.vectors.rightCols(rank);
  Eigen::VectorXd s(rank);
  for (int k = 0; k < rank; ++k)
    s[k] = 1.0 / std::sqrt(ctx.spec.lambdas[n - rank + k]);
  Eigen::MatrixXd B = U.transpose() * L_s * U;
  for (int a = 0; a < rank; ++a)
    for (int b = 0; b < rank; ++b) B(a, b) *= s[a] * s[b];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (B + B.transpose()), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numeric_error("certification eigensolve failed");
  const double lo = es.eigenvalues()[0];
  const double hi = es.eigenvalues()[rank - 1];
  return std::max(0.0, std::max(1.0 - lo, hi - 1.0));
}

AbstractionResult sample_once(const SamplingContext& ctx, double d,
                              std::uint64_t seed) {
  const WeightedGraph& g = *ctx.g;
  const int n = g.n();
  const long long M =
      static_cast<long long>(std::ceil(d * static_cast<double>(n) / 2.0));
  if (M < 1) throw invalid_input("link density must be positive");
  if (M > kMaxSamples)
    throw invalid_input("link density asks for more than " +
                        std::to_string(kMaxSamples) + " draws");

  std::vector<long long> counts(g.m(), 0);
  Rng rng(seed);
  const double total = ctx.cum.back();
  for (long long t = 0; t < M; ++t) {
    const double u = rng.uniform() * total;
    const size_t idx =
        std::upper_bound(ctx.cum.begin(), ctx.cum.end(), u) - ctx.cum.begin();
    ++counts[std::min(idx, ctx.cum.size() - 1)];
  }

  std::vector<Edge> kept;
  for (int k = 0; k < g.m(); ++k) {
    if (counts[k] == 0) continue;
    const Edge& e = g.edges()[k];
    kept.push_back(
        {e.i, e.j,
         static_cast<double>(counts[k]) * e.w /
             (static_cast<double>(M) * ctx.pi[k])});
  }

  AbstractionResult res{WeightedGraph(n, std::move(kept))};
  res.m_samples = M;
  res.distinct_links = res.graph_s.m();
  res.d_requested = d;
  res.d_effective = 2.0 * res.distinct_links / static_cast<double>(n);
  res.seed = seed;
  res.epsilon_certified = certify(ctx, res.graph_s.laplacian());
  res.certified = res.epsilon_certified < 1.0;
  return res;
}

void check_epsilon_range(double epsilon, int n) {
  const double lo = 1.0 / std::sqrt(static_cast<double>(n));
  if (!(epsilon > lo) || !(epsilon <= 1.0))
    throw invalid_input("epsilon must lie in (1/sqrt(n), 1] = (" +
                        std::to_string(lo) + ", 1]");
}

// Repeated passes with child seeds; the lowest certified trial index wins
// (identical for any thread count), else the best attempt, flagged.
AbstractionResult run_until(const SamplingContext& ctx, double epsilon,
                            std::uint64_t master, const UntilOptions& opt) {
  const int n = ctx.g->n();
  check_epsilon_range(epsilon, n);
  if (!(opt.oversampling_c > 0.0))
    throw invalid_input("oversampling constant must be positive");
  if (opt.max_retries < 0) throw invalid_input("retries must be >= 0");
  const double d =
      opt.oversampling_c * std::log(static_cast<double>(n)) /
      (epsilon * epsilon);
  const int attempts = opt.max_retries + 1;
  const int threads = std::clamp(opt.threads, 1, 256);

  std::optional<AbstractionResult> winner;
  int winner_index = -1;
  std::optional<AbstractionResult> best;
  int best_index = -1;

  std::vector<std::optional<AbstractionResult>> slots(attempts);
  for (int base = 0; base < attempts && !winner; base += threads) {
    const int block = std::min(threads, attempts - base);
    detail::parallel_for_indexed(block, threads, [&](int k) {
      slots[base + k] = sample_once(ctx, d, child_seed(master, base + k));
    });
    for (int k = 0; k < block; ++k) {
      const int t = base + k;
      AbstractionResult& r = *slots[t];
      if (!best || r.epsilon_certified < best->epsilon_certified) {
        best = r;
        best_index = t;
      }
      if (r.epsilon_certified <= epsilon) {
        winner = std::move(slots[t]);
        winner_index = t;
        break;
      }
    }
  }

  AbstractionResult res = winner ? std::move(*winner) : std::move(*best);
  res.epsilon_requested = epsilon;
  res.certified = winner.has_value();
  res.retries = winner ? winner_index : opt.max_retries;
  res.seed = master;
  (void)best_index;
  return res;
}

}  // namespace

std::vector<double> sampling_distribution(const WeightedGraph& g,
                                          const Eigen::MatrixXd& r) {
  if (r.rows() != g.n() || r.cols() != g.n())
    throw invalid_input("resistance matrix size mismatch");
  if (g.n() < 2) throw invalid_input("need at least two nodes");
  std::vector<double> pi;
  pi.reserve(g.m());
  const double denom = static_cast<double>(g.n() - 1);
  for (const Edge& e : g.edges()) pi.push_back(e.w * r(e.i, e.j) / denom);
  return pi;
}

std::vector<double> sampling_distribution(const WeightedGraph& g) {
  return sampling_distribution(g, effective_resistances(g));
}

AbstractionResult abstract(const WeightedGraph& g, double d,
                           std::uint64_t seed) {
  if (!(d > 0.0) || !std::isfinite(d))
    throw invalid_input("link density must be positive and finite");
  return sample_once(full_context(g), d, seed);
}

AbstractionResult abstract_until(const WeightedGraph& g, double epsilon,
                                 std::uint64_t master_seed,
                                 const UntilOptions& opt) {
  return run_until(full_context(g), epsilon, master_seed, opt);
}

WeightedGraph superiorize(const AbstractionResult& res,
                          const WeightedGraph& original) {
  const double eps = res.epsilon_certified;
  if (!(eps < 1.0))
    throw invalid_input(
        "cannot superiorize: no finite certificate (eps >= 1)");
  WeightedGraph up = res.graph_s.scaled(1.0 / (1.0 - eps));
  // The scaled abstraction must dominate the original; verify the lower
  // edge of the sandwich to guard against degraded certificates.
  LaplacianSpectrum spec = decompose(original);
  if (!spec.connected())
    throw numeric_error("superiorize needs a connected original");
  const Eigen::MatrixXd B = up.laplacian();
  const int rank = original.n() - 1;
  const Eigen::MatrixXd U = spec.vectors.rightCols(rank);
  Eigen::VectorXd s(rank);
  for (int k = 0; k < rank; ++k)
    s[k] = 1.0 / std::sqrt(spec.lambdas[spec.n() - rank + k]);
  Eigen::MatrixXd Bm = U.transpose() * B * U;
  for (int a = 0; a < rank; ++a)
    for (int b = 0; b < rank; ++b) Bm(a, b) *= s[a] * s[b];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (Bm + Bm.transpose()), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success || es.eigenvalues()[0] < 1.0 - 1e-9)
    throw numeric_error("superiorized graph fails to dominate the original");
  return up;
}

static TradeoffReport tradeoffs_impl(const MeasureDescriptor& m,
                                     const WeightedGraph& g,
                                     const LaplacianSpectrum& spec) {
  const int n = g.n();
  const double idx = normalized_index(m, g, spec);
  if (!std::isfinite(idx))
    throw numeric_error("measure value is not finite on this graph");
  double w_max = 0.0;
  for (const Edge& e : g.edges()) w_max = std::max(w_max, e.w);
  if (w_max <= 0.0) throw invalid_input("graph has no links");
  const WeightedGraph kn = complete_graph(n);
  const double idx_kn = normalized_index(m, kn, decompose(kn));
  const double rho_star = idx_kn / w_max;
  TradeoffReport rep;
  rep.lhs_l0 = idx * g.sparsity_l0();
  rep.rhs_l0 = 2.0 * rho_star * (n - 1);
  rep.lhs_s01 = idx * g.sparsity_s01();
  rep.rhs_s01 = 2.0 * rho_star;
  const double tol = 1.0 - 1e-9;
  rep.holds = rep.lhs_l0 >= rep.rhs_l0 * tol &&
              (n <= 2 || rep.lhs_s01 >= rep.rhs_s01 * tol);
  return rep;
}

TradeoffReport tradeoff_check(const MeasureDescriptor& m,
                              const WeightedGraph& g) {
  LaplacianSpectrum spec = decompose(g);
  if (!spec.connected())
    throw numeric_error("sparsity trade-offs need a connected graph");
  return tradeoffs_impl(m, g, spec);
}

PartitionedNetwork::PartitionedNetwork(WeightedGraph base,
                                       std::vector<WeightedGraph> parts)
    : base_(std::move(base)), parts_(std::move(parts)) {
  if (parts_.empty()) throw invalid_input("need at least one part");
  std::set<std::pair<int, int>> seen;
  for (const WeightedGraph& p : parts_) {
    if (p.n() != base_.n())
      throw invalid_input("all parts must share the base's node set");
    if (p.m() < 1) throw invalid_input("parts must have at least one link");
    for (const Edge& e : p.edges())
      if (!seen.insert({e.i, e.j}).second)
        throw invalid_input("parts overlap on link {" + std::to_string(e.i) +
                            ", " + std::to_string(e.j) + "}");
  }
}

Eigen::MatrixXd PartitionedNetwork::combined_laplacian() const {
  Eigen::MatrixXd L = base_.laplacian();
  for (const WeightedGraph& p : parts_) L += p.laplacian();
  return L;
}

namespace {

AbstractionResult identity_part(const WeightedGraph& g1, double epsilon,
                                std::uint64_t master) {
  AbstractionResult res{g1};
  res.m_samples = 0;
  res.distinct_links = g1.m();
  res.d_requested = 0.0;
  res.d_effective = 2.0 * g1.m() / static_cast<double>(g1.n());
  res.epsilon_certified = 0.0;
  res.epsilon_requested = epsilon;
  res.certified = true;
  res.seed = master;
  res.retries = 0;
  return res;
}

}  // namespace

LocalizedResult abstract_localized(const WeightedGraph& g0,
                                   const WeightedGraph& g1, double epsilon,
                                   std::uint64_t master_seed,
                                   const UntilOptions& opt) {
  if (g0.n() != g1.n())
    throw invalid_input("kept part and sparsified part must share nodes");
  if (!(epsilon >= 0.0)) throw invalid_input("epsilon must be nonnegative");
  const Eigen::MatrixXd L_full = g0.laplacian() + g1.laplacian();
  if (!decompose(L_full).connected())
    throw numeric_error("combined network must be connected");

  AbstractionResult part =
      epsilon == 0.0 ? identity_part(g1, epsilon, master_seed)
                     : run_until(part_context(g1), epsilon, master_seed, opt);
  const double closed_loop =
      epsilon == 0.0
          ? 0.0
          : loewner_epsilon(L_full, g0.laplacian() + part.graph_s.laplacian());
  const double w_abstract = part.graph_s.total_weight();
  return LocalizedResult{std::move(part), closed_loop, g1.total_weight(),
                         w_abstract};
}

ParallelResult abstract_parallel(const PartitionedNetwork& net,
                                 double epsilon, std::uint64_t master_seed,
                                 const UntilOptions& opt) {
  if (!(epsilon >= 0.0)) throw invalid_input("epsilon must be nonnegative");
  const Eigen::MatrixXd L_full = net.combined_laplacian();
  if (!decompose(L_full).connected())
    throw numeric_error("combined network must be connected");

  const int p = static_cast<int>(net.parts().size());
  ParallelResult out;
  out.parts.resize(p, AbstractionResult{net.parts()[0]});
  const int threads = std::clamp(opt.threads, 1, 256);
  detail::parallel_for_indexed(p, threads, [&](int i) {
    const std::uint64_t part_master = child_seed(master_seed, i);
    if (epsilon == 0.0) {
      out.parts[i] = identity_part(net.parts()[i], epsilon, part_master);
    } else {
      UntilOptions part_opt = opt;
      part_opt.threads = 1;  // parallelism is across parts here
      out.parts[i] =
          run_until(part_context(net.parts()[i]), epsilon, part_master,
                    part_opt);
    }
  });

  Eigen::MatrixXd L_hat = net.base().laplacian();
  out.epsilon_parts_max = 0.0;
  out.certified = true;
  for (const AbstractionResult& r : out.parts) {
    L_hat += r.graph_s.laplacian();
    out.epsilon_parts_max =
        std::max(out.epsilon_parts_max, r.epsilon_certified);
    out.certified = out.certified && r.certified;
  }
  out.epsilon_global = loewner_epsilon(L_full, L_hat);
  return out;
}

void fill_loss_table(AbstractionResult& res, const WeightedGraph& g,
                     const std::vector<MeasureDescriptor>& catalog) {
  const LaplacianSpectrum sg = decompose(g);
  const LaplacianSpectrum ss = decompose(res.graph_s);
  res.loss_table.clear();
  res.loss_table.reserve(catalog.size());
  for (const MeasureDescriptor& m : catalog) {
    MeasureLoss row;
    row.name = m.name;
    row.order_alpha = m.order_alpha;
    row.value_original = evaluate(m, g, sg);
    row.value_abstract = evaluate(m, res.graph_s, ss);
    row.relative_loss = relative_loss(m, g, sg, res.graph_s, ss);
    res.loss_table.push_back(std::move(row));
  }
}

}  // namespace netabs
