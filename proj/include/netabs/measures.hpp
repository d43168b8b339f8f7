#pragma once

#include <functional>
#include <string>
#include <vector>

#include "netabs/graph.hpp"
#include "netabs/spectral.hpp"

namespace netabs {

// A systemic performance measure: positive, monotone decreasing and convex
// in the Laplacian order, with scaling rho(kappa L) = kappa^-alpha rho(L).
// `eval` computes the raw value; `log_eval`, when set, computes log(value)
// stably (used for products that would underflow, e.g. the volume measure).
struct MeasureDescriptor {
  std::string name;  // canonical "kind" or "kind:param" string
  double order_alpha = 1.0;
  std::function<double(const WeightedGraph&, const LaplacianSpectrum&)> eval;
  std::function<double(const WeightedGraph&, const LaplacianSpectrum&)> log_eval =
      nullptr;
  // When set, returns a copy of this descriptor whose graph-dependent
  // parameters are frozen against a reference graph (see pin_parameters).
  std::function<MeasureDescriptor(const WeightedGraph&,
                                  const LaplacianSpectrum&)> pin = nullptr;
};

// Spectral forms (all require a connected spectrum and throw numeric_error
// otherwise; sums run over the n-1 nonzero Laplacian eigenvalues).
double zeta(double q, const LaplacianSpectrum& spec);      // (sum lambda^-q)^(1/q)
double h2_norm(const LaplacianSpectrum& spec);             // sqrt(zeta_1/2)
double hinf_norm(const LaplacianSpectrum& spec);           // 1/lambda_2
double hankel_norm(const LaplacianSpectrum& spec);         // 1/(2 lambda_2)
// Entropy functional at absolute bound gamma; returns +inf when
// gamma < 1/lambda_2 (the bound is not achievable).
double gamma_entropy(double gamma, const LaplacianSpectrum& spec);
double hp_norm(double p, const LaplacianSpectrum& spec);   // alpha0 * zeta_{p-1}^((p-1)/p)
double hp_alpha0(double p);
double second_order_h2(double beta, const LaplacianSpectrum& spec);  // Theta_2

// Degree/weight forms (no spectrum needed).
double local_deviation_1(const WeightedGraph& g);                  // 1/2 sum 1/d_i
double local_deviation_2(const WeightedGraph& g, double beta);     // 1/(2 beta) sum 1/d_i^2
double total_weight_inverse(const WeightedGraph& g);               // 1 / sum w

double uncertainty_volume(const LaplacianSpectrum& spec);          // prod 1/(2 lambda)
double log_uncertainty_volume(const LaplacianSpectrum& spec);
double partial_zeta(int k, const LaplacianSpectrum& spec);         // k largest lambda^-1

// Descriptor names: zeta:q, h2, hinf, hankel, gamma:c, hp:p, locdev1,
// locdev2:beta, theta2:beta, uvol, xi, partialzeta:k.  gamma:c is
// spectrum-relative: it evaluates the entropy at gamma = c / lambda_2 of the
// graph under evaluation, which restores exact order-1 scaling (an absolute
// gamma does not scale homogeneously).  partialzeta's k defaults to
// ceil(n/10).  `n_nodes` resolves size-dependent defaults and validates k.
MeasureDescriptor parse_measure(const std::string& name, int n_nodes);
std::vector<MeasureDescriptor> default_catalog(int n_nodes);

// Freeze any graph-dependent parameters of `m` against a reference graph;
// identity for fixed-parameter measures.  Only the entropy measure has such
// a parameter: gamma:c re-calibrates gamma = c/lambda_2 on every input, which
// gives exact order-1 scaling but lets the re-calibration offset the Loewner
// order relation by a second-order amount on rare instances.  Pinning yields
// the fixed-gamma evaluator, for which monotonicity under edge addition and
// convexity hold exactly; use it when comparing related graphs at one gamma.
MeasureDescriptor pin_parameters(const MeasureDescriptor& m,
                                 const WeightedGraph& ref,
                                 const LaplacianSpectrum& ref_spec);

// Catalog evaluation: numeric failures (disconnected abstraction, zero
// degree) surface as +inf rather than an exception so loss tables can
// always be produced.
double evaluate(const MeasureDescriptor& m, const WeightedGraph& g,
                const LaplacianSpectrum& spec);
// Scale-linear index: value^(1/alpha); order -1 in the Laplacian.
double normalized_index(const MeasureDescriptor& m, const WeightedGraph& g,
                        const LaplacianSpectrum& spec);
double relative_loss(const MeasureDescriptor& m, const WeightedGraph& g,
                     const WeightedGraph& g_s);
double relative_loss(const MeasureDescriptor& m, const WeightedGraph& g,
                     const LaplacianSpectrum& sg, const WeightedGraph& g_s,
                     const LaplacianSpectrum& sgs);

}  // namespace netabs
