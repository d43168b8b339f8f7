#include "netabs/error_bounds.hpp"

#include <cmath>
#include <limits>

#include "netabs/measures.hpp"
#include "netabs/spectral.hpp"

namespace netabs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double trace_pinv(const Eigen::MatrixXd& L, const char* what) {
  LaplacianSpectrum spec = decompose(L);
  if (!spec.connected())
    throw numeric_error(std::string(what) + " must be connected");
  double s = 0.0;
  for (int k = 1; k < spec.n(); ++k) s += 1.0 / spec.lambdas[k];
  return s;
}

}  // namespace

double h2_error_exact(const Eigen::MatrixXd& L, const Eigen::MatrixXd& L_s) {
  if (L.rows() != L_s.rows() || L.cols() != L_s.cols())
    throw invalid_input("H2 distance needs equal-size Laplacians");
  const int n = static_cast<int>(L.rows());
  if (n < 2) throw invalid_input("need at least two nodes");
  const double tr = trace_pinv(L, "original Laplacian");
  const double tr_s = trace_pinv(L_s, "second Laplacian");
  // Shift by the averaging projector: A = L + J/n is positive definite and
  // the consensus transfer matrix is unchanged on the disagreement space.
  const Eigen::MatrixXd J = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  const Eigen::MatrixXd Mc = Eigen::MatrixXd::Identity(n, n) - J;
  const Eigen::MatrixXd X = sylvester_solve(L + J, L_s + J, Mc);
  const double cross = ((X + X.transpose()) * Mc).trace();
  const double sq = 0.5 * (tr + tr_s) - cross;
  return std::sqrt(std::max(0.0, sq));
}

double h2_error_exact(const WeightedGraph& g, const WeightedGraph& g_s) {
  if (g.n() != g_s.n()) throw invalid_input("node sets must match");
  return h2_error_exact(g.laplacian(), g_s.laplacian());
}

double h2_error_bound(const Eigen::MatrixXd& L, const Eigen::MatrixXd& L_s) {
  if (L.rows() != L_s.rows() || L.cols() != L_s.cols())
    throw invalid_input("H2 distance needs equal-size Laplacians");
  const double tr = trace_pinv(L, "original Laplacian");
  const double tr_s = trace_pinv(L_s, "second Laplacian");
  const double tr_sum = trace_pinv(L + L_s, "sum Laplacian");
  return std::sqrt(std::max(0.0, 0.5 * (tr + tr_s - 4.0 * tr_sum)));
}

double h2_error_bound(const WeightedGraph& g, const WeightedGraph& g_s) {
  if (g.n() != g_s.n()) throw invalid_input("node sets must match");
  return h2_error_bound(g.laplacian(), g_s.laplacian());
}

double relative_error_bound(double eps) {
  if (!(eps >= 0.0)) throw invalid_input("certificate must be nonnegative");
  if (eps >= 1.0)
    throw invalid_input("no finite relative bound for eps >= 1");
  return std::sqrt(eps * (4.0 - eps) / ((1.0 - eps) * (2.0 + eps)));
}

double output_error_bound(const Eigen::MatrixXd& L, double eps) {
  const double rel = relative_error_bound(eps);
  return rel * rel * 0.5 * trace_pinv(L, "original Laplacian");
}

double output_error_bound(const WeightedGraph& g, double eps) {
  return output_error_bound(g.laplacian(), eps);
}

H2ErrorReport h2_error_report(const WeightedGraph& g,
                              const WeightedGraph& g_s, double eps) {
  if (!(eps >= 0.0)) throw invalid_input("certificate must be nonnegative");
  H2ErrorReport rep;
  rep.epsilon_used = eps;
  const Eigen::MatrixXd L = g.laplacian();
  rep.h2_original = std::sqrt(0.5 * trace_pinv(L, "original Laplacian"));
  // The measured distance only needs both networks to exist; the bounds
  // derived from the certificate additionally need eps < 1.
  if (decompose(g_s).connected()) {
    const Eigen::MatrixXd Ls = g_s.laplacian();
    rep.exact = h2_error_exact(L, Ls);
    rep.trace_bound = h2_error_bound(L, Ls);
    rep.relative_error = rep.exact / rep.h2_original;
  } else {
    rep.exact = kInf;
    rep.trace_bound = kInf;
    rep.relative_error = kInf;
  }
  if (eps < 1.0) {
    rep.relative_bound = relative_error_bound(eps);
    rep.relative_bound_absolute = rep.relative_bound * rep.h2_original;
    rep.output_bound = output_error_bound(L, eps);
  } else {
    rep.relative_bound = kInf;
    rep.relative_bound_absolute = kInf;
    rep.output_bound = kInf;
  }
  return rep;
}

}  // namespace netabs
