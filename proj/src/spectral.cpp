#include "netabs/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "netabs/errors.hpp"

namespace netabs {

double LaplacianSpectrum::lambda2() const {
  if (n() < 2) throw numeric_error("spectrum needs at least two nodes");
  return lambdas[1];
}

double LaplacianSpectrum::lambda_max() const {
  if (n() < 1) throw numeric_error("empty spectrum");
  return lambdas[n() - 1];
}

bool LaplacianSpectrum::connected() const {
  if (n() < 2) return true;
  return lambda2() > kConnectivityRel * std::max(lambda_max(), 0.0) &&
         lambda2() > 0.0;
}

LaplacianSpectrum decompose(const Eigen::MatrixXd& L) {
  if (L.rows() != L.cols()) throw invalid_input("matrix must be square");
  const double scale = std::max(1.0, L.cwiseAbs().maxCoeff());
  if ((L - L.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw invalid_input("matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (L + L.transpose()));
  if (es.info() != Eigen::Success)
    throw numeric_error("eigendecomposition failed");
  LaplacianSpectrum spec;
  spec.lambdas = es.eigenvalues();
  spec.vectors = es.eigenvectors();
  // Deterministic sign: first component of modulus > 1e-12 made positive.
  for (int c = 0; c < spec.vectors.cols(); ++c) {
    for (int r = 0; r < spec.vectors.rows(); ++r) {
      const double v = spec.vectors(r, c);
      if (std::abs(v) > 1e-12) {
        if (v < 0.0) spec.vectors.col(c) = -spec.vectors.col(c);
        break;
      }
    }
  }
  return spec;
}

LaplacianSpectrum decompose(const WeightedGraph& g) {
  return decompose(g.laplacian());
}

Eigen::MatrixXd pseudoinverse(const LaplacianSpectrum& spec, double rel_tol) {
  const int n = spec.n();
  const double cutoff =
      rel_tol * std::max(spec.lambdas.cwiseAbs().maxCoeff(), 0.0);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double lam = spec.lambdas[k];
    if (lam > cutoff)
      out.noalias() +=
          (1.0 / lam) * spec.vectors.col(k) * spec.vectors.col(k).transpose();
  }
  return out;
}

Eigen::MatrixXd effective_resistances_from_pinv(const Eigen::MatrixXd& ldag) {
  const int n = static_cast<int>(ldag.rows());
  Eigen::MatrixXd r(n, n);
  for (int i = 0; i < n; ++i) {
    r(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      r(i, j) = ldag(i, i) + ldag(j, j) - 2.0 * ldag(i, j);
      r(j, i) = r(i, j);
    }
  }
  return r;
}

Eigen::MatrixXd effective_resistances(const WeightedGraph& g) {
  LaplacianSpectrum spec = decompose(g);
  if (!spec.connected())
    throw numeric_error("effective resistances need a connected graph");
  return effective_resistances_from_pinv(pseudoinverse(spec));
}

namespace {

// Eigenvalues of L_test pulled back through the positive eigenpairs of
// ref_spec: mu of B = S U' L_test U S.  Returns {mu_min, mu_max}.
std::pair<double, double> sandwich_range(const LaplacianSpectrum& ref_spec,
                                         const Eigen::MatrixXd& L_test,
                                         int rank) {
  const int n = ref_spec.n();
  const Eigen::MatrixXd U = ref_spec.vectors.rightCols(rank);
  Eigen::VectorXd s(rank);
  for (int k = 0; k < rank; ++k)
    s[k] = 1.0 / std::sqrt(ref_spec.lambdas[n - rank + k]);
  Eigen::MatrixXd B = U.transpose() * L_test * U;
  for (int a = 0; a < rank; ++a)
    for (int b = 0; b < rank; ++b) B(a, b) *= s[a] * s[b];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (B + B.transpose()), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numeric_error("sandwich eigensolve failed");
  return {es.eigenvalues()[0], es.eigenvalues()[rank - 1]};
}

double eps_from_range(double mu_min, double mu_max) {
  return std::max(0.0, std::max(1.0 - mu_min, mu_max - 1.0));
}

}  // namespace

double loewner_epsilon(const Eigen::MatrixXd& L, const Eigen::MatrixXd& L_s) {
  if (L.rows() != L_s.rows() || L.cols() != L_s.cols())
    throw invalid_input("sandwich comparison needs equal-size matrices");
  LaplacianSpectrum spec = decompose(L);
  if (spec.n() < 2) throw invalid_input("need at least two nodes");
  if (!spec.connected())
    throw numeric_error("reference Laplacian must be connected");
  auto [lo, hi] = sandwich_range(spec, L_s, spec.n() - 1);
  return eps_from_range(lo, hi);
}

double loewner_epsilon(const WeightedGraph& g, const WeightedGraph& g_s) {
  if (g.n() != g_s.n())
    throw invalid_input("sandwich comparison needs equal node sets");
  return loewner_epsilon(g.laplacian(), g_s.laplacian());
}

double loewner_epsilon_on_range(const Eigen::MatrixXd& L_ref,
                                const Eigen::MatrixXd& L_test) {
  if (L_ref.rows() != L_test.rows() || L_ref.cols() != L_test.cols())
    throw invalid_input("sandwich comparison needs equal-size matrices");
  LaplacianSpectrum spec = decompose(L_ref);
  const int n = spec.n();
  const double cutoff =
      kConnectivityRel * std::max(spec.lambdas.cwiseAbs().maxCoeff(), 0.0);
  int rank = 0;
  for (int k = 0; k < n; ++k)
    if (spec.lambdas[k] > cutoff) ++rank;
  if (rank == 0) throw numeric_error("reference Laplacian is zero");
  // L_test must vanish on the kernel of L_ref, otherwise no finite sandwich.
  const double leak_tol =
      1e-8 * std::max(1.0, L_test.cwiseAbs().maxCoeff());
  for (int k = 0; k < n - rank; ++k) {
    if ((L_test * spec.vectors.col(k)).cwiseAbs().maxCoeff() > leak_tol)
      return std::numeric_limits<double>::infinity();
  }
  auto [lo, hi] = sandwich_range(spec, L_test, rank);
  return eps_from_range(lo, hi);
}

Eigen::MatrixXd sylvester_solve(const Eigen::MatrixXd& A,
                                const Eigen::MatrixXd& B,
                                const Eigen::MatrixXd& C) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || C.rows() != A.rows() ||
      C.cols() != B.rows())
    throw invalid_input("sylvester_solve dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ea(0.5 * (A + A.transpose()));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(0.5 * (B + B.transpose()));
  if (ea.info() != Eigen::Success || eb.info() != Eigen::Success)
    throw numeric_error("sylvester_solve eigensolve failed");
  const Eigen::VectorXd a = ea.eigenvalues();
  const Eigen::VectorXd b = eb.eigenvalues();
  Eigen::MatrixXd Ct = ea.eigenvectors().transpose() * C * eb.eigenvectors();
  for (int i = 0; i < Ct.rows(); ++i)
    for (int j = 0; j < Ct.cols(); ++j) {
      const double denom = a[i] + b[j];
      if (denom <= 0.0)
        throw numeric_error("sylvester_solve needs positive definite blocks");
      Ct(i, j) /= denom;
    }
  Eigen::MatrixXd X =
      ea.eigenvectors() * Ct * eb.eigenvectors().transpose();
  const double cn = C.norm();
  const double resid = (A * X + X * B - C).norm();
  if (resid > 1e-8 * std::max(cn, 1e-300))
    throw numeric_error("sylvester_solve residual too large");
  return X;
}

}  // namespace netabs
