#pragma once

#include <Eigen/Dense>

#include "netabs/graph.hpp"

namespace netabs {

// A graph Laplacian is declared connected when lambda_2 exceeds this
// relative threshold times lambda_max.
inline constexpr double kConnectivityRel = 1e-8;

// Eigendecomposition of a symmetric PSD matrix (Laplacian), eigenvalues
// ascending.  Eigenvector signs are normalized (first component of modulus
// > 1e-12 made positive) so repeated runs agree bit-for-bit.
struct LaplacianSpectrum {
  Eigen::VectorXd lambdas;  // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns, sign-normalized

  int n() const { return static_cast<int>(lambdas.size()); }
  double lambda2() const;    // second-smallest eigenvalue
  double lambda_max() const;
  bool connected() const;    // lambda2 > kConnectivityRel * lambda_max
};

LaplacianSpectrum decompose(const Eigen::MatrixXd& L);
LaplacianSpectrum decompose(const WeightedGraph& g);

// Moore-Penrose pseudoinverse built from the spectrum; eigenvalues at or
// below rel_tol * lambda_max are treated as kernel.
Eigen::MatrixXd pseudoinverse(const LaplacianSpectrum& spec,
                              double rel_tol = kConnectivityRel);

// Pairwise effective resistances r(i,j) = l+_ii + l+_jj - 2 l+_ij as a
// symmetric n x n matrix (diagonal zero).  Requires a connected graph.
Eigen::MatrixXd effective_resistances(const WeightedGraph& g);
Eigen::MatrixXd effective_resistances_from_pinv(const Eigen::MatrixXd& ldag);

// Tightest eps with (1-eps) L <= L_s <= (1+eps) L in the semidefinite order
// on the agreement-free subspace: eps* = max(1 - mu_min, mu_max - 1) where
// mu are the eigenvalues of B = S U' L_s U S, U the nonzero eigenvectors of
// L and S = diag(lambda^-1/2).  L must be connected; a disconnected L_s
// yields eps* >= 1.
double loewner_epsilon(const Eigen::MatrixXd& L, const Eigen::MatrixXd& L_s);
double loewner_epsilon(const WeightedGraph& g, const WeightedGraph& g_s);

// Same comparison restricted to the range of L_ref (which may itself be
// rank-deficient, e.g. a subnetwork touching only part of the node set).
// Returns +inf when L_test does not vanish on the kernel of L_ref.
double loewner_epsilon_on_range(const Eigen::MatrixXd& L_ref,
                                const Eigen::MatrixXd& L_test);

// Solves A X + X B = C for symmetric positive definite A, B via their
// eigenbases; verifies the residual to 1e-8 * ||C||_F.
Eigen::MatrixXd sylvester_solve(const Eigen::MatrixXd& A,
                                const Eigen::MatrixXd& B,
                                const Eigen::MatrixXd& C);

}  // namespace netabs
