// Independent oracles for cross-checking the library's closed forms.
// Everything here deliberately avoids the library's own code paths:
// matrix equations go through a dense Kronecker solve, pseudoinverses
// through SVD, frequency-domain norms through adaptive quadrature on the
// complex transfer matrix, and tail probabilities through exact log-space
// binomial sums.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

#include <Eigen/Dense>

namespace oracles {

// Solves A X + X B = C by the vectorized (I (x) A + B^T (x) I) system.
// O(n^6); intended for n <= ~30.
inline Eigen::MatrixXd sylvester_kron(const Eigen::MatrixXd& A,
                                      const Eigen::MatrixXd& B,
                                      const Eigen::MatrixXd& C) {
  const int n = static_cast<int>(A.rows());
  const int m = static_cast<int>(B.cols());
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n * m, n * m);
  // vec(A X) = (I_m (x) A) vec(X); vec(X B) = (B^T (x) I_n) vec(X).
  for (int col = 0; col < m; ++col)
    K.block(col * n, col * n, n, n) += A;
  for (int c1 = 0; c1 < m; ++c1)
    for (int c2 = 0; c2 < m; ++c2)
      K.block(c1 * n, c2 * n, n, n) +=
          B(c2, c1) * Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd vecC(n * m);
  for (int col = 0; col < m; ++col) vecC.segment(col * n, n) = C.col(col);
  const Eigen::VectorXd x = K.fullPivLu().solve(vecC);
  Eigen::MatrixXd X(n, m);
  for (int col = 0; col < m; ++col) X.col(col) = x.segment(col * n, n);
  return X;
}

// Moore-Penrose pseudoinverse via SVD with a relative cutoff.
inline Eigen::MatrixXd pinv_svd(const Eigen::MatrixXd& M,
                                double rel_tol = 1e-12) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double cut = rel_tol * s(0);
  Eigen::VectorXd si = Eigen::VectorXd::Zero(s.size());
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > cut) si(i) = 1.0 / s(i);
  return svd.matrixV() * si.asDiagonal() * svd.matrixU().transpose();
}

// Adaptive Simpson on [a, b].
inline double simpson_adaptive(const std::function<double(double)>& f,
                               double a, double b, double tol,
                               int max_depth = 40) {
  struct Rec {
    static double step(const std::function<double(double)>& f, double a,
                       double fa, double b, double fb, double m, double fm,
                       double whole, double tol, int depth) {
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
      return step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
             step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
    }
  };
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Rec::step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

// Integral of f over [0, inf): direct on [0, split], 1/w substitution on
// the tail (requires f to decay at least like 1/w^2).
inline double integral_half_line(const std::function<double(double)>& f,
                                 double tol, double split = 1.0) {
  const double head = simpson_adaptive(f, 0.0, split, tol);
  const auto tail_f = [&](double t) {
    if (t == 0.0) return 0.0;
    const double w = 1.0 / t;
    return f(w) * w * w;
  };
  const double tail = simpson_adaptive(tail_f, 0.0, 1.0 / split, tol);
  return head + tail;
}

// Consensus transfer matrix at s = j w: M_n (j w I + L)^{-1}, with M_n the
// centering projector.
inline Eigen::MatrixXcd transfer_at(const Eigen::MatrixXd& L, double w) {
  const int n = static_cast<int>(L.rows());
  const std::complex<double> jw(0.0, w);
  Eigen::MatrixXcd A = L.cast<std::complex<double>>();
  A.diagonal().array() += jw;
  // At w = 0 the matrix is singular on the ones vector; shift by the
  // averaging projector (invisible to the centered output).
  if (w == 0.0) A += Eigen::MatrixXcd::Constant(n, n, 1.0 / n);
  const Eigen::MatrixXcd inv = A.partialPivLu().solve(
      Eigen::MatrixXcd::Identity(n, n));
  Eigen::MatrixXcd Mc =
      Eigen::MatrixXcd::Identity(n, n) -
      Eigen::MatrixXcd::Constant(n, n, 1.0 / n);
  return Mc * inv;
}

// Frequency-quadrature H2 norm: sqrt( (1/pi) Int_0^inf ||G(jw)||_F^2 dw ).
inline double h2_quadrature(const Eigen::MatrixXd& L, double tol = 1e-10) {
  const auto f = [&](double w) { return transfer_at(L, w).squaredNorm(); };
  const double lmax = L.eigenvalues().real().maxCoeff();
  return std::sqrt(integral_half_line(f, tol, std::max(1.0, lmax)) / M_PI);
}

// Frequency-quadrature H2 distance between two consensus networks.
inline double h2_error_quadrature(const Eigen::MatrixXd& L,
                                  const Eigen::MatrixXd& L_s,
                                  double tol = 1e-10) {
  const auto f = [&](double w) {
    return (transfer_at(L, w) - transfer_at(L_s, w)).squaredNorm();
  };
  const double lmax = std::max(L.eigenvalues().real().maxCoeff(),
                               L_s.eigenvalues().real().maxCoeff());
  return std::sqrt(integral_half_line(f, tol, std::max(1.0, lmax)) / M_PI);
}

// Frequency-quadrature Schatten-p system norm for even integer p:
// ( (1/pi) Int_0^inf sum_i sigma_i(G(jw))^p dw )^(1/p).
inline double hp_quadrature(const Eigen::MatrixXd& L, int p,
                            double tol = 1e-10) {
  const auto f = [&](double w) {
    const auto sv = transfer_at(L, w).jacobiSvd().singularValues();
    double acc = 0.0;
    for (int i = 0; i < sv.size(); ++i) acc += std::pow(sv(i), p);
    return acc;
  };
  const double lmax = L.eigenvalues().real().maxCoeff();
  return std::pow(integral_half_line(f, tol, std::max(1.0, lmax)) / M_PI,
                  1.0 / p);
}

// Frequency-quadrature entropy functional at absolute bound gamma:
// -(gamma^2/pi) Int_0^inf log det(I - gamma^-2 G(jw)^H G(jw)) dw.
inline double gamma_entropy_quadrature(const Eigen::MatrixXd& L,
                                       double gamma, double tol = 1e-10) {
  const double g2 = gamma * gamma;
  const auto f = [&](double w) {
    const Eigen::MatrixXcd G = transfer_at(L, w);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G.adjoint() * G);
    double acc = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      const double s2 = std::max(0.0, es.eigenvalues()(i));
      acc += std::log1p(-s2 / g2);
    }
    return acc;
  };
  const double lmax = L.eigenvalues().real().maxCoeff();
  return -(g2 / M_PI) * integral_half_line(f, tol, std::max(1.0, lmax));
}

// Steady-state covariance of the centered first-order network driven by
// unit white noise, via the Kronecker Lyapunov solve:
// (L + J/n) Y + Y (L + J/n) = M_n.
inline Eigen::MatrixXd steady_covariance_kron(const Eigen::MatrixXd& L) {
  const int n = static_cast<int>(L.rows());
  const Eigen::MatrixXd J = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  const Eigen::MatrixXd Mc = Eigen::MatrixXd::Identity(n, n) - J;
  return sylvester_kron(L + J, L + J, Mc);
}

// Position output variance of one second-order mode
// xdd = -lam x - beta lam xd + noise, solved as a 4-entry Lyapunov system.
inline double second_order_mode_variance(double lam, double beta) {
  Eigen::MatrixXd A(2, 2);
  A << 0.0, 1.0, -lam, -beta * lam;
  Eigen::MatrixXd Q(2, 2);
  Q << 0.0, 0.0, 0.0, 1.0;
  // A P + P A^T = -Q
  const Eigen::MatrixXd P =
      sylvester_kron(A, Eigen::MatrixXd(A.transpose()), -Q);
  return P(0, 0);
}

// Exact one-sided binomial tail P[X >= k] for X ~ Bin(n, p), in log space.
inline double binom_tail(int n, int k, double p) {
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  double acc = 0.0;
  for (int i = k; i <= n; ++i) {
    const double lg = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) -
                      std::lgamma(n - i + 1.0) + i * std::log(p) +
                      (n - i) * std::log1p(-p);
    acc += std::exp(lg);
  }
  return std::min(1.0, acc);
}

}  // namespace oracles
