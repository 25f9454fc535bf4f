#include "sympcov/spectrum.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <string>

namespace sympcov {

namespace {

using CMat = Eigen::MatrixXcd;

struct SymmetricRoots {
  Mat sqrt;
  Mat inv_sqrt;
};

// σ = U diag(d) Uᵀ with the positive definiteness gate: the smallest ordinary
// eigenvalue must exceed 1e-12 times the largest in magnitude.
SymmetricRoots symmetric_roots_checked(const CovarianceMatrix& sigma) {
  Eigen::SelfAdjointEigenSolver<Mat> es(sigma.matrix());
  if (es.info() != Eigen::Success) {
    throw ConvergenceFailureError("symmetric eigendecomposition did not converge");
  }
  const Vec& d = es.eigenvalues();
  const double top = std::max(std::abs(d(0)), std::abs(d(d.size() - 1)));
  if (!(top > 0.0) || !(d(0) > 1e-12 * top)) {
    throw NotPositiveDefiniteError("matrix is not positive definite: smallest eigenvalue " +
                                   std::to_string(d(0)) + ", largest " + std::to_string(top));
  }
  const Vec root = d.array().sqrt();
  SymmetricRoots out;
  out.sqrt = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
  out.inv_sqrt =
      es.eigenvectors() * root.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  return out;
}

// K = σ^{1/2} Ω σ^{1/2}, forced exactly skew so that iK is exactly Hermitian.
Mat skew_core(const CovarianceMatrix& sigma, const Mat& sigma_sqrt) {
  Mat k = sigma_sqrt * standard_form(sigma.modes()) * sigma_sqrt;
  k = 0.5 * (k - k.transpose()).eval();
  return k;
}

Eigen::SelfAdjointEigenSolver<CMat> hermitian_core_solver(const Mat& k, bool vectors) {
  CMat a = std::complex<double>(0.0, 1.0) * k.cast<std::complex<double>>();
  return Eigen::SelfAdjointEigenSolver<CMat>(
      a, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
}

}  // namespace

SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& sigma) {
  const int n = sigma.modes();
  const auto roots = symmetric_roots_checked(sigma);
  const Mat k = skew_core(sigma, roots.sqrt);
  const auto solver = hermitian_core_solver(k, false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailureError("Hermitian eigensolve for the symplectic spectrum failed");
  }
  // Eigenvalues of iK come in ± pairs; the ascending tail holds the spectrum.
  SymplecticSpectrum out;
  out.nu.resize(n);
  for (int j = 0; j < n; ++j) {
    out.nu[j] = solver.eigenvalues()(n + j);
  }
#ifndef NDEBUG
  if (n <= 8) {
    const auto direct = symplectic_eigenvalues_direct(sigma);
    for (int j = 0; j < n; ++j) {
      assert(std::abs(direct.nu[j] - out.nu[j]) <= 1e-9 * std::max(1.0, out.nu[j]));
    }
  }
#endif
  return out;
}

SymplecticSpectrum symplectic_eigenvalues_direct(const CovarianceMatrix& sigma) {
  const int n = sigma.modes();
  symmetric_roots_checked(sigma);  // same positive definiteness gate as the primary route
  const Mat product = standard_form(n) * sigma.matrix();
  Eigen::EigenSolver<Mat> es(product, false);
  if (es.info() != Eigen::Success) {
    throw ConvergenceFailureError("eigensolve of the form-covariance product failed");
  }
  std::vector<double> moduli(2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    moduli[i] = std::abs(es.eigenvalues()(i));
  }
  std::sort(moduli.begin(), moduli.end());
  SymplecticSpectrum out;
  out.nu.resize(n);
  for (int j = 0; j < n; ++j) {
    out.nu[j] = 0.5 * (moduli[2 * j] + moduli[2 * j + 1]);
  }
  return out;
}

WilliamsonDecomposition williamson(const CovarianceMatrix& sigma) {
  const int n = sigma.modes();
  const int dim = 2 * n;
  const auto roots = symmetric_roots_checked(sigma);
  const Mat k = skew_core(sigma, roots.sqrt);
  const auto solver = hermitian_core_solver(k, true);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailureError("Hermitian eigensolve for the normal form failed");
  }

  const double sqrt2 = std::sqrt(2.0);
  std::vector<double> lambda(n);
  Mat q(dim, dim);
  for (int j = 0; j < n; ++j) {
    lambda[j] = solver.eigenvalues()(n + j);
    const Eigen::VectorXcd w = solver.eigenvectors().col(n + j);
    q.col(j) = sqrt2 * w.imag();
    q.col(n + j) = sqrt2 * w.real();
  }

  Vec d_sqrt(dim);
  for (int j = 0; j < n; ++j) {
    const double r = std::sqrt(lambda[j]);
    d_sqrt(j) = r;
    d_sqrt(n + j) = r;
  }
  Mat s = roots.inv_sqrt * q * d_sqrt.asDiagonal();

  Mat target = Mat::Zero(dim, dim);
  for (int j = 0; j < n; ++j) {
    target(j, j) = lambda[j];
    target(n + j, n + j) = lambda[j];
  }
  const double residual = (s.transpose() * sigma.matrix() * s - target).norm();
  if (residual > 1e-6 * sigma.matrix().norm()) {
    throw ConvergenceFailureError("normal form residual " + std::to_string(residual) +
                                  " exceeds 1e-6 of the input scale");
  }
  return WilliamsonDecomposition{SymplecticMatrix(std::move(s)), std::move(lambda), residual};
}

CovarianceMatrix apply_congruence(const CovarianceMatrix& sigma, const SymplecticMatrix& s) {
  if (s.dim() != sigma.dim()) {
    throw InvalidDimensionError("apply_congruence: dimension mismatch " +
                                std::to_string(s.dim()) + " vs " + std::to_string(sigma.dim()));
  }
  Mat moved = s.matrix().transpose() * sigma.matrix() * s.matrix();
  moved = 0.5 * (moved + moved.transpose()).eval();
  return CovarianceMatrix(std::move(moved), sigma.hbar());
}

}  // namespace sympcov
