#include "sympcov/quantum.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <numbers>

namespace sympcov {

namespace {

using CMat = Eigen::MatrixXcd;

double smallest_eigenvalue_hermitian(const CMat& a) {
  Eigen::SelfAdjointEigenSolver<CMat> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw ConvergenceFailureError("Hermitian eigensolve failed in the validity check");
  }
  return es.eigenvalues()(0);
}

// σ^{-1/2} Ω σ^{-1/2}, exactly skew.
Mat inverse_core(const CovarianceMatrix& sigma) {
  Eigen::SelfAdjointEigenSolver<Mat> es(sigma.matrix());
  if (es.info() != Eigen::Success) {
    throw ConvergenceFailureError("symmetric eigendecomposition did not converge");
  }
  const Vec& d = es.eigenvalues();
  const double top = std::max(std::abs(d(0)), std::abs(d(d.size() - 1)));
  if (!(top > 0.0) || !(d(0) > 1e-12 * top)) {
    throw NotPositiveDefiniteError("matrix is not positive definite in the validity check");
  }
  const Mat inv_sqrt = es.eigenvectors() * d.array().rsqrt().matrix().asDiagonal() *
                       es.eigenvectors().transpose();
  Mat core = inv_sqrt * standard_form(sigma.modes()) * inv_sqrt;
  core = 0.5 * (core - core.transpose()).eval();
  return core;
}

}  // namespace

bool is_quantum_hermitian(const CovarianceMatrix& sigma) {
  const std::complex<double> half_i_hbar(0.0, 0.5 * sigma.hbar());
  const CMat a = sigma.matrix().cast<std::complex<double>>() +
                 half_i_hbar * standard_form(sigma.modes()).cast<std::complex<double>>();
  return smallest_eigenvalue_hermitian(a) >= -1e-10 * sigma.matrix().norm();
}

bool is_quantum_spectrum(const CovarianceMatrix& sigma) {
  const double nu_min = symplectic_eigenvalues(sigma).nu_min();
  return nu_min >= 0.5 * sigma.hbar() * (1.0 - 1e-10);
}

std::vector<bool> robertson_schrodinger(const CovarianceMatrix& sigma) {
  const int n = sigma.modes();
  const double floor = -1e-10 * sigma.matrix().squaredNorm();
  const double quarter_hbar_sq = 0.25 * sigma.hbar() * sigma.hbar();
  std::vector<bool> ok(n);
  for (int j = 0; j < n; ++j) {
    const double lhs =
        sigma.xx()(j, j) * sigma.pp()(j, j) - sigma.xp()(j, j) * sigma.xp()(j, j) - quarter_hbar_sq;
    ok[j] = lhs >= floor;
  }
  return ok;
}

double gromov_width(const CovarianceMatrix& sigma) {
  return 2.0 * std::numbers::pi * symplectic_eigenvalues(sigma).nu_min();
}

std::vector<std::array<double, 3>> uncertainty_charpoly_factors(const CovarianceMatrix& sigma) {
  const auto spectrum = symplectic_eigenvalues(sigma);
  const double hbar_sq = sigma.hbar() * sigma.hbar();
  std::vector<std::array<double, 3>> factors;
  factors.reserve(spectrum.nu.size());
  for (const double nu : spectrum.nu) {
    factors.push_back({1.0, -2.0, 1.0 - hbar_sq / (4.0 * nu * nu)});
  }
#ifndef NDEBUG
  {
    const auto eigs = boundary_matrix_eigenvalues(sigma);
    std::vector<double> expected;
    for (const double nu : spectrum.nu) {
      expected.push_back(1.0 - sigma.hbar() / (2.0 * nu));
      expected.push_back(1.0 + sigma.hbar() / (2.0 * nu));
    }
    std::sort(expected.begin(), expected.end());
    for (std::size_t i = 0; i < eigs.size(); ++i) {
      assert(std::abs(eigs[i] - expected[i]) <= 1e-8 * std::max(1.0, std::abs(expected[i])));
    }
  }
#endif
  return factors;
}

std::vector<double> boundary_matrix_eigenvalues(const CovarianceMatrix& sigma) {
  const Mat core = inverse_core(sigma);
  const std::complex<double> half_i_hbar(0.0, 0.5 * sigma.hbar());
  const CMat a = CMat::Identity(core.rows(), core.cols()) +
                 half_i_hbar * core.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<CMat> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw ConvergenceFailureError("Hermitian eigensolve of the boundary matrix failed");
  }
  return std::vector<double>(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
}

QuantumValidityReport quantum_validity_report(const CovarianceMatrix& sigma) {
  QuantumValidityReport r;
  r.hbar = sigma.hbar();
  const auto spectrum = symplectic_eigenvalues(sigma);
  r.nu_min = spectrum.nu_min();
  r.margin = r.nu_min - 0.5 * r.hbar;
  r.marginal = std::abs(r.margin) <= 1e-10 * r.hbar;
  r.valid_spectrum = r.nu_min >= 0.5 * r.hbar * (1.0 - 1e-10);
  r.valid_hermitian = is_quantum_hermitian(sigma);
  r.rs_per_mode = robertson_schrodinger(sigma);
  r.gromov_width = 2.0 * std::numbers::pi * r.nu_min;
  return r;
}

}  // namespace sympcov
