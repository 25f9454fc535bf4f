#pragma once

#include <vector>

#include "sympcov/covariance.hpp"

namespace sympcov {

/// Symplectic eigenvalues of a positive definite covariance matrix, ascending.
struct SymplecticSpectrum {
  std::vector<double> nu;

  double nu_min() const { return nu.front(); }
  int modes() const { return static_cast<int>(nu.size()); }
};

/// Symplectic spectrum via the skew-symmetric matrix K = σ^{1/2} Ω σ^{1/2}:
/// the eigenvalues of the Hermitian matrix iK are ±ν_j, and the self-adjoint
/// solver is stable where the non-normal product Ωσ is not. Throws
/// NotPositiveDefiniteError when the smallest ordinary eigenvalue of σ is not
/// above 1e-12 times the largest.
SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& sigma);

/// Same spectrum from the moduli of the eigenvalues of Ωσ (general eigensolver,
/// conjugate pairs deduplicated). Kept as an independent cross-check route.
SymplecticSpectrum symplectic_eigenvalues_direct(const CovarianceMatrix& sigma);

/// Result of the normal-form congruence: s is symplectic, Sᵀ σ S = diag(Λ, Λ)
/// with lambda ascending, and residual = ‖Sᵀ σ S − diag(Λ, Λ)‖_F.
struct WilliamsonDecomposition {
  SymplecticMatrix s;
  std::vector<double> lambda;
  double residual;
};

/// Williamson normal form of a positive definite covariance matrix.
///
/// Construction: with K = σ^{1/2} Ω σ^{1/2} skew-symmetric, each unit eigenvector
/// w of the Hermitian matrix iK for eigenvalue ν > 0 splits into real vectors
/// a = Re w, b = Im w with K(√2 a) = ν(√2 b) and K(√2 b) = −ν(√2 a); stacking
/// the √2 b columns then the √2 a columns gives an orthogonal Q with
/// Qᵀ K Q = [[0, Λ], [−Λ, 0]], and S = σ^{-1/2} Q diag(Λ,Λ)^{1/2} is symplectic
/// with Sᵀ σ S diagonal. The decomposition is not unique under degenerate Λ, so
/// callers should compare spectra and residuals, never matrix entries.
/// Throws ConvergenceFailureError if the residual exceeds 1e-6·‖σ‖_F.
WilliamsonDecomposition williamson(const CovarianceMatrix& sigma);

/// Congruence transport σ ↦ Sᵀ σ S, re-symmetrized, same hbar.
CovarianceMatrix apply_congruence(const CovarianceMatrix& sigma, const SymplecticMatrix& s);

}  // namespace sympcov
