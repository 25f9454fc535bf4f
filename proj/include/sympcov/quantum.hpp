#pragma once

#include <array>
#include <vector>

#include "sympcov/spectrum.hpp"

namespace sympcov {

/// Everything the validity analysis produces for one covariance matrix.
/// `margin` is nu_min − hbar/2; `marginal` flags |margin| ≤ 1e-10·hbar. Boundary
/// states are valid: both boolean routes answer true there, and the flag only
/// annotates how close the call was.
struct QuantumValidityReport {
  bool valid_hermitian;
  bool valid_spectrum;
  double nu_min;
  double margin;
  bool marginal;
  std::vector<bool> rs_per_mode;
  double gromov_width;
  double hbar;
};

/// Validity via the Hermitian matrix σ + (i·hbar/2)·Ω: true iff its smallest
/// eigenvalue is ≥ −1e-10·‖σ‖_F. Works for any symmetric σ, positive definite
/// or not.
bool is_quantum_hermitian(const CovarianceMatrix& sigma);

/// Validity via the symplectic spectrum: true iff nu_min ≥ (hbar/2)·(1 − 1e-10).
/// Requires positive definite σ.
bool is_quantum_spectrum(const CovarianceMatrix& sigma);

/// Per-mode Robertson-Schrodinger check: entry j is true iff
/// σ_xx(j,j)·σ_pp(j,j) − σ_xp(j,j)² − hbar²/4 ≥ −1e-10·‖σ‖_F².
/// Necessary for validity but strictly weaker: inter-mode correlations can
/// defeat a state that passes every mode.
std::vector<bool> robertson_schrodinger(const CovarianceMatrix& sigma);

/// Gromov width of the covariance ellipsoid { z : ½ zᵀ σ⁻¹ z ≤ 1 }, equal to
/// 2π·nu_min (the smallest conjugate-plane cross-section has radius √(2·nu_min)).
/// Validity is equivalent to width ≥ π·hbar = h/2, with equality on the boundary.
double gromov_width(const CovarianceMatrix& sigma);

/// Quadratic factors (1, −2, 1 − hbar²/(4ν_j²)) of the characteristic polynomial
/// of I + (i·hbar/2)·σ^{-1/2} Ω σ^{-1/2}; the j-th factor has roots 1 ± hbar/(2ν_j),
/// both nonnegative exactly when mode j satisfies ν_j ≥ hbar/2.
std::vector<std::array<double, 3>> uncertainty_charpoly_factors(const CovarianceMatrix& sigma);

/// Eigenvalues of I + (i·hbar/2)·σ^{-1/2} Ω σ^{-1/2}, ascending. Independent route
/// to the factor roots above; used for cross-checks.
std::vector<double> boundary_matrix_eigenvalues(const CovarianceMatrix& sigma);

/// Assembles the full report. Requires positive definite σ (the spectrum route
/// needs it); callers that must handle indefinite input should catch
/// NotPositiveDefiniteError and fall back to the Hermitian route alone.
QuantumValidityReport quantum_validity_report(const CovarianceMatrix& sigma);

}  // namespace sympcov
