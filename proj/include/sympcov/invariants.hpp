#pragma once

#include <vector>

#include "sympcov/covariance.hpp"
#include "sympcov/spectrum.hpp"

namespace sympcov {

enum class DeltaRoute { kMinors, kCharpoly, kSpectrum };

/// The n+1 universal invariants Δ_0..Δ_n of a covariance matrix, Δ_0 = 1,
/// tagged with the route that produced them. Δ_j is simultaneously the sum of
/// the order-2j principal minors of Ωσ, the coefficient of t^{2n-2j} in
/// det(tI − Ωσ), and the j-th elementary symmetric polynomial in ν_1²..ν_n².
/// The values are independent of hbar and invariant under σ ↦ Sᵀ σ S.
struct UniversalInvariants {
  std::vector<double> delta;
  DeltaRoute route;
};

/// Definitional route: Δ_j as the sum of all C(2n, 2j) principal minors of Ωσ,
/// accumulated with compensated summation in a fixed order. Refuses to
/// enumerate more than 10^6 combinations (CombinatorialBlowupError).
double delta_via_minors(const CovarianceMatrix& sigma, int j);

/// All Δ_j by the minors route. Same guard per j.
UniversalInvariants delta_via_minors_all(const CovarianceMatrix& sigma);

/// Characteristic-polynomial route: Faddeev-LeVerrier on Ωσ; Δ_j is the
/// coefficient of t^{2n-2j} in det(tI − Ωσ). Odd-power coefficients vanish in
/// exact arithmetic. No eigensolver involved, so this route is independent of
/// the spectrum route.
UniversalInvariants delta_via_charpoly(const CovarianceMatrix& sigma);

/// Spectrum route: Δ_j = e_j(ν_1², ..., ν_n²), built by the cancellation-free
/// ascending recurrence for elementary symmetric polynomials.
UniversalInvariants delta_via_spectrum(const SymplecticSpectrum& spectrum);

/// Two-sided evaluation of the identity relating Δ_j to coordinate-subspace
/// shadow volumes: rhs = (j! / (2π)^j)² · Σ_F Vol(Π_F W_σ)² over all C(n, j)
/// coordinate symplectic subspaces F. Exact when σ = diag(Λ, Λ); for general σ
/// the residual is reported, not asserted, because the shadow volumes on
/// coordinate subspaces are not symplectic invariants individually.
struct DeltaProjectionIdentity {
  double lhs;
  double rhs;
  double residual;  ///< |lhs − rhs| / max(|lhs|, |rhs|)
};

DeltaProjectionIdentity delta_projection_identity(const CovarianceMatrix& sigma, int j);

}  // namespace sympcov
