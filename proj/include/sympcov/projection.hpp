#pragma once

#include <cstdint>
#include <vector>

#include "sympcov/covariance.hpp"
#include "sympcov/subspace.hpp"

namespace sympcov {

/// Orthogonal shadow of a covariance ellipsoid on a 2k-dimensional subspace:
/// shape matrix M = Vᵀ σ V and volume (2π)^k / k! · √det M.
struct ProjectedEllipsoid {
  Mat shape;
  double volume;
  int k;
};

/// Shadow of { z : ½ zᵀ σ⁻¹ z ≤ 1 } on the given subspace. σ must be positive
/// definite; the subspace may be a waived-certificate diagnostic one.
ProjectedEllipsoid project_covariance_ellipsoid(const CovarianceMatrix& sigma,
                                                const SymplecticSubspace& f);

/// Least shadow volume a valid state can have on a 2k-dimensional symplectic
/// subspace: h^k / (2^k k!) = (π·hbar)^k / k!.
double camel_bound(int k, double hbar);

struct CamelCheck {
  double volume;
  double bound;
  double ratio;     ///< volume / bound
  bool satisfied;   ///< volume ≥ bound · (1 − 1e-9)
};

/// Shadow volume versus the bound above for one subspace.
CamelCheck check_camel(const CovarianceMatrix& sigma, const SymplecticSubspace& f);

/// Image of the coordinate subspace on modes {1..k} under a seeded random
/// symplectic matrix, re-orthonormalized. The result is certified; a certificate
/// failure here means the construction itself is broken and raises
/// InternalInconsistencyError.
SymplecticSubspace random_symplectic_subspace(int n, int k, std::uint64_t seed,
                                              double spread = 1.0);

/// Volume of the shadow of S·B(R) (the symplectic image of the centered radius-R
/// ball) on the coordinate subspace for the given modes:
/// π^k / k! · R^{2k} · √det(Vᵀ S Sᵀ V). Computed from a QR factorization of SᵀV
/// rather than an explicit Gram determinant, which keeps the k = n case exact to
/// rounding (there √det = |det S| = 1).
double ball_shadow_volume(const SymplecticMatrix& s, const std::vector<int>& modes,
                          double radius);

struct CampaignResult {
  double min_ratio;
  double max_ratio;
  long violations;  ///< count of ratios below 1 − 1e-9
  long trials;
};

/// Randomized search for counterexamples to the shadow-volume lower bound
/// Vol ≥ (πR²)^k / k!. Every trial draws its own symplectic matrix from a seed
/// derived from (seed, trial index) and evaluates the ratio √det(Vᵀ S Sᵀ V) on
/// every size-k set of coordinate modes; trials are order-independent by
/// construction. A nonzero violation count falsifies the linear non-squeezing
/// property and therefore indicates a defect in this library.
CampaignResult nonsqueezing_campaign(int n, int k, int trials, std::uint64_t seed,
                                     double spread);

}  // namespace sympcov
