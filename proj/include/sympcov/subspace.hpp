#pragma once

#include <vector>

#include "sympcov/phase_space.hpp"

namespace sympcov {

/// An even-dimensional subspace of phase space carried by an orthonormal basis
/// V (2n x 2k, VᵀV = I). A subspace is symplectic when the restricted form is
/// non-degenerate; |det(VᵀΩV)| serves as the certificate and must stay ≥ 1e-10
/// for certified instances. The `any_subspace` constructor waives the
/// certificate so that shadows on non-symplectic planes (where no volume bound
/// holds) can still be computed for diagnostics.
class SymplecticSubspace {
public:
  /// Span of {x_j, p_j : j in modes} with standard unit vectors as the basis,
  /// ordered x-block then p-block. Mode indices are 1-based; out-of-range or
  /// repeated indices raise InvalidIndexError.
  static SymplecticSubspace coordinate(const std::vector<int>& modes, int n);

  /// Orthonormalizes the given spanning columns (2n x 2k, full column rank) and
  /// certifies non-degeneracy. Raises DegenerateSubspaceError when the span is
  /// rank-deficient or the certificate falls below 1e-10.
  static SymplecticSubspace from_span(const Mat& span);

  /// Orthonormalizes without certifying; certified() is false on the result.
  static SymplecticSubspace any_subspace(const Mat& span);

  const Mat& basis() const noexcept { return basis_; }
  int k() const noexcept { return static_cast<int>(basis_.cols()) / 2; }
  int ambient_modes() const noexcept { return static_cast<int>(basis_.rows()) / 2; }
  const Mat& gram_omega() const noexcept { return gram_omega_; }
  double nondegeneracy() const noexcept { return nondegeneracy_; }
  bool certified() const noexcept { return certified_; }

private:
  SymplecticSubspace(Mat basis, Mat gram_omega, double nondegeneracy, bool certified);

  Mat basis_;
  Mat gram_omega_;
  double nondegeneracy_;
  bool certified_;
};

/// Convenience free-function form of SymplecticSubspace::coordinate.
SymplecticSubspace coordinate_symplectic_subspace(const std::vector<int>& modes, int n);

}  // namespace sympcov
