#pragma once

#include "sympcov/phase_space.hpp"

namespace sympcov {

enum class Ordering { kBlockXP, kInterleaved };

/// Reorders a 2n x 2n matrix given with coordinates (x1,p1,x2,p2,...) into
/// block ordering (x1..xn, p1..pn).
Mat interleaved_to_block(const Mat& sigma);

/// Inverse of interleaved_to_block.
Mat block_to_interleaved(const Mat& sigma);

/// Symmetric covariance matrix of n modes in block-xp ordering, together with the
/// value of hbar it is to be interpreted against. The matrix is symmetrized on
/// ingestion; asymmetry beyond `asym_tol` (relative, Frobenius) is rejected.
/// Positive definiteness is deliberately not a construction invariant: invalid
/// candidate states must be representable so they can be analyzed and rejected.
class CovarianceMatrix {
public:
  explicit CovarianceMatrix(Mat sigma, double hbar = 1.0, double asym_tol = 1e-9);

  int modes() const noexcept { return n_; }
  int dim() const noexcept { return 2 * n_; }
  double hbar() const noexcept { return hbar_; }
  /// Planck constant h = 2π·hbar.
  double planck() const noexcept;
  const Mat& matrix() const noexcept { return sigma_; }

  Eigen::Block<const Mat> xx() const { return sigma_.block(0, 0, n_, n_); }
  Eigen::Block<const Mat> xp() const { return sigma_.block(0, n_, n_, n_); }
  Eigen::Block<const Mat> pp() const { return sigma_.block(n_, n_, n_, n_); }

private:
  int n_;
  double hbar_;
  Mat sigma_;
};

}  // namespace sympcov
