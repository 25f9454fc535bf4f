#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "sympcov/errors.hpp"

namespace sympcov {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Phase-space vectors are ordered z = (x_1..x_n, p_1..p_n) throughout ("block-xp").
// Interleaved data is converted once at the ingestion boundary, never inside algorithms.

/// Standard symplectic form on R^{2n}: [[0, I], [-I, 0]].
Mat standard_form(int n);

/// Symplectic product z ∧ z2 = z2ᵀ Ω z. Antisymmetric and bilinear.
double symplectic_product(const Vec& z, const Vec& z2);

/// True iff ‖M Ω Mᵀ − Ω‖_F ≤ tol · max(1, ‖M‖_F²). Throws on odd or non-square input.
bool is_symplectic(const Mat& m, double tol = 1e-10);

/// A matrix validated against the defining relation S Ω Sᵀ = Ω at construction.
/// det S = 1 is checked as well (at the looser of `tolerance` and 1e-8, since a
/// determinant extracted from an LU factorization of a strongly squeezed matrix
/// carries more rounding than the relation residual).
class SymplecticMatrix {
public:
  explicit SymplecticMatrix(Mat s, double tolerance = 1e-10);

  const Mat& matrix() const noexcept { return s_; }
  double tolerance() const noexcept { return tolerance_; }
  int modes() const noexcept { return static_cast<int>(s_.rows()) / 2; }
  int dim() const noexcept { return static_cast<int>(s_.rows()); }

private:
  Mat s_;
  double tolerance_;
};

/// Deterministic random symplectic matrix exp(Ω H), H symmetric with i.i.d. entries
/// uniform in [-spread, spread] drawn from a seeded generator. spread = 0 gives the
/// identity. Same (n, seed, spread) gives a bitwise-identical result.
SymplecticMatrix random_symplectic(int n, std::uint64_t seed, double spread);

/// Ordered pairs (e_1..e_k, f_1..f_k) stored as the columns of a 2n x 2k matrix,
/// e-block first. A full basis (k = n) assembled this way is a symplectic matrix.
class SymplecticBasis {
public:
  /// vectors: 2n x 2k with columns e_1..e_k, f_1..f_k. Throws on shape mismatch.
  SymplecticBasis(int n, Mat vectors);

  static SymplecticBasis empty(int n) { return SymplecticBasis(n, Mat(2 * n, 0)); }

  int modes() const noexcept { return n_; }
  int pairs() const noexcept { return k_; }
  const Mat& vectors() const noexcept { return vectors_; }
  Vec e(int i) const { return vectors_.col(i); }
  Vec f(int i) const { return vectors_.col(k_ + i); }

  /// Worst absolute deviation of the pairing table from the canonical one
  /// (e_i ∧ e_j = f_i ∧ f_j = 0, f_i ∧ e_j = δ_ij).
  double max_pairing_violation() const;

private:
  int n_;
  int k_;
  Mat vectors_;
};

/// Completes a partial symplectic basis to a full one. Input pairs are kept verbatim.
/// New vectors are standard unit vectors projected into the symplectic complement of
/// the pairs built so far; the partner of a new e is the projected candidate with the
/// largest pairing magnitude against it, rescaled so the pairing is exactly one.
/// Pairings below 1e-10 raise DegeneratePairingError.
SymplecticBasis symplectic_gram_schmidt(const SymplecticBasis& partial, int n);

/// Stateless seed mixer (splitmix64 finalizer) used to derive per-trial seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace sympcov
