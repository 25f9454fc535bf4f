#include "sympcov/projection.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <string>

#include "internal/combinatorics.hpp"

namespace sympcov {

namespace {

constexpr double kCamelSlack = 1e-9;

double factorial(int k) {
  double acc = 1.0;
  for (int i = 2; i <= k; ++i) acc *= static_cast<double>(i);
  return acc;
}

Mat coordinate_basis(const std::vector<int>& modes, int n) {
  return SymplecticSubspace::coordinate(modes, n).basis();
}

// √det(Vᵀ S Sᵀ V) via the R factor of a QR factorization of G = Sᵀ V; the
// product of |r_ii| is the Gram volume of the columns of G and avoids squaring
// the condition number the explicit Gram matrix would suffer.
double gram_volume_root(const Mat& g) {
  Eigen::HouseholderQR<Mat> qr(g);
  const auto diag = qr.matrixQR().diagonal();
  double acc = 1.0;
  for (Eigen::Index i = 0; i < g.cols(); ++i) acc *= std::abs(diag(i));
  return acc;
}

double shadow_ratio(const Mat& s, const Mat& coordinate_columns) {
  return gram_volume_root(s.transpose() * coordinate_columns);
}

}  // namespace

ProjectedEllipsoid project_covariance_ellipsoid(const CovarianceMatrix& sigma,
                                                const SymplecticSubspace& f) {
  if (f.basis().rows() != sigma.dim()) {
    throw InvalidDimensionError("project_covariance_ellipsoid: subspace lives in dimension " +
                                std::to_string(f.basis().rows()) + ", covariance in " +
                                std::to_string(sigma.dim()));
  }
  const int k = f.k();
  Mat shape = f.basis().transpose() * sigma.matrix() * f.basis();
  shape = 0.5 * (shape + shape.transpose()).eval();
  Eigen::LLT<Mat> llt(shape);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefiniteError(
        "project_covariance_ellipsoid: restricted covariance is not positive definite");
  }
  double sqrt_det = 1.0;
  const Mat l = llt.matrixL();
  for (Eigen::Index i = 0; i < l.rows(); ++i) sqrt_det *= l(i, i);
  const double volume =
      std::pow(2.0 * std::numbers::pi, k) / factorial(k) * sqrt_det;
  return ProjectedEllipsoid{std::move(shape), volume, k};
}

double camel_bound(int k, double hbar) {
  if (k < 1) {
    throw InvalidDimensionError("camel_bound: k must be >= 1, got " + std::to_string(k));
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw ValidationError("camel_bound: hbar must be finite and positive");
  }
  return std::pow(std::numbers::pi * hbar, k) / factorial(k);
}

CamelCheck check_camel(const CovarianceMatrix& sigma, const SymplecticSubspace& f) {
  const auto projected = project_covariance_ellipsoid(sigma, f);
  const double bound = camel_bound(projected.k, sigma.hbar());
  const double ratio = projected.volume / bound;
  return CamelCheck{projected.volume, bound, ratio, projected.volume >= bound * (1.0 - kCamelSlack)};
}

SymplecticSubspace random_symplectic_subspace(int n, int k, std::uint64_t seed, double spread) {
  if (k < 1 || k > n) {
    throw InvalidDimensionError("random_symplectic_subspace: need 1 <= k <= n, got k = " +
                                std::to_string(k) + ", n = " + std::to_string(n));
  }
  const SymplecticMatrix s = random_symplectic(n, seed, spread);
  std::vector<int> first_modes(k);
  for (int i = 0; i < k; ++i) first_modes[i] = i + 1;
  const Mat span = s.matrix() * coordinate_basis(first_modes, n);
  try {
    return SymplecticSubspace::from_span(span);
  } catch (const DegenerateSubspaceError& e) {
    // A symplectic image of a symplectic subspace cannot be degenerate; if the
    // certificate still fails, the construction itself is broken.
    throw InternalInconsistencyError(
        std::string("random_symplectic_subspace: certificate failed on a symplectic image: ") +
        e.what());
  }
}

double ball_shadow_volume(const SymplecticMatrix& s, const std::vector<int>& modes,
                          double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ValidationError("ball_shadow_volume: radius must be finite and positive");
  }
  const int n = s.modes();
  const Mat v = coordinate_basis(modes, n);
  const int k = static_cast<int>(modes.size());
  const double ratio = shadow_ratio(s.matrix(), v);
  return std::pow(std::numbers::pi * radius * radius, k) / factorial(k) * ratio;
}

CampaignResult nonsqueezing_campaign(int n, int k, int trials, std::uint64_t seed, double spread) {
  if (k < 1 || k > n) {
    throw InvalidDimensionError("nonsqueezing_campaign: need 1 <= k <= n, got k = " +
                                std::to_string(k) + ", n = " + std::to_string(n));
  }
  if (trials < 1) {
    throw ValidationError("nonsqueezing_campaign: trial count must be >= 1");
  }

  std::vector<Mat> bases;
  internal::for_each_combination(n, k, [&](const std::vector<int>& subset) {
    std::vector<int> modes(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i) modes[i] = subset[i] + 1;
    bases.push_back(coordinate_basis(modes, n));
  });

  CampaignResult result{std::numeric_limits<double>::infinity(), 0.0, 0, trials};
  for (int t = 0; t < trials; ++t) {
    const SymplecticMatrix s = random_symplectic(n, mix_seed(seed, static_cast<std::uint64_t>(t)),
                                                 spread);
    for (const Mat& v : bases) {
      const double ratio = shadow_ratio(s.matrix(), v);
      result.min_ratio = std::min(result.min_ratio, ratio);
      result.max_ratio = std::max(result.max_ratio, ratio);
      if (ratio < 1.0 - kCamelSlack) ++result.violations;
    }
  }
  return result;
}

}  // namespace sympcov
