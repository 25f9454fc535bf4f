#include "sympcov/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sympcov {

namespace {

constexpr double kCertificateFloor = 1e-10;

std::vector<int> checked_modes(const std::vector<int>& modes, int n, const char* who) {
  if (n < 1) {
    throw InvalidDimensionError(std::string(who) + ": mode count must be >= 1, got " +
                                std::to_string(n));
  }
  if (modes.empty()) {
    throw InvalidIndexError(std::string(who) + ": mode list is empty");
  }
  std::vector<int> sorted = modes;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 1 || sorted[i] > n) {
      throw InvalidIndexError(std::string(who) + ": mode index " + std::to_string(sorted[i]) +
                              " outside 1.." + std::to_string(n));
    }
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw InvalidIndexError(std::string(who) + ": mode index " + std::to_string(sorted[i]) +
                              " repeated");
    }
  }
  return sorted;
}

Mat orthonormal_span(const Mat& span, const char* who) {
  if (span.rows() < 2 || span.rows() % 2 != 0 || span.cols() < 2 || span.cols() % 2 != 0 ||
      span.cols() > span.rows()) {
    throw InvalidDimensionError(std::string(who) +
                                ": span must be 2n x 2k with 1 <= k <= n, got " +
                                std::to_string(span.rows()) + "x" + std::to_string(span.cols()));
  }
  Eigen::HouseholderQR<Mat> qr(span);
  const auto diag = qr.matrixQR().diagonal();
  const double top = diag.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < span.cols(); ++i) {
    if (std::abs(diag(i)) <= 1e-12 * std::max(1.0, top)) {
      throw DegenerateSubspaceError(std::string(who) + ": spanning columns are rank deficient");
    }
  }
  return qr.householderQ() * Mat::Identity(span.rows(), span.cols());
}

}  // namespace

SymplecticSubspace::SymplecticSubspace(Mat basis, Mat gram_omega, double nondegeneracy,
                                       bool certified)
    : basis_(std::move(basis)),
      gram_omega_(std::move(gram_omega)),
      nondegeneracy_(nondegeneracy),
      certified_(certified) {}

SymplecticSubspace SymplecticSubspace::coordinate(const std::vector<int>& modes, int n) {
  const auto sorted = checked_modes(modes, n, "SymplecticSubspace::coordinate");
  const int k = static_cast<int>(sorted.size());
  Mat basis = Mat::Zero(2 * n, 2 * k);
  for (int a = 0; a < k; ++a) {
    basis(sorted[a] - 1, a) = 1.0;          // x_j axis
    basis(n + sorted[a] - 1, k + a) = 1.0;  // p_j axis
  }
  Mat gram = basis.transpose() * standard_form(n) * basis;
  const double cert = std::abs(gram.determinant());
  return SymplecticSubspace(std::move(basis), std::move(gram), cert, true);
}

SymplecticSubspace SymplecticSubspace::from_span(const Mat& span) {
  Mat basis = orthonormal_span(span, "SymplecticSubspace::from_span");
  const int n = static_cast<int>(basis.rows()) / 2;
  Mat gram = basis.transpose() * standard_form(n) * basis;
  const double cert = std::abs(gram.determinant());
  if (cert < kCertificateFloor) {
    throw DegenerateSubspaceError(
        "SymplecticSubspace::from_span: restricted form certificate " + std::to_string(cert) +
        " below threshold; the span is not symplectic");
  }
  return SymplecticSubspace(std::move(basis), std::move(gram), cert, true);
}

SymplecticSubspace SymplecticSubspace::any_subspace(const Mat& span) {
  Mat basis = orthonormal_span(span, "SymplecticSubspace::any_subspace");
  const int n = static_cast<int>(basis.rows()) / 2;
  Mat gram = basis.transpose() * standard_form(n) * basis;
  const double cert = std::abs(gram.determinant());
  return SymplecticSubspace(std::move(basis), std::move(gram), cert, false);
}

SymplecticSubspace coordinate_symplectic_subspace(const std::vector<int>& modes, int n) {
  return SymplecticSubspace::coordinate(modes, n);
}

}  // namespace sympcov
