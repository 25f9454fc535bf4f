#include "sympcov/covariance.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace sympcov {

namespace {

// Position of block-xp coordinate q inside the interleaved layout (x1,p1,x2,p2,...).
std::vector<int> interleaved_source_indices(int n) {
  std::vector<int> src(2 * n);
  for (int q = 0; q < n; ++q) {
    src[q] = 2 * q;
    src[n + q] = 2 * q + 1;
  }
  return src;
}

void require_even_square(const Mat& sigma, const char* who) {
  if (sigma.rows() != sigma.cols() || sigma.rows() < 2 || sigma.rows() % 2 != 0) {
    throw InvalidDimensionError(std::string(who) + ": expected a 2n x 2n matrix, got " +
                                std::to_string(sigma.rows()) + "x" + std::to_string(sigma.cols()));
  }
}

}  // namespace

Mat interleaved_to_block(const Mat& sigma) {
  require_even_square(sigma, "interleaved_to_block");
  const int n = static_cast<int>(sigma.rows()) / 2;
  const auto src = interleaved_source_indices(n);
  Mat out(2 * n, 2 * n);
  for (int q = 0; q < 2 * n; ++q) {
    for (int r = 0; r < 2 * n; ++r) {
      out(q, r) = sigma(src[q], src[r]);
    }
  }
  return out;
}

Mat block_to_interleaved(const Mat& sigma) {
  require_even_square(sigma, "block_to_interleaved");
  const int n = static_cast<int>(sigma.rows()) / 2;
  const auto src = interleaved_source_indices(n);
  Mat out(2 * n, 2 * n);
  for (int q = 0; q < 2 * n; ++q) {
    for (int r = 0; r < 2 * n; ++r) {
      out(src[q], src[r]) = sigma(q, r);
    }
  }
  return out;
}

CovarianceMatrix::CovarianceMatrix(Mat sigma, double hbar, double asym_tol)
    : hbar_(hbar), sigma_(std::move(sigma)) {
  require_even_square(sigma_, "CovarianceMatrix");
  if (!(hbar_ > 0.0) || !std::isfinite(hbar_)) {
    throw ValidationError("CovarianceMatrix: hbar must be finite and positive, got " +
                          std::to_string(hbar_));
  }
  if (!sigma_.allFinite()) {
    throw ValidationError("CovarianceMatrix: entries must be finite");
  }
  const double asym = (sigma_ - sigma_.transpose()).norm();
  const double scale = std::max(1.0, sigma_.norm());
  if (asym > asym_tol * scale) {
    throw ValidationError("CovarianceMatrix: asymmetry " + std::to_string(asym / scale) +
                          " (relative) exceeds tolerance " + std::to_string(asym_tol));
  }
  sigma_ = 0.5 * (sigma_ + sigma_.transpose()).eval();
  n_ = static_cast<int>(sigma_.rows()) / 2;
}

double CovarianceMatrix::planck() const noexcept { return 2.0 * std::numbers::pi * hbar_; }

}  // namespace sympcov
