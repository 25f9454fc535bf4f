#include "sympcov/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "internal/combinatorics.hpp"
#include "sympcov/projection.hpp"
#include "sympcov/subspace.hpp"

namespace sympcov {

namespace {

constexpr double kMaxMinorCombinations = 1e6;

double factorial(int k) {
  double acc = 1.0;
  for (int i = 2; i <= k; ++i) acc *= static_cast<double>(i);
  return acc;
}

void check_order(int j, int n, const char* who) {
  if (j < 0 || j > n) {
    throw InvalidIndexError(std::string(who) + ": order " + std::to_string(j) +
                            " outside 0.." + std::to_string(n));
  }
}

}  // namespace

double delta_via_minors(const CovarianceMatrix& sigma, int j) {
  const int n = sigma.modes();
  check_order(j, n, "delta_via_minors");
  if (j == 0) return 1.0;

  const double count = internal::binomial(2 * n, 2 * j);
  if (count > kMaxMinorCombinations) {
    throw CombinatorialBlowupError("delta_via_minors: C(" + std::to_string(2 * n) + ", " +
                                   std::to_string(2 * j) + ") = " + std::to_string(count) +
                                   " principal minors exceed the enumeration limit");
  }

  const Mat product = standard_form(n) * sigma.matrix();
  const int order = 2 * j;
  Mat sub(order, order);
  // Kahan-compensated accumulation in fixed lexicographic order keeps the sum
  // deterministic and tight even when minors nearly cancel.
  double sum = 0.0;
  double carry = 0.0;
  internal::for_each_combination(2 * n, order, [&](const std::vector<int>& rows) {
    for (int a = 0; a < order; ++a) {
      for (int b = 0; b < order; ++b) {
        sub(a, b) = product(rows[a], rows[b]);
      }
    }
    const double term = sub.determinant() - carry;
    const double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  });
  return sum;
}

UniversalInvariants delta_via_minors_all(const CovarianceMatrix& sigma) {
  const int n = sigma.modes();
  UniversalInvariants out{std::vector<double>(n + 1), DeltaRoute::kMinors};
  for (int j = 0; j <= n; ++j) out.delta[j] = delta_via_minors(sigma, j);
  return out;
}

UniversalInvariants delta_via_charpoly(const CovarianceMatrix& sigma) {
  const int n = sigma.modes();
  const int dim = 2 * n;
  const Mat a = standard_form(n) * sigma.matrix();

  // Faddeev-LeVerrier for det(tI − A) = Σ c_k t^{dim−k}: purely matrix-product
  // based, hence independent of any eigensolver.
  std::vector<double> c(dim + 1);
  c[0] = 1.0;
  Mat m = Mat::Identity(dim, dim);
  for (int k = 1; k <= dim; ++k) {
    const Mat am = a * m;
    c[k] = -am.trace() / static_cast<double>(k);
    if (k < dim) m = am + c[k] * Mat::Identity(dim, dim);
  }

  UniversalInvariants out{std::vector<double>(n + 1), DeltaRoute::kCharpoly};
  for (int j = 0; j <= n; ++j) out.delta[j] = c[2 * j];
  return out;
}

UniversalInvariants delta_via_spectrum(const SymplecticSpectrum& spectrum) {
  const int n = spectrum.modes();
  if (n < 1) {
    throw InvalidDimensionError("delta_via_spectrum: empty spectrum");
  }
  // Elementary symmetric polynomials in ν² by the ascending recurrence; every
  // term is nonnegative, so nothing cancels.
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    const double w = spectrum.nu[i] * spectrum.nu[i];
    for (int j = std::min(i + 1, n); j >= 1; --j) {
      e[j] += e[j - 1] * w;
    }
  }
  return UniversalInvariants{std::move(e), DeltaRoute::kSpectrum};
}

DeltaProjectionIdentity delta_projection_identity(const CovarianceMatrix& sigma, int j) {
  const int n = sigma.modes();
  check_order(j, n, "delta_projection_identity");

  const double lhs = delta_via_charpoly(sigma).delta[j];
  if (j == 0) {
    return DeltaProjectionIdentity{lhs, 1.0, std::abs(lhs - 1.0)};
  }

  double sum_sq = 0.0;
  internal::for_each_combination(n, j, [&](const std::vector<int>& subset) {
    std::vector<int> modes(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i) modes[i] = subset[i] + 1;
    const auto shadow =
        project_covariance_ellipsoid(sigma, SymplecticSubspace::coordinate(modes, n));
    sum_sq += shadow.volume * shadow.volume;
  });
  const double scale = factorial(j) / std::pow(2.0 * std::numbers::pi, j);
  const double rhs = scale * scale * sum_sq;
  const double residual = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  return DeltaProjectionIdentity{lhs, rhs, residual};
}

}  // namespace sympcov
