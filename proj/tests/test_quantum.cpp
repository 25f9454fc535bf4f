#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sympcov/io.hpp"
#include "sympcov/quantum.hpp"
#include "test_support.hpp"

using namespace sympcov;

namespace {

std::string fixture_path(const char* name) {
  return std::string(SYMPCOV_FIXTURE_DIR) + "/" + name;
}

CovarianceMatrix thermal(const std::vector<double>& nu, double hbar = 1.0) {
  const int n = static_cast<int>(nu.size());
  Mat m = Mat::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    m(j, j) = nu[j];
    m(n + j, n + j) = nu[j];
  }
  return CovarianceMatrix(m, hbar);
}

}  // namespace

TEST_CASE("vacuum sits exactly on the boundary") {
  for (double hbar : {1.0, 2.0}) {
    const CovarianceMatrix vac(0.5 * hbar * Mat::Identity(6, 6), hbar);
    const auto report = quantum_validity_report(vac);
    CHECK(report.valid_hermitian);
    CHECK(report.valid_spectrum);
    CHECK(report.marginal);
    CHECK(std::abs(report.margin) <= 1e-10 * hbar);
    CHECK(report.nu_min == doctest::Approx(0.5 * hbar).epsilon(1e-12));
    // width of the boundary state is half the Planck constant
    CHECK(report.gromov_width == doctest::Approx(std::numbers::pi * hbar).epsilon(1e-12));
    for (bool ok : report.rs_per_mode) CHECK(ok);
  }
}

TEST_CASE("clear-cut valid and invalid states") {
  const CovarianceMatrix hot = thermal({1.5, 2.0});
  CHECK(is_quantum_hermitian(hot));
  CHECK(is_quantum_spectrum(hot));
  CHECK_FALSE(quantum_validity_report(hot).marginal);

  const CovarianceMatrix squeezed = thermal({0.3, 2.0});
  CHECK_FALSE(is_quantum_hermitian(squeezed));
  CHECK_FALSE(is_quantum_spectrum(squeezed));

  // hbar matters: the same matrix read against hbar=2 has a higher bar to clear
  const CovarianceMatrix same_but_hbar2 = thermal({1.5, 2.0}, 2.0);
  CHECK(is_quantum_spectrum(same_but_hbar2));
  const CovarianceMatrix failing_hbar2 = thermal({0.8, 2.0}, 2.0);
  CHECK_FALSE(is_quantum_spectrum(failing_hbar2));
}

TEST_CASE("hermitian and spectrum routes never disagree off the boundary") {
  int valid_seen = 0, invalid_seen = 0;
  for (int n = 1; n <= 5; ++n) {
    for (int rep = 0; rep < 60; ++rep) {
      const CovarianceMatrix sigma =
          support::random_mixed_covariance(n, mix_seed(3000 + n, rep));
      const bool h = is_quantum_hermitian(sigma);
      const bool s = is_quantum_spectrum(sigma);
      CHECK(h == s);
      (h ? valid_seen : invalid_seen) += 1;

      const auto report = quantum_validity_report(sigma);
      CHECK(report.valid_hermitian == h);
      CHECK((report.margin > 0) == s);
    }
  }
  // the mixed generator must actually exercise both answers
  CHECK(valid_seen > 30);
  CHECK(invalid_seen > 30);
}

TEST_CASE("validity implies every per-mode uncertainty product") {
  for (int n = 2; n <= 4; ++n) {
    for (int rep = 0; rep < 40; ++rep) {
      const CovarianceMatrix sigma =
          support::random_mixed_covariance(n, mix_seed(4400 + n, rep));
      if (!is_quantum_spectrum(sigma)) continue;
      for (bool ok : robertson_schrodinger(sigma)) CHECK(ok);
    }
  }
}

TEST_CASE("per-mode products are weaker than validity") {
  // Two modes, positions correlated across modes and momenta likewise. Each
  // mode alone looks like a comfortable thermal state; the correlations push
  // the smallest normal-form eigenvalue far below hbar/2.
  Mat m = Mat::Zero(4, 4);
  m.block(0, 0, 2, 2) << 1.0, 0.8, 0.8, 1.0;
  m.block(2, 2, 2, 2) << 1.0, 0.8, 0.8, 1.0;
  const CovarianceMatrix sigma(m, 1.0);

  const auto rs = robertson_schrodinger(sigma);
  REQUIRE(rs.size() == 2);
  CHECK(rs[0]);
  CHECK(rs[1]);
  CHECK_FALSE(is_quantum_hermitian(sigma));
  CHECK_FALSE(is_quantum_spectrum(sigma));
  const auto nu = symplectic_eigenvalues(sigma);
  CHECK(nu.nu_min() == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("stored witness fixture") {
  ParseOptions opts;
  const InputDocument doc = parse_input_file(fixture_path("rs_witness.csv"), opts);
  const CovarianceMatrix sigma = to_covariance(doc);
  REQUIRE(sigma.modes() == 2);
  for (bool ok : robertson_schrodinger(sigma)) CHECK(ok);
  CHECK_FALSE(is_quantum_hermitian(sigma));
  CHECK_FALSE(is_quantum_spectrum(sigma));
}

TEST_CASE("boundary matrix eigenvalues match the factored roots") {
  for (int n = 1; n <= 5; ++n) {
    const CovarianceMatrix sigma = support::random_valid_covariance(n, 600 + n);
    const auto factors = uncertainty_charpoly_factors(sigma);
    REQUIRE(static_cast<int>(factors.size()) == n);

    std::vector<double> roots;
    for (const auto& f : factors) {
      CHECK(f[0] == 1.0);
      CHECK(f[1] == -2.0);
      // roots of t² − 2t + c are 1 ± sqrt(1 − c)
      const double disc = std::sqrt(std::max(0.0, 1.0 - f[2]));
      roots.push_back(1.0 - disc);
      roots.push_back(1.0 + disc);
    }
    std::sort(roots.begin(), roots.end());

    const auto eigs = boundary_matrix_eigenvalues(sigma);
    REQUIRE(eigs.size() == roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
      CHECK(support::rel_diff(eigs[i], roots[i]) < 1e-8);
    }
  }
}

TEST_CASE("factor constant term changes sign exactly at the validity threshold") {
  // exact algebra: 1 − hbar²/(4nu²) ≥ 0 ⇔ nu ≥ hbar/2
  const double hbar = 2.0;
  const CovarianceMatrix sigma = thermal({0.6, 1.0, 1.7}, hbar);
  const auto factors = uncertainty_charpoly_factors(sigma);
  const auto nu = symplectic_eigenvalues(sigma);
  for (int j = 0; j < 3; ++j) {
    CHECK((factors[j][2] >= -1e-12) == (nu.nu[j] >= 0.5 * hbar * (1 - 1e-12)));
  }
}

TEST_CASE("width of the covariance ellipsoid") {
  // diagonal single mode: the smallest cross-section lives on the conjugate
  // plane, radius sqrt(2 nu_min)
  Mat d = Mat::Zero(2, 2);
  d.diagonal() << 4.0, 1.0;
  CHECK(gromov_width(CovarianceMatrix(d)) ==
        doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-12));

  const CovarianceMatrix sigma = support::random_valid_covariance(3, 77);
  const double w = gromov_width(sigma);
  CHECK(w == doctest::Approx(2.0 * std::numbers::pi *
                             symplectic_eigenvalues(sigma).nu_min())
                 .epsilon(1e-12));

  // linear scaling
  const CovarianceMatrix scaled(2.5 * sigma.matrix(), sigma.hbar());
  CHECK(support::rel_diff(gromov_width(scaled), 2.5 * w) < 1e-12);

  // width is symplectically invariant
  const SymplecticMatrix s = random_symplectic(3, 78, 1.0);
  CHECK(support::rel_diff(gromov_width(apply_congruence(sigma, s)), w) < 1e-9);

  // validity in width form: w ≥ h/2 with equality at the boundary
  const CovarianceMatrix vac(0.5 * Mat::Identity(4, 4));
  CHECK(gromov_width(vac) == doctest::Approx(0.5 * vac.planck()).epsilon(1e-12));
}
