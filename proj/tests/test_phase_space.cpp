#include <doctest.h>

#include <cmath>
#include <random>

#include "sympcov/phase_space.hpp"
#include "test_support.hpp"

using namespace sympcov;

TEST_CASE("standard form") {
  const Mat omega = standard_form(1);
  CHECK(omega(0, 0) == 0.0);
  CHECK(omega(0, 1) == 1.0);
  CHECK(omega(1, 0) == -1.0);
  CHECK(omega(1, 1) == 0.0);

  const Mat omega3 = standard_form(3);
  CHECK((omega3 * omega3 + Mat::Identity(6, 6)).norm() == 0.0);  // Ω² = −I exactly
  CHECK((omega3 + omega3.transpose()).norm() == 0.0);
}

TEST_CASE("symplectic product orientation") {
  // z = x-axis, z2 = p-axis of the same mode: x ∧ p = p-row of Ω applied... the
  // convention is z ∧ z2 = z2ᵀ Ω z, so the unit x and p vectors pair to −1.
  Vec x = Vec::Zero(2), p = Vec::Zero(2);
  x(0) = 1.0;
  p(1) = 1.0;
  CHECK(symplectic_product(x, p) == doctest::Approx(-1.0));
  CHECK(symplectic_product(p, x) == doctest::Approx(1.0));
  CHECK(symplectic_product(x, x) == 0.0);

  SUBCASE("matches the matrix form and is bilinear") {
    std::mt19937_64 rng(7);
    const Mat omega = standard_form(3);
    for (int trial = 0; trial < 50; ++trial) {
      Vec a(6), b(6), c(6);
      for (int i = 0; i < 6; ++i) {
        a(i) = 2.0 * support::unit_interval(rng) - 1.0;
        b(i) = 2.0 * support::unit_interval(rng) - 1.0;
        c(i) = 2.0 * support::unit_interval(rng) - 1.0;
      }
      const double s = 4.0 * support::unit_interval(rng) - 2.0;
      CHECK(symplectic_product(a, b) == doctest::Approx(b.dot(omega * a)).epsilon(1e-12));
      CHECK(symplectic_product(a, b) == doctest::Approx(-symplectic_product(b, a)).epsilon(1e-12));
      const double lhs = symplectic_product(a + s * c, b);
      const double rhs = symplectic_product(a, b) + s * symplectic_product(c, b);
      CHECK(support::rel_diff(lhs, rhs) < 1e-12);
    }
  }
}

TEST_CASE("is_symplectic") {
  CHECK(is_symplectic(Mat::Identity(4, 4)));
  CHECK(is_symplectic(standard_form(2)));

  Mat squeeze = Mat::Zero(2, 2);
  squeeze(0, 0) = 2.0;
  squeeze(1, 1) = 0.5;
  CHECK(is_symplectic(squeeze));

  Mat bad = Mat::Identity(2, 2);
  bad(0, 0) = 2.0;  // det 2, breaks the relation
  CHECK_FALSE(is_symplectic(bad));

  CHECK_THROWS_AS(is_symplectic(Mat::Identity(3, 3)), InvalidDimensionError);
  CHECK_THROWS_AS(is_symplectic(Mat::Zero(2, 4)), InvalidDimensionError);
}

TEST_CASE("SymplecticMatrix construction gate") {
  CHECK_NOTHROW(SymplecticMatrix(Mat::Identity(6, 6)));
  CHECK_THROWS_AS(SymplecticMatrix(2.0 * Mat::Identity(2, 2)), ValidationError);

  const SymplecticMatrix s = random_symplectic(3, 99, 1.0);
  CHECK(s.modes() == 3);
  CHECK(s.dim() == 6);
  CHECK(std::abs(s.matrix().determinant() - 1.0) < 1e-8);
}

TEST_CASE("random_symplectic determinism and structure") {
  const SymplecticMatrix a = random_symplectic(4, 2024, 1.0);
  const SymplecticMatrix b = random_symplectic(4, 2024, 1.0);
  CHECK((a.matrix() - b.matrix()).norm() == 0.0);  // bitwise identical

  const SymplecticMatrix c = random_symplectic(4, 2025, 1.0);
  CHECK((a.matrix() - c.matrix()).norm() > 1e-3);

  CHECK((random_symplectic(2, 5, 0.0).matrix() - Mat::Identity(4, 4)).norm() == 0.0);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SymplecticMatrix s = random_symplectic(3, seed, 2.0);
    CHECK(is_symplectic(s.matrix()));
    CHECK(std::abs(s.matrix().determinant() - 1.0) < 1e-8);
  }
}

TEST_CASE("mix_seed decorrelates trial indices") {
  CHECK(mix_seed(42, 0) != mix_seed(42, 1));
  CHECK(mix_seed(42, 0) != mix_seed(43, 0));
  CHECK(mix_seed(42, 7) == mix_seed(42, 7));
}

TEST_CASE("symplectic basis bookkeeping") {
  const SymplecticBasis empty = SymplecticBasis::empty(3);
  CHECK(empty.pairs() == 0);
  CHECK(empty.modes() == 3);
  CHECK(empty.max_pairing_violation() == 0.0);

  CHECK_THROWS_AS(SymplecticBasis(2, Mat::Zero(4, 3)), InvalidDimensionError);  // odd columns
  CHECK_THROWS_AS(SymplecticBasis(2, Mat::Zero(3, 2)), InvalidDimensionError);  // odd rows

  // The standard basis of mode 1 inside n=2.
  Mat cols = Mat::Zero(4, 2);
  cols(0, 0) = 1.0;  // e_1 = x_1
  cols(2, 1) = 1.0;  // f_1 = p_1
  const SymplecticBasis one_pair(2, cols);
  CHECK(one_pair.pairs() == 1);
  CHECK(one_pair.max_pairing_violation() == doctest::Approx(0.0));
}

TEST_CASE("symplectic Gram-Schmidt") {
  SUBCASE("completes the empty basis to the standard one") {
    const SymplecticBasis full = symplectic_gram_schmidt(SymplecticBasis::empty(3), 3);
    CHECK(full.pairs() == 3);
    CHECK(full.max_pairing_violation() < 1e-12);
    // Candidates are the standard unit vectors, so the result is the standard basis
    // up to the e/f column split: assembling [e|f] must give a symplectic matrix.
    CHECK(is_symplectic(full.vectors()));
  }

  SUBCASE("random seeds produce canonical pairings") {
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 25; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 4);
      Mat pair = Mat::Zero(2 * n, 2);
      Vec v(2 * n);
      for (int i = 0; i < 2 * n; ++i) v(i) = 2.0 * support::unit_interval(rng) - 1.0;
      Vec w(2 * n);
      for (int i = 0; i < 2 * n; ++i) w(i) = 2.0 * support::unit_interval(rng) - 1.0;
      const double pairing = symplectic_product(w, v);  // w ∧ v, the f ∧ e slot
      if (std::abs(pairing) < 1e-3) continue;
      pair.col(0) = v;
      pair.col(1) = w / pairing;  // force f ∧ e = 1
      const SymplecticBasis seeded(n, pair);
      REQUIRE(seeded.max_pairing_violation() < 1e-9);

      const SymplecticBasis full = symplectic_gram_schmidt(seeded, n);
      CHECK(full.pairs() == n);
      CHECK(full.max_pairing_violation() < 1e-8);
      CHECK(is_symplectic(full.vectors(), 1e-8));
      // the seeded pair must survive verbatim
      CHECK((full.e(0) - seeded.e(0)).norm() == 0.0);
      CHECK((full.f(0) - seeded.f(0)).norm() == 0.0);
    }
  }

  SUBCASE("rejects a partial basis that breaks the pairing table") {
    Mat cols = Mat::Zero(4, 2);
    cols(0, 0) = 1.0;  // e_1 = x_1
    cols(1, 1) = 1.0;  // f_1 = x_2: pairing f ∧ e = 0, not 1
    CHECK_THROWS_AS(symplectic_gram_schmidt(SymplecticBasis(2, cols), 2),
                    DegeneratePairingError);
  }
}
