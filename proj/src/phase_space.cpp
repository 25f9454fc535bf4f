#include "sympcov/phase_space.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <random>
#include <string>

namespace sympcov {

namespace {

void require_even_square(const Mat& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw InvalidDimensionError(std::string(who) + ": matrix must be square, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (m.rows() < 2 || m.rows() % 2 != 0) {
    throw InvalidDimensionError(std::string(who) + ": dimension must be even and positive, got " +
                                std::to_string(m.rows()));
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

Mat standard_form(int n) {
  if (n < 1) {
    throw InvalidDimensionError("standard_form: mode count must be >= 1, got " +
                                std::to_string(n));
  }
  Mat omega = Mat::Zero(2 * n, 2 * n);
  omega.block(0, n, n, n) = Mat::Identity(n, n);
  omega.block(n, 0, n, n) = -Mat::Identity(n, n);
  return omega;
}

double symplectic_product(const Vec& z, const Vec& z2) {
  if (z.size() != z2.size()) {
    throw InvalidDimensionError("symplectic_product: size mismatch " +
                                std::to_string(z.size()) + " vs " + std::to_string(z2.size()));
  }
  const auto dim = z.size();
  if (dim < 2 || dim % 2 != 0) {
    throw InvalidDimensionError("symplectic_product: dimension must be even and positive, got " +
                                std::to_string(dim));
  }
  const auto n = dim / 2;
  // z2ᵀ Ω z = Σ_j z2_{x_j} z_{p_j} − z2_{p_j} z_{x_j}, without forming Ω.
  double acc = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    acc += z2(j) * z(n + j) - z2(n + j) * z(j);
  }
  return acc;
}

bool is_symplectic(const Mat& m, double tol) {
  require_even_square(m, "is_symplectic");
  const Mat omega = standard_form(static_cast<int>(m.rows()) / 2);
  const double residual = (m * omega * m.transpose() - omega).norm();
  const double scale = std::max(1.0, m.squaredNorm());
  return residual <= tol * scale;
}

SymplecticMatrix::SymplecticMatrix(Mat s, double tolerance) : s_(std::move(s)), tolerance_(tolerance) {
  require_even_square(s_, "SymplecticMatrix");
  if (!is_symplectic(s_, tolerance_)) {
    const Mat omega = standard_form(modes());
    throw ValidationError("SymplecticMatrix: defining relation violated, residual " +
                          std::to_string((s_ * omega * s_.transpose() - omega).norm()));
  }
  const double det = s_.determinant();
  const double det_tol = std::max(tolerance_, 1e-8);
  if (std::abs(det - 1.0) > det_tol) {
    throw ValidationError("SymplecticMatrix: determinant " + std::to_string(det) +
                          " deviates from 1 beyond " + std::to_string(det_tol));
  }
}

SymplecticMatrix random_symplectic(int n, std::uint64_t seed, double spread) {
  if (n < 1) {
    throw InvalidDimensionError("random_symplectic: mode count must be >= 1, got " +
                                std::to_string(n));
  }
  if (spread < 0.0 || !std::isfinite(spread)) {
    throw ValidationError("random_symplectic: spread must be finite and >= 0");
  }
  const int dim = 2 * n;
  std::mt19937_64 rng(seed);
  // Map raw 64-bit draws to [0,1) explicitly so the stream is identical on any
  // platform; distribution adapters are not pinned by the standard.
  auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  Mat h(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      const double v = (2.0 * uniform() - 1.0) * spread;
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  const Mat generator = standard_form(n) * h;  // Hamiltonian: exp of it is symplectic
  Mat s = generator.exp();
  return SymplecticMatrix(std::move(s));
}

SymplecticBasis::SymplecticBasis(int n, Mat vectors) : n_(n), vectors_(std::move(vectors)) {
  if (n_ < 1) {
    throw InvalidDimensionError("SymplecticBasis: mode count must be >= 1, got " +
                                std::to_string(n_));
  }
  if (vectors_.rows() != 2 * n_ || vectors_.cols() % 2 != 0) {
    throw InvalidDimensionError("SymplecticBasis: expected 2n x 2k vector matrix, got " +
                                std::to_string(vectors_.rows()) + "x" +
                                std::to_string(vectors_.cols()) + " for n = " + std::to_string(n_));
  }
  k_ = static_cast<int>(vectors_.cols()) / 2;
  if (k_ > n_) {
    throw InvalidDimensionError("SymplecticBasis: " + std::to_string(k_) + " pairs exceed " +
                                std::to_string(n_) + " modes");
  }
}

double SymplecticBasis::max_pairing_violation() const {
  double worst = 0.0;
  for (int i = 0; i < k_; ++i) {
    for (int j = 0; j < k_; ++j) {
      worst = std::max(worst, std::abs(symplectic_product(e(i), e(j))));
      worst = std::max(worst, std::abs(symplectic_product(f(i), f(j))));
      const double want = (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(symplectic_product(f(i), e(j)) - want));
    }
  }
  return worst;
}

namespace {

constexpr double kPairingFloor = 1e-10;
constexpr double kBasisInvariantTol = 1e-8;

// Removes the symplectic component of v along pair (e, f) with f ∧ e = 1:
// v = α e + β f + w, α = −(v ∧ f), β = v ∧ e.
Vec project_out_pair(const Vec& v, const Vec& e, const Vec& f) {
  const double alpha = -symplectic_product(v, f);
  const double beta = symplectic_product(v, e);
  return v - alpha * e - beta * f;
}

}  // namespace

SymplecticBasis symplectic_gram_schmidt(const SymplecticBasis& partial, int n) {
  if (partial.modes() != n) {
    throw InvalidDimensionError("symplectic_gram_schmidt: basis is over " +
                                std::to_string(partial.modes()) + " modes, requested " +
                                std::to_string(n));
  }
  const int dim = 2 * n;
  const int k0 = partial.pairs();

  for (int i = 0; i < k0; ++i) {
    const double pairing = symplectic_product(partial.f(i), partial.e(i));
    if (std::abs(pairing) < kPairingFloor) {
      throw DegeneratePairingError("symplectic_gram_schmidt: pair " + std::to_string(i + 1) +
                                   " has pairing " + std::to_string(pairing) +
                                   " below threshold");
    }
  }
  if (partial.max_pairing_violation() > kBasisInvariantTol) {
    throw ValidationError("symplectic_gram_schmidt: input pairs violate the canonical pairings "
                          "beyond tolerance");
  }

  std::vector<Vec> es, fs;
  es.reserve(n);
  fs.reserve(n);
  for (int i = 0; i < k0; ++i) {
    es.push_back(partial.e(i));
    fs.push_back(partial.f(i));
  }

  auto project_out_all = [&](Vec v) {
    for (std::size_t i = 0; i < es.size(); ++i) {
      v = project_out_pair(v, es[i], fs[i]);
    }
    return v;
  };

  while (static_cast<int>(es.size()) < n) {
    // New e: the standard unit vector with the largest residual outside the span
    // built so far.
    Vec best_e;
    double best_norm = -1.0;
    for (int c = 0; c < dim; ++c) {
      Vec w = project_out_all(Vec::Unit(dim, c));
      const double norm = w.norm();
      if (norm > best_norm) {
        best_norm = norm;
        best_e = std::move(w);
      }
    }
    if (best_norm < kPairingFloor) {
      throw DegeneratePairingError(
          "symplectic_gram_schmidt: no candidate survives projection; input is degenerate");
    }
    const Vec e_new = best_e / best_norm;

    // Partner: the projected candidate pairing most strongly with e_new, rescaled
    // so the pairing is exactly one.
    Vec best_f;
    double best_pairing = 0.0;
    for (int c = 0; c < dim; ++c) {
      Vec w = project_out_all(Vec::Unit(dim, c));
      const double pairing = symplectic_product(w, e_new);
      if (std::abs(pairing) > std::abs(best_pairing)) {
        best_pairing = pairing;
        best_f = std::move(w);
      }
    }
    if (std::abs(best_pairing) < kPairingFloor) {
      throw DegeneratePairingError(
          "symplectic_gram_schmidt: largest available pairing " + std::to_string(best_pairing) +
          " is below threshold");
    }
    es.push_back(e_new);
    fs.push_back(best_f / best_pairing);
  }

  Mat vectors(dim, 2 * n);
  for (int i = 0; i < n; ++i) {
    vectors.col(i) = es[i];
    vectors.col(n + i) = fs[i];
  }
  return SymplecticBasis(n, std::move(vectors));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 1));
}

}  // namespace sympcov
