// Deterministic random sources. Distributions are implemented on top of raw
// mt19937_64 draws so that a seed pins the output bit-for-bit across
// standard-library implementations.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qmono/types.hpp"

namespace qmono {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  template <typename Real = double>
  Complex<Real> gaussian_complex() {
    const Real re = Real(gaussian());
    const Real im = Real(gaussian());
    return Complex<Real>(re, im);
  }

  template <typename Real = double>
  Vector<Real> gaussian_vector(Eigen::Index n) {
    Vector<Real> v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = gaussian_complex<Real>();
    return v;
  }

  template <typename Real = double>
  Matrix<Real> gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
    Matrix<Real> m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = gaussian_complex<Real>();
    return m;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0;
  bool have_spare_ = false;
};

/// Haar-distributed n x n unitary: QR of a complex Ginibre matrix with the
/// phase convention fixed by a positive real diagonal of R.
template <typename Real = double>
Matrix<Real> haar_unitary(Eigen::Index n, Rng& rng) {
  Matrix<Real> g = rng.gaussian_matrix<Real>(n, n);
  Eigen::HouseholderQR<Matrix<Real>> qr(g);
  Matrix<Real> q = qr.householderQ();
  Matrix<Real> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex<Real> d = r(i, i);
    const Real a = std::abs(d);
    q.col(i) *= (a > 0) ? d / a : Complex<Real>(1, 0);
  }
  return q;
}

/// Isometry with m rows and r orthonormal columns, m >= r: columns extracted
/// from a Haar unitary completion.
template <typename Real = double>
Matrix<Real> haar_isometry(Eigen::Index m, Eigen::Index r, Rng& rng) {
  return haar_unitary<Real>(m, rng).leftCols(r);
}

}  // namespace qmono
