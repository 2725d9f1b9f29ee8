// Two-qubit concurrence machinery and the closed-form map from concurrence
// to Renyi-alpha entanglement.

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "qmono/entropy.hpp"
#include "qmono/linalg.hpp"

namespace qmono {

namespace detail {

template <typename Real>
Matrix<Real> spin_flip_matrix() {
  // (sigma_y (x) sigma_y) in the computational basis |00>,|01>,|10>,|11>.
  Matrix<Real> f = Matrix<Real>::Zero(4, 4);
  f(0, 3) = Complex<Real>(-1, 0);
  f(1, 2) = Complex<Real>(1, 0);
  f(2, 1) = Complex<Real>(1, 0);
  f(3, 0) = Complex<Real>(-1, 0);
  return f;
}

/// The four Wootters lambdas in descending order: square roots of the
/// eigenvalues of rho * (yy rho^* yy). Computed through the Hermitian form
/// sqrt(rho) rho~ sqrt(rho) for numerical stability.
template <typename Real>
std::array<Real, 4> wootters_lambdas(const QuantumState<Real>& state) {
  if (state.layout.dims != std::vector<int>{2, 2})
    throw std::invalid_argument("concurrence: layout must be two qubits [2,2]");
  const QuantumState<Real> dens = to_density(state);

  Eigen::SelfAdjointEigenSolver<Matrix<Real>> es(dens.rho);
  Matrix<Real> sqrt_rho = Matrix<Real>::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    const Real ev = std::max<Real>(es.eigenvalues()(i), 0);
    sqrt_rho += std::sqrt(ev) * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }

  const Matrix<Real> flip = spin_flip_matrix<Real>();
  const Matrix<Real> rho_tilde = flip * dens.rho.conjugate() * flip;
  const Matrix<Real> r2 = sqrt_rho * rho_tilde * sqrt_rho;

  Eigen::SelfAdjointEigenSolver<Matrix<Real>> es2((r2 + r2.adjoint()) / Real(2), Eigen::EigenvaluesOnly);
  // Rank-deficient inputs put pure rounding noise (~1e-16) into the small
  // eigenvalues; the square root would amplify it to ~1e-8. Threshold first.
  const Real floor = std::max<Real>(Real(1e-14), es2.eigenvalues().cwiseAbs().maxCoeff() * Real(1e-12));
  std::array<Real, 4> lambdas{};
  for (int i = 0; i < 4; ++i) {
    const Real ev = es2.eigenvalues()(3 - i);
    lambdas[i] = ev > floor ? std::sqrt(ev) : Real(0);
  }
  return lambdas;
}

}  // namespace detail

/// Wootters concurrence of a two-qubit state, in [0, 1].
template <typename Real>
Real concurrence(const QuantumState<Real>& state) {
  const auto l = detail::wootters_lambdas(state);
  const Real c = l[0] - l[1] - l[2] - l[3];
  return c > 0 ? c : Real(0);
}

/// Sum of the Wootters lambdas, the dual assistance quantity.
template <typename Real>
Real concurrence_of_assistance(const QuantumState<Real>& state) {
  const auto l = detail::wootters_lambdas(state);
  return l[0] + l[1] + l[2] + l[3];
}

/// Analytic two-qubit map f_alpha(c): the Renyi-alpha entanglement of a pure
/// two-qubit state with concurrence c. Valid (as the mixed-state roof value)
/// for alpha >= 2.
inline double renyi_from_concurrence(double c, const AlphaParam& alpha) {
  if (c < 0 || c > 1) throw std::invalid_argument("renyi_from_concurrence: c must be in [0,1]");
  if (alpha.alpha < 2) throw std::invalid_argument("renyi_from_concurrence: requires alpha >= 2");
  if (c == 0) return 0;
  const double root = std::sqrt(1.0 - c * c);
  const double lo = (1.0 - root) / 2.0;
  const double hi = (1.0 + root) / 2.0;
  const double power_sum = std::pow(lo, alpha.alpha) + std::pow(hi, alpha.alpha);
  return std::log2(power_sum) / (1.0 - alpha.alpha);
}

}  // namespace qmono
