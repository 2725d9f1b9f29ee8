// Renyi-alpha entropy of density operators, base-2 logarithms throughout.

#pragma once

#include <cmath>
#include <stdexcept>

#include "qmono/linalg.hpp"

namespace qmono {

/// The Renyi order. alpha = 1 is reserved for the von Neumann limit and is
/// rejected by the alpha != 1 formula.
struct AlphaParam {
  double alpha;

  explicit AlphaParam(double a) : alpha(a) {
    if (!(a > 0)) throw std::invalid_argument("alpha must be > 0");
  }
  bool is_von_neumann_limit() const { return alpha == 1.0; }
};

namespace detail {

template <typename Real>
Real renyi_from_eigenvalues(const RealVector<Real>& lambda, double alpha) {
  Real power_sum = 0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (lambda(i) > 0) power_sum += std::pow(lambda(i), Real(alpha));
  Real s = Real(1.0 / (1.0 - alpha)) * Real(std::log2(double(power_sum)));
  if (s < 0 && s > Real(-1e-12)) s = 0;  // rounding right at a pure spectrum
  return s;
}

template <typename Real>
Real von_neumann_from_eigenvalues(const RealVector<Real>& lambda) {
  Real s = 0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (lambda(i) > 0) s -= lambda(i) * Real(std::log2(double(lambda(i))));
  return s < 0 ? Real(0) : s;
}

}  // namespace detail

/// S_alpha(rho) = log2(tr rho^alpha) / (1 - alpha), in bits. Pure inputs are
/// promoted. Use von_neumann_entropy for alpha = 1.
template <typename Real>
Real renyi_entropy(const QuantumState<Real>& rho, const AlphaParam& alpha) {
  if (alpha.is_von_neumann_limit())
    throw std::invalid_argument("renyi_entropy: alpha = 1 is the von Neumann limit; call von_neumann_entropy");
  const auto spec = eig_hermitian(rho);
  return detail::renyi_from_eigenvalues(spec.eigenvalues, alpha.alpha);
}

/// -sum lambda log2 lambda with 0 log 0 = 0, in bits.
template <typename Real>
Real von_neumann_entropy(const QuantumState<Real>& rho) {
  const auto spec = eig_hermitian(rho);
  return detail::von_neumann_from_eigenvalues(spec.eigenvalues);
}

}  // namespace qmono
