// Named states, seeded random states and state-file loading.
//
// Basis indexing is 0-based throughout: kets written |1>,|2>,... in bra-ket
// listings elsewhere map to |0>,|1>,... here.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmono/io.hpp"
#include "qmono/rng.hpp"
#include "qmono/state.hpp"

namespace qmono {

enum class StateFamilyKind { ghz, w, antisym3, random_pure, random_mixed, file };

struct StateSpec {
  StateFamilyKind kind = StateFamilyKind::ghz;
  int n = 3;                        // subsystem count for ghz / w
  std::vector<int> dims;            // random kinds
  int rank = 1;                     // random_mixed ancilla dimension
  std::optional<std::uint64_t> seed;
  std::string path;                 // file kind

  void check() const {
    switch (kind) {
      case StateFamilyKind::ghz:
      case StateFamilyKind::w:
        if (n < 2) throw std::invalid_argument("StateSpec: ghz/w need n >= 2");
        break;
      case StateFamilyKind::antisym3:
        break;
      case StateFamilyKind::random_pure:
        if (dims.empty()) throw std::invalid_argument("StateSpec: random_pure needs dims");
        if (!seed) throw std::invalid_argument("StateSpec: random_pure needs a seed");
        break;
      case StateFamilyKind::random_mixed:
        if (dims.empty()) throw std::invalid_argument("StateSpec: random_mixed needs dims");
        if (rank < 1) throw std::invalid_argument("StateSpec: random_mixed needs rank >= 1");
        if (!seed) throw std::invalid_argument("StateSpec: random_mixed needs a seed");
        break;
      case StateFamilyKind::file:
        if (path.empty()) throw std::invalid_argument("StateSpec: file kind needs a path");
        break;
    }
  }
};

template <typename Real = double>
QuantumState<Real> make_ghz(int n) {
  SystemLayout layout(std::vector<int>(n, 2));
  Vector<Real> amps = Vector<Real>::Zero(layout.total_dim());
  const Real a = Real(1) / std::sqrt(Real(2));
  amps(0) = a;
  amps(layout.total_dim() - 1) = a;
  return QuantumState<Real>(std::move(layout), std::move(amps));
}

template <typename Real = double>
QuantumState<Real> make_w(int n) {
  SystemLayout layout(std::vector<int>(n, 2));
  Vector<Real> amps = Vector<Real>::Zero(layout.total_dim());
  const Real a = Real(1) / std::sqrt(Real(n));
  for (int q = 0; q < n; ++q) amps(1L << (n - 1 - q)) = a;
  return QuantumState<Real>(std::move(layout), std::move(amps));
}

/// The totally antisymmetric two-excitation-free qutrit singlet
/// (|012> - |021> + |120> - |102> + |201> - |210>) / sqrt(6).
template <typename Real = double>
QuantumState<Real> make_antisym3() {
  SystemLayout layout({3, 3, 3});
  Vector<Real> amps = Vector<Real>::Zero(27);
  const Real a = Real(1) / std::sqrt(Real(6));
  const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
  for (int p = 0; p < 6; ++p) {
    const int sign = p < 3 ? 1 : -1;
    amps(perms[p][0] * 9 + perms[p][1] * 3 + perms[p][2]) = Real(sign) * a;
  }
  return QuantumState<Real>(std::move(layout), std::move(amps));
}

/// Haar-distributed pure state: normalized standard complex Gaussian vector.
template <typename Real = double>
QuantumState<Real> make_random_pure(const std::vector<int>& dims, std::uint64_t seed) {
  SystemLayout layout(dims);
  Rng rng(seed);
  Vector<Real> amps = rng.gaussian_vector<Real>(layout.total_dim());
  amps /= amps.norm();
  return QuantumState<Real>(std::move(layout), std::move(amps));
}

/// Induced random mixed state: focus marginal of a Haar-random pure state on
/// system x ancilla, ancilla dimension = rank.
template <typename Real = double>
QuantumState<Real> make_random_mixed(const std::vector<int>& dims, int rank, std::uint64_t seed) {
  SystemLayout layout(dims);
  const long d = layout.total_dim();
  Rng rng(seed);
  Matrix<Real> g = rng.gaussian_matrix<Real>(d, rank);
  Matrix<Real> rho = g * g.adjoint();
  rho /= rho.trace().real();
  return QuantumState<Real>(std::move(layout), std::move(rho));
}

template <typename Real = double>
QuantumState<Real> make(const StateSpec& spec) {
  spec.check();
  switch (spec.kind) {
    case StateFamilyKind::ghz: return make_ghz<Real>(spec.n);
    case StateFamilyKind::w: return make_w<Real>(spec.n);
    case StateFamilyKind::antisym3: return make_antisym3<Real>();
    case StateFamilyKind::random_pure: return make_random_pure<Real>(spec.dims, *spec.seed);
    case StateFamilyKind::random_mixed: return make_random_mixed<Real>(spec.dims, spec.rank, *spec.seed);
    case StateFamilyKind::file: return load<Real>(spec.path);
  }
  throw std::invalid_argument("make: unknown state kind");
}

/// Gamma = rho (x) sigma with concatenated layout; the focus stays untangled
/// from every ancilla subsystem, so pairwise measures against them vanish.
template <typename Real = double>
QuantumState<Real> embed_ancilla(const QuantumState<Real>& rho, const QuantumState<Real>& sigma,
                                 long max_dim = default_max_dim) {
  return tensor(rho, sigma, max_dim);
}

}  // namespace qmono
