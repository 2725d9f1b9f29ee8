// Convex-roof optimization over pure-state decompositions.
//
// Every length-m decomposition of a rank-r state arises from the
// eigendecomposition ensemble through an m x r isometry U:
//     sqrt(p_j) |phi_j> = sum_i U_ji sqrt(lambda_i) |e_i>.
// Each restart draws a Haar isometry and refines it by sweeping over member
// pairs, optimizing a 2x2 rotation-with-phase per pair by grid search plus
// local shrinking refinement. Updates are accepted only when they improve
// the ensemble average, so every restart is monotone; restarts are seeded
// from opts.seed + restart index and merged by a best-of reduction ordered
// by restart index.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qmono/linalg.hpp"
#include "qmono/rng.hpp"

namespace qmono {

/// A pure-state ensemble {p_i, |psi_i>} realizing a mixed state.
template <typename Real = double>
struct Decomposition {
  std::vector<Real> weights;
  std::vector<Vector<Real>> vectors;  // normalized members

  int size() const { return static_cast<int>(weights.size()); }
};

struct RoofOptions {
  int restarts = 50;
  int max_ensemble = 0;  // 0: use 2 * rank, capped at 16
  double tol = 1e-7;
  int max_iters = 500;   // pair sweeps per restart
  std::uint64_t seed = 0;
};

template <typename Real = double>
struct RoofResult {
  Real value = 0;                  // best ensemble average found
  Decomposition<Real> decomposition;
  bool converged = false;          // best restart stopped on tol, not on max_iters
  int restarts = 0;
};

template <typename Real>
Matrix<Real> reconstruct(const Decomposition<Real>& dec) {
  if (dec.weights.empty()) throw std::invalid_argument("reconstruct: empty decomposition");
  const Eigen::Index d = dec.vectors.front().size();
  Matrix<Real> rho = Matrix<Real>::Zero(d, d);
  for (int i = 0; i < dec.size(); ++i) rho += dec.weights[i] * dec.vectors[i] * dec.vectors[i].adjoint();
  return rho;
}

template <typename Real>
Real reconstruction_error(const Decomposition<Real>& dec, const Matrix<Real>& target) {
  return (reconstruct(dec) - target).norm();
}

namespace detail {

/// Ensemble average of `functional` over unnormalized members v_j with
/// p_j = |v_j|^2. The functional must be scale-invariant (it sees the raw
/// member and normalizes internally).
template <typename Real, typename F>
Real ensemble_average(const std::vector<Vector<Real>>& members, const F& functional) {
  Real avg = 0;
  for (const auto& v : members) {
    const Real p = v.squaredNorm();
    if (p < Real(1e-14)) continue;
    avg += p * functional(v);
  }
  return avg;
}

template <typename Real, typename F>
class PairSweeper {
 public:
  PairSweeper(std::vector<Vector<Real>>& members, const F& functional, int sign)
      : members_(members), functional_(functional), sign_(sign) {
    if (!members.empty()) {
      scratch_a_.resize(members.front().size());
      scratch_b_.resize(members.front().size());
    }
  }

  Real member_term(const Vector<Real>& v) const {
    const Real p = v.squaredNorm();
    if (p < Real(1e-14)) return 0;
    return p * functional_(v);
  }

  /// One full sweep over member pairs in shuffled order; returns the total
  /// signed improvement. Shuffling breaks the systematic cycling that traps
  /// lexicographic Jacobi sweeps. A pair whose members are untouched since
  /// its last examination cannot improve and is skipped.
  Real sweep(Real coarse_skip, Rng& rng) {
    const int m = static_cast<int>(members_.size());
    if (pairs_.empty()) {
      for (int j = 0; j < m; ++j)
        for (int k = j + 1; k < m; ++k) pairs_.push_back({j, k, -1, -1});
      versions_.assign(m, 0);
    }
    for (size_t i = pairs_.size(); i > 1; --i) std::swap(pairs_[i - 1], pairs_[size_t(rng.uniform() * i) % i]);
    Real gained = 0;
    for (auto& pair : pairs_) {
      if (pair.seen_j == versions_[pair.j] && pair.seen_k == versions_[pair.k]) continue;
      pair.seen_j = versions_[pair.j];
      pair.seen_k = versions_[pair.k];
      const Real g = optimize_pair(pair.j, pair.k, coarse_skip);
      if (g > 0) {
        ++versions_[pair.j];
        ++versions_[pair.k];
        pair.seen_j = versions_[pair.j];
        pair.seen_k = versions_[pair.k];
        gained += g;
      }
    }
    return gained;
  }

 private:
  // Objective for the pair (j,k) rotated by (theta, phi); lower is better
  // after sign folding. Uses preallocated scratch, no heap traffic.
  Real pair_objective(const Vector<Real>& vj, const Vector<Real>& vk, Real theta, Real phi) const {
    const Real c = std::cos(theta), s = std::sin(theta);
    const Complex<Real> e(std::cos(phi), std::sin(phi));
    scratch_a_.noalias() = c * vj + (e * s) * vk;
    scratch_b_.noalias() = (-std::conj(e) * s) * vj + c * vk;
    return Real(sign_) * (member_term(scratch_a_) + member_term(scratch_b_));
  }

  Real optimize_pair(int j, int k, Real coarse_skip) {
    const Vector<Real>& vj = members_[j];
    const Vector<Real>& vk = members_[k];
    const Real base = Real(sign_) * (member_term(vj) + member_term(vk));

    // Rotations by theta in (pi/2, pi) are phase-equivalent to pi - theta
    // with phi + pi, so [0, pi/2] covers every pair move. The ladder is
    // logarithmic near zero: improvements of nearly-stationary sweeps hide
    // at small angles that a uniform grid never samples.
    static constexpr Real thetas[] = {Real(1e-3), Real(3e-3), Real(8e-3), Real(0.02), Real(0.05),
                                      Real(0.12), Real(0.25), Real(0.45), Real(0.7),  Real(1.0),
                                      Real(1.3),  Real(std::numbers::pi / 2)};
    constexpr int theta_grid = int(sizeof(thetas) / sizeof(thetas[0]));
    constexpr int phi_grid = 8;
    const Real pi = Real(std::numbers::pi);

    Real best = base, best_theta = 0, best_phi = 0;
    Real best_dt = 0;
    for (int ti = 0; ti < theta_grid; ++ti) {
      for (int pi_i = 0; pi_i < phi_grid; ++pi_i) {
        const Real phi = 2 * pi * Real(pi_i) / Real(phi_grid);
        const Real obj = pair_objective(vj, vk, thetas[ti], phi);
        if (obj < best) {
          best = obj;
          best_theta = thetas[ti];
          best_phi = phi;
          best_dt = ti + 1 < theta_grid ? thetas[ti + 1] - thetas[ti] : thetas[ti] - thetas[ti - 1];
        }
      }
    }
    if (base - best < coarse_skip) return 0;

    // Shrinking 3x3 refinement around the best ladder point.
    Real dt = best_dt, dp = 2 * pi / Real(phi_grid);
    for (int round = 0; round < 6; ++round) {
      dt /= 3;
      dp /= 3;
      const Real round_base = best;
      for (int a = -1; a <= 1; ++a) {
        for (int b = -1; b <= 1; ++b) {
          if (a == 0 && b == 0) continue;
          const Real theta = best_theta + Real(a) * dt;
          const Real phi = best_phi + Real(b) * dp;
          const Real obj = pair_objective(vj, vk, theta, phi);
          if (obj < best) {
            best = obj;
            best_theta = theta;
            best_phi = phi;
          }
        }
      }
      if (round_base - best < coarse_skip / 10) break;
    }

    if (best >= base) return 0;
    const Real c = std::cos(best_theta), s = std::sin(best_theta);
    const Complex<Real> e(std::cos(best_phi), std::sin(best_phi));
    scratch_a_.noalias() = c * vj + (e * s) * vk;
    scratch_b_.noalias() = (-std::conj(e) * s) * vj + c * vk;
    members_[j] = scratch_a_;
    members_[k] = scratch_b_;
    return base - best;
  }

  std::vector<Vector<Real>>& members_;
  const F& functional_;
  int sign_;  // +1 minimize, -1 maximize
  struct Pair {
    int j, k;
    long seen_j, seen_k;
  };
  std::vector<Pair> pairs_;
  std::vector<long> versions_;
  mutable Vector<Real> scratch_a_, scratch_b_;
};

}  // namespace detail

enum class RoofDirection { minimize, maximize };

/// Optimize the convex-roof average of `functional` (a scale-invariant
/// pure-state quantity over the state's full space) over decompositions of
/// `rho`. The returned value is an upper bound on the true
/// minimum (direction minimize) or a lower bound on the true maximum.
template <typename Real, typename F>
RoofResult<Real> roof_optimize(const QuantumState<Real>& rho, const F& functional,
                               RoofDirection direction, const RoofOptions& opts = {}) {
  if (opts.restarts < 1) throw std::invalid_argument("roof_optimize: restarts must be >= 1");
  const QuantumState<Real> dens = to_density(rho);
  const auto spec = eig_hermitian(dens.rho, true);

  // Support vectors scaled by sqrt(eigenvalue).
  std::vector<Vector<Real>> support;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    if (spec.eigenvalues(i) > Real(1e-12))
      support.push_back(std::sqrt(spec.eigenvalues(i)) * spec.eigenvectors->col(i));
  }
  const int rank = static_cast<int>(support.size());
  if (rank == 0) throw std::invalid_argument("roof_optimize: zero state");

  const int sign = direction == RoofDirection::minimize ? 1 : -1;

  auto finish = [&](std::vector<Vector<Real>> members, Real value, bool converged, int restarts) {
    RoofResult<Real> res;
    res.value = value;
    res.converged = converged;
    res.restarts = restarts;
    for (auto& v : members) {
      const Real p = v.squaredNorm();
      if (p < Real(1e-12)) continue;
      res.decomposition.weights.push_back(p);
      res.decomposition.vectors.push_back(v / std::sqrt(p));
    }
    return res;
  };

  if (rank == 1) {
    // Pure state: the decomposition is unique.
    std::vector<Vector<Real>> members{support[0]};
    const Real value = detail::ensemble_average(members, functional);
    return finish(std::move(members), value, true, 0);
  }

  const int m_cap = opts.max_ensemble > 0 ? opts.max_ensemble : std::min(2 * rank, 16);
  if (m_cap < rank) throw std::invalid_argument("roof_optimize: max_ensemble below rank");

  Real best_value = 0;
  std::vector<Vector<Real>> best_members;
  bool best_converged = false;
  bool have_best = false;

  // TODO: restarts are independent given their seeds and the merge below is
  // an ordered reduction, so this loop can run on a thread pool unchanged.
  for (int restart = 0; restart < opts.restarts; ++restart) {
    // Minimal ensembles have a much better-conditioned landscape, larger
    // ones a bigger search space; alternate between them up to the cap.
    const int m = restart % 2 == 0 ? rank : m_cap;
    Rng rng(opts.seed + std::uint64_t(restart));
    const Matrix<Real> iso = haar_isometry<Real>(m, rank, rng);
    std::vector<Vector<Real>> members(m, Vector<Real>::Zero(dens.dim()));
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < rank; ++i) members[j] += iso(j, i) * support[i];

    detail::PairSweeper<Real, F> sweeper(members, functional, sign);
    const Real skip = Real(opts.tol) / Real(10);
    bool converged = false;
    for (int iter = 0; iter < opts.max_iters; ++iter) {
      if (sweeper.sweep(skip, rng) < Real(opts.tol)) {
        converged = true;
        break;
      }
    }
    const Real value = detail::ensemble_average(members, functional);
    const bool better = !have_best || (sign > 0 ? value < best_value : value > best_value);
    if (better) {
      best_value = value;
      best_members = members;
      best_converged = converged;
      have_best = true;
    }
  }
  return finish(std::move(best_members), best_value, best_converged, opts.restarts);
}

}  // namespace qmono
