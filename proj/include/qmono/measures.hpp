// Entanglement quantifiers: pure-state Renyi-alpha entanglement, convex-roof
// minimum (RaE) and maximum (RaEoA) for mixed states, with the two-qubit
// analytic fast path.

#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "qmono/concurrence.hpp"
#include "qmono/entropy.hpp"
#include "qmono/roof.hpp"

namespace qmono {

enum class PartitionMode { one_vs_rest, one_vs_one };

/// Bipartition of a multipartite state: the focus subsystem A against the
/// ordered partner subsystems B_0 ... B_{N-1}.
struct PartitionSpec {
  int focus = 0;
  std::vector<int> partners;
  PartitionMode mode = PartitionMode::one_vs_rest;

  void check(const SystemLayout& layout) const {
    layout.check_index(focus);
    if (partners.empty()) throw std::invalid_argument("PartitionSpec: partners must be nonempty");
    std::vector<int> seen{focus};
    for (int p : partners) {
      layout.check_index(p);
      if (std::find(seen.begin(), seen.end(), p) != seen.end())
        throw std::invalid_argument("PartitionSpec: indices must be distinct and exclude the focus");
      seen.push_back(p);
    }
  }
};

/// Partition covering every non-focus subsystem in index order.
inline PartitionSpec one_vs_rest(const SystemLayout& layout, int focus) {
  PartitionSpec part;
  part.focus = focus;
  for (int s = 0; s < layout.subsystem_count(); ++s)
    if (s != focus) part.partners.push_back(s);
  return part;
}

enum class MeasureMethod { pure_exact, two_qubit_analytic, roof_upper, roof_lower };

inline const char* to_string(MeasureMethod m) {
  switch (m) {
    case MeasureMethod::pure_exact: return "pure";
    case MeasureMethod::two_qubit_analytic: return "analytic";
    case MeasureMethod::roof_upper: return "roof(upper bound)";
    case MeasureMethod::roof_lower: return "roof(lower bound)";
  }
  return "?";
}

struct MeasureProvenance {
  MeasureMethod method = MeasureMethod::pure_exact;
  int restarts = 0;
  bool converged = true;
  double err_budget = 0;  // one-sided numeric allowance on the value
};

template <typename Real = double>
struct MeasureResult {
  Real value = 0;             // reported measure value
  Real ensemble_average = 0;  // average achieved by the returned decomposition
  Decomposition<Real> decomposition;
  MeasureProvenance provenance;
};

namespace detail {

/// S_alpha of the focus marginal of a pure state, tuned for the roof inner
/// loop: index maps are precomputed, 2x2 and 3x3 marginals use direct
/// eigenvalue formulas, integer alpha avoids pow. Scale-invariant in the
/// input vector (the marginal spectrum is normalized internally), so the
/// roof optimizer can pass unnormalized members. The scratch buffers make
/// an instance single-threaded.
template <typename Real>
class MarginalRenyi {
 public:
  MarginalRenyi(const SystemLayout& layout, int focus, double alpha) : alpha_(alpha) {
    layout.check_index(focus);
    const double rounded = std::nearbyint(alpha);
    int_alpha_ = (alpha == rounded && rounded >= 2 && rounded <= 8) ? int(rounded) : 0;
    da_ = layout.dims[focus];
    dr_ = layout.total_dim() / da_;
    const long d = layout.total_dim();
    a_of_.resize(d);
    r_of_.resize(d);
    const long fstride = layout.stride(focus);
    for (long flat = 0; flat < d; ++flat) {
      const int a = static_cast<int>(flat / fstride) % da_;
      const long hi = flat / (fstride * da_);
      const long lo = flat % fstride;
      a_of_[flat] = a;
      r_of_[flat] = hi * fstride + lo;
    }
    w_.resize(da_, dr_);
    g_.resize(da_, da_);
    lambda_.resize(da_);
  }

  Real operator()(const Vector<Real>& psi) const {
    for (long flat = 0; flat < psi.size(); ++flat) w_(a_of_[flat], r_of_[flat]) = psi(flat);
    if (da_ == 2) {
      const Real g00 = w_.row(0).squaredNorm();
      const Real g11 = w_.row(1).squaredNorm();
      const Complex<Real> g01 = w_.row(1).dot(w_.row(0));
      const Real t = g00 + g11;
      const Real det = g00 * g11 - std::norm(g01);
      const Real disc = std::sqrt(std::max<Real>(t * t - 4 * det, 0));
      lambda_(0) = (t + disc) / 2;
      lambda_(1) = (t - disc) / 2;
    } else {
      g_.noalias() = w_ * w_.adjoint();
      Eigen::SelfAdjointEigenSolver<Matrix<Real>> es;
      if (da_ == 3)
        es.computeDirect(g_, Eigen::EigenvaluesOnly);
      else
        es.compute(g_, Eigen::EigenvaluesOnly);
      lambda_ = es.eigenvalues();
    }
    Real sum = 0, power_sum = 0;
    for (int i = 0; i < da_; ++i) sum += std::max<Real>(lambda_(i), 0);
    if (sum <= 0) return 0;
    for (int i = 0; i < da_; ++i) {
      const Real l = std::max<Real>(lambda_(i), 0) / sum;
      if (l <= 0) continue;
      if (int_alpha_ > 0) {
        Real acc = l;
        for (int n = 1; n < int_alpha_; ++n) acc *= l;
        power_sum += acc;
      } else {
        power_sum += std::pow(l, Real(alpha_));
      }
    }
    Real s = Real(std::log2(double(power_sum)) / (1.0 - alpha_));
    return s > 0 ? s : Real(0);
  }

 private:
  double alpha_;
  int int_alpha_ = 0;
  int da_ = 0;
  long dr_ = 0;
  std::vector<long> a_of_, r_of_;
  mutable Matrix<Real> w_, g_;
  mutable RealVector<Real> lambda_;
};

/// Keep set {focus} + partners in original subsystem order, plus the focus
/// position within it.
inline std::pair<std::vector<int>, int> keep_set(const PartitionSpec& part) {
  std::vector<int> keep = part.partners;
  keep.push_back(part.focus);
  std::sort(keep.begin(), keep.end());
  const int focus_pos = static_cast<int>(std::find(keep.begin(), keep.end(), part.focus) - keep.begin());
  return {keep, focus_pos};
}

}  // namespace detail

/// Renyi-alpha entanglement of a pure state across focus | everything-else:
/// S_alpha of the focus marginal.
template <typename Real>
Real renyi_entanglement_pure(const QuantumState<Real>& psi, const PartitionSpec& part, const AlphaParam& alpha) {
  if (!psi.is_pure()) throw std::invalid_argument("renyi_entanglement_pure: input must be a pure state");
  part.check(psi.layout);
  if (alpha.is_von_neumann_limit()) throw std::invalid_argument("renyi_entanglement_pure: alpha = 1 not supported");
  require_valid(psi, "renyi_entanglement_pure");
  return renyi_entropy(partial_trace(psi, {part.focus}), alpha);
}

namespace detail {

template <typename Real>
MeasureResult<Real> roof_measure(const QuantumState<Real>& state, const PartitionSpec& part,
                                 const AlphaParam& alpha, const RoofOptions& opts, RoofDirection dir) {
  part.check(state.layout);
  if (alpha.is_von_neumann_limit()) throw std::invalid_argument("roof measure: alpha = 1 not supported");
  require_valid(state, "roof measure");

  auto [keep, focus_pos] = keep_set(part);
  const bool whole_system = static_cast<int>(keep.size()) == state.layout.subsystem_count();

  MeasureResult<Real> res;

  if (whole_system && state.is_pure()) {
    res.value = renyi_entanglement_pure(state, part, alpha);
    res.ensemble_average = res.value;
    res.decomposition.weights = {Real(1)};
    res.decomposition.vectors = {state.amplitudes / state.amplitudes.norm()};
    res.provenance = {MeasureMethod::pure_exact, 0, true, 0};
    return res;
  }

  const QuantumState<Real> reduced = whole_system ? to_density(state) : partial_trace(state, keep);
  const detail::MarginalRenyi<Real> functional(reduced.layout, focus_pos, alpha.alpha);
  const auto roof = roof_optimize(reduced, functional, dir, opts);

  res.ensemble_average = roof.value;
  res.decomposition = roof.decomposition;

  if (roof.decomposition.size() == 1) {
    // Rank-1 density: unique decomposition, exact either direction.
    res.value = roof.value;
    res.provenance = {MeasureMethod::pure_exact, 0, true, 0};
    return res;
  }

  const bool analytic = dir == RoofDirection::minimize && reduced.layout.dims == std::vector<int>{2, 2} &&
                        alpha.alpha >= 2;
  if (analytic) {
    res.value = renyi_from_concurrence(double(concurrence(reduced)), alpha);
    res.provenance = {MeasureMethod::two_qubit_analytic, roof.restarts, roof.converged, 0};
    return res;
  }

  res.value = roof.value;
  res.provenance = {dir == RoofDirection::minimize ? MeasureMethod::roof_upper : MeasureMethod::roof_lower,
                    roof.restarts, roof.converged, tol::roof_budget};
  return res;
}

}  // namespace detail

/// Convex-roof minimum of the pure-state RaE over decompositions of the
/// state reduced to focus + partners. The value is an upper bound on the
/// true roof except on the exact paths (pure input, rank-1, two-qubit with
/// alpha >= 2).
template <typename Real>
MeasureResult<Real> renyi_entanglement(const QuantumState<Real>& state, const PartitionSpec& part,
                                       const AlphaParam& alpha, const RoofOptions& opts = {}) {
  return detail::roof_measure(state, part, alpha, opts, RoofDirection::minimize);
}

/// Convex-roof maximum (entanglement of assistance); the value is a lower
/// bound on the true roof except on the exact paths.
template <typename Real>
MeasureResult<Real> renyi_assistance(const QuantumState<Real>& state, const PartitionSpec& part,
                                     const AlphaParam& alpha, const RoofOptions& opts = {}) {
  return detail::roof_measure(state, part, alpha, opts, RoofDirection::maximize);
}

/// Value-only measure used by the inequality checker: exact paths where
/// available, otherwise the roof optimizer without decomposition assembly.
template <typename Real>
std::pair<Real, MeasureProvenance> measure_value(const QuantumState<Real>& state, const PartitionSpec& part,
                                                 const AlphaParam& alpha, const RoofOptions& opts,
                                                 RoofDirection dir) {
  part.check(state.layout);
  if (alpha.is_von_neumann_limit()) throw std::invalid_argument("measure_value: alpha = 1 not supported");

  auto [keep, focus_pos] = detail::keep_set(part);
  const bool whole_system = static_cast<int>(keep.size()) == state.layout.subsystem_count();
  if (whole_system && state.is_pure()) {
    require_valid(state, "measure_value");
    return {renyi_entanglement_pure(state, part, alpha), {MeasureMethod::pure_exact, 0, true, 0}};
  }

  const QuantumState<Real> reduced = whole_system ? to_density(state) : partial_trace(state, keep);
  const auto spec = eig_hermitian(reduced.rho);
  const bool rank1 = spec.eigenvalues(0) >= Real(1) - Real(tol::eig_clip);
  if (rank1) {
    const detail::MarginalRenyi<Real> functional(reduced.layout, focus_pos, alpha.alpha);
    const auto roof = roof_optimize(reduced, functional, dir, opts);
    return {roof.value, {MeasureMethod::pure_exact, 0, true, 0}};
  }
  if (dir == RoofDirection::minimize && reduced.layout.dims == std::vector<int>{2, 2} && alpha.alpha >= 2) {
    const Real value = Real(renyi_from_concurrence(double(concurrence(reduced)), alpha));
    return {value, {MeasureMethod::two_qubit_analytic, 0, true, 0}};
  }
  const detail::MarginalRenyi<Real> functional(reduced.layout, focus_pos, alpha.alpha);
  const auto roof = roof_optimize(reduced, functional, dir, opts);
  return {roof.value,
          {dir == RoofDirection::minimize ? MeasureMethod::roof_upper : MeasureMethod::roof_lower,
           roof.restarts, roof.converged, tol::roof_budget}};
}

}  // namespace qmono
