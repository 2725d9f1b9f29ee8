// Tensor products, partial traces and Hermitian spectra of dense states.

#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qmono/state.hpp"

namespace qmono {

/// Eigenvalues in descending order, optionally with matching eigenvectors
/// (column i of eigenvectors belongs to eigenvalues[i]).
template <typename Real = double>
struct Spectrum {
  RealVector<Real> eigenvalues;
  std::optional<Matrix<Real>> eigenvectors;
};

template <typename Real>
Matrix<Real> kron(const Matrix<Real>& a, const Matrix<Real>& b) {
  Matrix<Real> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <typename Real>
Vector<Real> kron_vec(const Vector<Real>& a, const Vector<Real>& b) {
  Vector<Real> out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// Kronecker product of two states with concatenated layouts. Mixed kinds
/// promote the pure factor to a density matrix.
template <typename Real>
QuantumState<Real> tensor(const QuantumState<Real>& a, const QuantumState<Real>& b,
                          long max_dim = default_max_dim) {
  require_valid(a, "tensor");
  require_valid(b, "tensor");
  if (a.dim() * b.dim() > max_dim)
    throw std::invalid_argument("tensor: total dimension " + std::to_string(a.dim() * b.dim()) +
                                " exceeds maximum " + std::to_string(max_dim));
  SystemLayout layout = concat(a.layout, b.layout);
  if (a.is_pure() && b.is_pure())
    return QuantumState<Real>(std::move(layout), kron_vec(a.amplitudes, b.amplitudes));
  const QuantumState<Real> da = to_density(a);
  const QuantumState<Real> db = to_density(b);
  return QuantumState<Real>(std::move(layout), kron(da.rho, db.rho));
}

namespace detail {

struct TraceIndexing {
  std::vector<int> keep;         // sorted kept subsystem indices
  long kept_dim = 1;
  long traced_dim = 1;
  std::vector<long> kept_of;     // flat index -> kept part flat index
  std::vector<long> traced_of;   // flat index -> traced part flat index
  std::vector<long> flat_of;     // kept * traced_dim + traced -> flat index
};

inline TraceIndexing make_trace_indexing(const SystemLayout& layout, std::vector<int> keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw std::invalid_argument("partial_trace: repeated subsystem index");
  for (int s : keep) layout.check_index(s);

  TraceIndexing t;
  t.keep = keep;
  std::vector<bool> kept(layout.subsystem_count(), false);
  for (int s : keep) kept[s] = true;
  for (int s = 0; s < layout.subsystem_count(); ++s)
    (kept[s] ? t.kept_dim : t.traced_dim) *= layout.dims[s];

  const long d = layout.total_dim();
  t.kept_of.resize(d);
  t.traced_of.resize(d);
  t.flat_of.resize(d);
  for (long flat = 0; flat < d; ++flat) {
    long k = 0, r = 0;
    long rem = flat;
    for (int s = 0; s < layout.subsystem_count(); ++s) {
      const long st = layout.stride(s);
      const int digit = static_cast<int>(rem / st);
      rem -= digit * st;
      if (kept[s])
        k = k * layout.dims[s] + digit;
      else
        r = r * layout.dims[s] + digit;
    }
    t.kept_of[flat] = k;
    t.traced_of[flat] = r;
    t.flat_of[k * t.traced_dim + r] = flat;
  }
  return t;
}

}  // namespace detail

/// Reduced density matrix over the kept subsystems, in their original
/// relative order.
template <typename Real>
QuantumState<Real> partial_trace(const QuantumState<Real>& state, const std::vector<int>& keep) {
  require_valid(state, "partial_trace");
  const auto idx = detail::make_trace_indexing(state.layout, keep);

  std::vector<int> kept_dims;
  std::vector<std::string> kept_labels;
  for (int s : idx.keep) {
    kept_dims.push_back(state.layout.dims[s]);
    if (!state.layout.labels.empty()) kept_labels.push_back(state.layout.labels[s]);
  }
  SystemLayout out_layout(kept_dims, kept_labels);

  if (idx.traced_dim == 1) return to_density(state);

  Matrix<Real> out = Matrix<Real>::Zero(idx.kept_dim, idx.kept_dim);
  const long d = state.dim();
  if (state.is_pure()) {
    // Group amplitudes by traced index: rho' = sum_r col_r col_r^dagger.
    Matrix<Real> cols = Matrix<Real>::Zero(idx.kept_dim, idx.traced_dim);
    for (long flat = 0; flat < d; ++flat)
      cols(idx.kept_of[flat], idx.traced_of[flat]) = state.amplitudes(flat);
    out = cols * cols.adjoint();
  } else {
    for (long ki = 0; ki < idx.kept_dim; ++ki)
      for (long kj = 0; kj < idx.kept_dim; ++kj)
        for (long r = 0; r < idx.traced_dim; ++r)
          out(ki, kj) += state.rho(idx.flat_of[ki * idx.traced_dim + r], idx.flat_of[kj * idx.traced_dim + r]);
  }
  return QuantumState<Real>(std::move(out_layout), std::move(out));
}

/// Descending Hermitian eigendecomposition of a density matrix. Eigenvalues
/// inside [-tol::eig_clip, 0) are clipped to zero; if the input trace is 1
/// the clipped spectrum is renormalized to unit sum. Larger negatives and
/// non-Hermitian inputs are errors.
template <typename Real>
Spectrum<Real> eig_hermitian(const Matrix<Real>& matrix, bool with_vectors = false) {
  if (matrix.rows() != matrix.cols()) throw std::invalid_argument("eig_hermitian: matrix must be square");
  const double herm_dev = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > tol::hermitian)
    throw std::invalid_argument("eig_hermitian: input not Hermitian (deviation " + std::to_string(herm_dev) + ")");

  Eigen::SelfAdjointEigenSolver<Matrix<Real>> es(matrix, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  const Eigen::Index n = matrix.rows();

  Spectrum<Real> spec;
  spec.eigenvalues.resize(n);
  if (with_vectors) spec.eigenvectors = Matrix<Real>(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // Eigen sorts ascending; reverse to descending.
    Real ev = es.eigenvalues()(n - 1 - i);
    if (ev < 0) {
      if (ev < -Real(tol::eig_clip))
        throw std::invalid_argument("eig_hermitian: eigenvalue " + std::to_string(double(ev)) + " below clip band");
      ev = 0;
    }
    spec.eigenvalues(i) = ev;
    if (with_vectors) spec.eigenvectors->col(i) = es.eigenvectors().col(n - 1 - i);
  }
  const Real tr = matrix.trace().real();
  const Real sum = spec.eigenvalues.sum();
  if (std::abs(double(tr) - 1.0) <= tol::trace && sum > 0) spec.eigenvalues /= sum;
  return spec;
}

template <typename Real>
Spectrum<Real> eig_hermitian(const QuantumState<Real>& state, bool with_vectors = false) {
  return eig_hermitian(to_density(state).rho, with_vectors);
}

}  // namespace qmono
