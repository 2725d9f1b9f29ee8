#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmono/layout.hpp"
#include "qmono/types.hpp"

namespace qmono {

enum class StateKind { pure, density };

/// A quantum state over a tensor-product space: either a unit amplitude
/// vector or a density operator. The body is dense; basis ordering is
/// row-major with subsystem 0 as the most significant digit.
template <typename Real = double>
struct QuantumState {
  SystemLayout layout;
  StateKind kind = StateKind::pure;
  Vector<Real> amplitudes;  // set when kind == pure
  Matrix<Real> rho;         // set when kind == density

  QuantumState() = default;

  QuantumState(SystemLayout l, Vector<Real> amps) : layout(std::move(l)), kind(StateKind::pure), amplitudes(std::move(amps)) {
    if (amplitudes.size() != layout.total_dim())
      throw std::invalid_argument("pure state length does not match layout dimension");
  }

  QuantumState(SystemLayout l, Matrix<Real> dm) : layout(std::move(l)), kind(StateKind::density), rho(std::move(dm)) {
    if (rho.rows() != layout.total_dim() || rho.cols() != layout.total_dim())
      throw std::invalid_argument("density matrix shape does not match layout dimension");
  }

  bool is_pure() const { return kind == StateKind::pure; }
  long dim() const { return layout.total_dim(); }
};

struct InvariantIssue {
  std::string invariant;
  double magnitude = 0.0;
};

struct ValidationResult {
  bool pass = true;
  std::vector<InvariantIssue> issues;
  std::vector<std::string> notes;  // e.g. clip-eligible negative eigenvalues

  explicit operator bool() const { return pass; }
  std::string message() const {
    std::string m;
    for (const auto& i : issues) {
      if (!m.empty()) m += "; ";
      m += i.invariant + " (deviation " + std::to_string(i.magnitude) + ")";
    }
    return m.empty() ? "pass" : m;
  }
};

/// Diagnostic check of the state invariants. Never throws; reports every
/// violated invariant with its magnitude. Negative eigenvalues inside the
/// clipping band [-tol::eig_clip, 0) pass with a note.
template <typename Real>
ValidationResult validate(const QuantumState<Real>& state) {
  ValidationResult r;
  auto fail = [&](std::string name, double mag) {
    r.pass = false;
    r.issues.push_back({std::move(name), mag});
  };

  if (state.layout.total_dim() < 2) fail("layout dimension >= 2", 0.0);

  if (state.is_pure()) {
    if (state.amplitudes.size() != state.layout.total_dim()) {
      fail("amplitude length = total dimension", std::abs(double(state.amplitudes.size()) - double(state.layout.total_dim())));
      return r;
    }
    const double dev = std::abs(state.amplitudes.norm() - 1.0);
    if (dev > tol::norm) fail("pure norm = 1", dev);
    return r;
  }

  if (state.rho.rows() != state.rho.cols() || state.rho.rows() != state.layout.total_dim()) {
    fail("density shape = total dimension squared", 0.0);
    return r;
  }
  const double herm_dev = (state.rho - state.rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > tol::hermitian) fail("Hermitian", herm_dev);
  const double trace_dev = std::abs(state.rho.trace() - Complex<Real>(1, 0));
  if (trace_dev > tol::trace) fail("trace = 1", trace_dev);

  if (herm_dev <= tol::hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix<Real>> es(state.rho, Eigen::EigenvaluesOnly);
    const double min_ev = es.eigenvalues().minCoeff();
    if (min_ev < -tol::eig_clip)
      fail("eigenvalues >= 0", -min_ev);
    else if (min_ev < 0)
      r.notes.push_back("eigenvalue " + std::to_string(min_ev) + " within clip band, clip-eligible");
  }
  return r;
}

template <typename Real>
void require_valid(const QuantumState<Real>& state, const std::string& who) {
  auto v = validate(state);
  if (!v.pass) throw std::invalid_argument(who + ": invalid state: " + v.message());
}

/// Pure states map to their projector; density inputs are returned unchanged.
template <typename Real>
QuantumState<Real> to_density(const QuantumState<Real>& state) {
  require_valid(state, "to_density");
  if (!state.is_pure()) return state;
  Matrix<Real> dm = state.amplitudes * state.amplitudes.adjoint();
  return QuantumState<Real>(state.layout, std::move(dm));
}

}  // namespace qmono
