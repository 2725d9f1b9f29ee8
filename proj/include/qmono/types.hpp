// Dense complex types and numeric tolerances shared by the whole library.

#pragma once

#include <complex>
#include <Eigen/Dense>

namespace qmono {

template <typename Real = double>
using Complex = std::complex<Real>;

template <typename Real = double>
using Vector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <typename Real = double>
using Matrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real = double>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using VectorXcd = Vector<double>;
using MatrixXcd = Matrix<double>;

namespace tol {
// State validity
inline constexpr double norm = 1e-9;       // pure-state norm deviation
inline constexpr double hermitian = 1e-9;  // max |rho - rho^dagger| entry
inline constexpr double trace = 1e-9;      // |tr rho - 1|
inline constexpr double eig_clip = 1e-9;   // negatives in [-eig_clip, 0) are clipped
// Decompositions
inline constexpr double weight_sum = 1e-9;
inline constexpr double reconstruction = 1e-6;  // Frobenius distance to target
// Verdicts
inline constexpr double verdict = 1e-9;
// Heuristic one-sided error budget for a single convex-roof value
inline constexpr double roof_budget = 5e-3;
}  // namespace tol

// Largest total Hilbert-space dimension accepted by constructors and products.
inline constexpr int default_max_dim = 4096;

}  // namespace qmono
