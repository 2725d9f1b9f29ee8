#include <doctest.h>

#include "qmono/entropy.hpp"
#include "qmono/rng.hpp"
#include "qmono/states.hpp"

using namespace qmono;

namespace {

QuantumState<double> diag_density(std::vector<double> p) {
  const int d = int(p.size());
  Matrix<double> rho = Matrix<double>::Zero(d, d);
  for (int i = 0; i < d; ++i) rho(i, i) = p[i];
  return QuantumState<double>(SystemLayout({d}), rho);
}

// Independent route for integer alpha: tr rho^alpha by repeated matrix
// multiplication, no eigendecomposition.
double renyi_by_matrix_power(const QuantumState<double>& state, int alpha) {
  const auto rho = to_density(state).rho;
  Matrix<double> power = rho;
  for (int i = 1; i < alpha; ++i) power = power * rho;
  return std::log2(power.trace().real()) / (1.0 - alpha);
}

const double log2_3 = std::log2(3.0);

}  // namespace

TEST_CASE("renyi_entropy: worked values") {
  CHECK_EQ(renyi_entropy(diag_density({1 / 3.0, 1 / 3.0, 1 / 3.0}), AlphaParam(3)),
           doctest::Approx(log2_3).epsilon(1e-12));
  CHECK_EQ(renyi_entropy(diag_density({2 / 3.0, 1 / 3.0}), AlphaParam(3)),
           doctest::Approx(0.5 * log2_3).epsilon(1e-12));  // -(1/2) log2 (1/3)
  auto pure = make_random_pure<double>({2, 2}, 3);
  CHECK_EQ(renyi_entropy(to_density(pure), AlphaParam(2.5)), doctest::Approx(0.0));
}

TEST_CASE("renyi_entropy: alpha = 1 and alpha <= 0 are rejected") {
  CHECK_THROWS_AS(renyi_entropy(diag_density({0.5, 0.5}), AlphaParam(1.0)), std::invalid_argument);
  CHECK_THROWS_AS(AlphaParam(0.0), std::invalid_argument);
  CHECK_THROWS_AS(AlphaParam(-2.0), std::invalid_argument);
}

TEST_CASE("von_neumann_entropy: worked values") {
  CHECK_EQ(von_neumann_entropy(diag_density({0.5, 0.5})), doctest::Approx(1.0).epsilon(1e-12));
  CHECK_EQ(von_neumann_entropy(to_density(make_random_pure<double>({2, 2}, 9))), doctest::Approx(0.0));
  CHECK_EQ(von_neumann_entropy(diag_density({2 / 3.0, 1 / 3.0})),
           doctest::Approx(log2_3 - 2 / 3.0).epsilon(1e-12));
}

TEST_CASE("dual route: spectrum path equals matrix-power path for integer alpha") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto rho = make_random_mixed<double>({2, 2}, 1 + int(seed % 4), 400 + seed);
    for (int alpha : {2, 3, 4})
      CHECK_EQ(renyi_entropy(rho, AlphaParam(alpha)),
               doctest::Approx(renyi_by_matrix_power(rho, alpha)).epsilon(1e-9));
  }
}

TEST_CASE("property: nonnegativity and purity") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto rho = make_random_mixed<double>({4}, 1 + int(seed % 4), 500 + seed);
    for (double alpha : {0.3, 0.7, 1.5, 2.0, 5.0}) CHECK_GE(renyi_entropy(rho, AlphaParam(alpha)), 0.0);
    const auto spec = eig_hermitian(rho.rho);
    const bool pure = spec.eigenvalues(0) >= 1.0 - 1e-9;
    CHECK_EQ(renyi_entropy(rho, AlphaParam(2)) < 1e-8, pure);
  }
}

TEST_CASE("property: additivity on tensor products") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto a = make_random_mixed<double>({2}, 2, 600 + seed);
    auto b = make_random_mixed<double>({3}, 2, 700 + seed);
    for (double alpha : {0.5, 2.0, 3.0}) {
      const AlphaParam ap(alpha);
      CHECK_EQ(renyi_entropy(tensor(a, b), ap),
               doctest::Approx(renyi_entropy(a, ap) + renyi_entropy(b, ap)).epsilon(1e-8));
    }
  }
}

TEST_CASE("property: unitary invariance") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto rho = make_random_mixed<double>({4}, 3, 800 + seed);
    Rng rng(900 + seed);
    const Matrix<double> u = haar_unitary<double>(4, rng);
    QuantumState<double> rotated(rho.layout, Matrix<double>(u * rho.rho * u.adjoint()));
    for (double alpha : {0.5, 2.0, 3.0})
      CHECK_EQ(renyi_entropy(rotated, AlphaParam(alpha)),
               doctest::Approx(renyi_entropy(rho, AlphaParam(alpha))).epsilon(1e-8));
  }
}

TEST_CASE("property: monotone nonincreasing in alpha") {
  const std::vector<double> alphas = {0.2, 0.5, 0.9, 1.1, 2.0, 3.0, 6.0};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto rho = make_random_mixed<double>({4}, 2 + int(seed % 3), 1000 + seed);
    double prev = std::numeric_limits<double>::infinity();
    for (double alpha : alphas) {
      const double s = renyi_entropy(rho, AlphaParam(alpha));
      CHECK_LE(s, prev + 1e-10);
      prev = s;
    }
  }
}

TEST_CASE("property: von Neumann limit at alpha = 1 +- 1e-4") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto rho = make_random_mixed<double>({4}, 3, 1100 + seed);
    const double vn = von_neumann_entropy(rho);
    CHECK_EQ(renyi_entropy(rho, AlphaParam(1 + 1e-4)), doctest::Approx(vn).epsilon(1e-3));
    CHECK_EQ(renyi_entropy(rho, AlphaParam(1 - 1e-4)), doctest::Approx(vn).epsilon(1e-3));
  }
}
