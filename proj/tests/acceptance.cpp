// Acceptance suite: every criterion pinned at its stated tolerance, one
// [PASS]/[FAIL] line each, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qmono/inequalities.hpp"
#include "qmono/states.hpp"

using namespace qmono;

namespace {

int failures = 0;

void criterion(int number, const std::string& title, double time_limit_s,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt > time_limit_s) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("exceeded time limit");
  }
  std::printf("[%s] criterion %d: %s (%.1f s)%s%s\n", ok ? "PASS" : "FAIL", number, title.c_str(), dt,
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

const double log2_3 = std::log2(3.0);

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

BoundParams make_params(double alpha, double mu, std::optional<double> k = {}) {
  BoundParams p;
  p.alpha = AlphaParam(alpha);
  p.mu = mu;
  p.k = k;
  return p;
}

// --------------------------------------------------------------------------

bool counterexample_reproduction(std::string& detail) {
  const auto anti = make_antisym3<double>();
  const double lhs = renyi_entanglement_pure(anti, one_vs_rest(anti.layout, 0), AlphaParam(3));
  if (!near(lhs, log2_3, 1e-9)) {
    detail = "E3(A|BC) = " + std::to_string(lhs);
    return false;
  }

  RoofOptions opts;
  opts.restarts = 200;
  opts.seed = 20240101;
  const auto marginal = partial_trace(anti, {0, 1});
  PartitionSpec pair;
  pair.focus = 0;
  pair.partners = {1};
  const auto roof = renyi_entanglement(marginal, pair, AlphaParam(3), opts);
  if (roof.ensemble_average < 0.95 || roof.ensemble_average > 1.001) {
    detail = "roof E3(A|B) = " + std::to_string(roof.ensemble_average);
    return false;
  }

  const auto report = check_monogamy(anti, one_vs_rest(anti.layout, 0), make_params(3, 1), opts);
  if (report.verdicts.at(Family::baseline).verdict != Verdict::violated) {
    detail = "baseline not reported violated";
    return false;
  }
  detail = "E3(A|BC) = " + std::to_string(lhs) + ", roof = " + std::to_string(roof.ensemble_average);
  return true;
}

bool figure1(std::string& detail) {
  for (int i = 0; i <= 400; ++i) {
    const double mu = 1.0 + 0.01 * i;
    const double gap = std::pow(2.0, mu) - 1.0 - mu;
    if (i == 0) {
      if (std::abs(gap) >= 1e-12) {
        detail = "gap at mu=1 is " + std::to_string(gap);
        return false;
      }
    } else if (!(gap > 0)) {
      detail = "gap not positive at mu = " + std::to_string(mu);
      return false;
    }
  }
  return true;
}

bool figure2(std::string& detail) {
  for (int i = 0; i <= 100; ++i) {
    const double mu = 0.01 * i;
    const double scale = std::pow(2.0 / 3.0, mu);
    const double y_solid = scale * std::pow(2.0, mu);
    const double y_dashed = scale * (1.0 + mu);
    const double gap = y_dashed - y_solid;
    if (i == 0 || i == 100) {
      if (std::abs(gap) >= 1e-12) {
        detail = "gap at endpoint mu=" + std::to_string(mu) + " is " + std::to_string(gap);
        return false;
      }
    } else if (gap < 0) {
      detail = "dashed curve below solid at mu = " + std::to_string(mu);
      return false;
    }
  }
  const auto rows = figure_curves(2, {0.5});
  if (!near(rows[0].y_solid, 1.154701, 1e-6) || !near(rows[0].y_dashed, 1.224745, 1e-6)) {
    detail = "mu=0.5 values " + std::to_string(rows[0].y_solid) + ", " + std::to_string(rows[0].y_dashed);
    return false;
  }
  return true;
}

bool scalar_lemma_fuzz(std::string& detail) {
  Rng rng(424242);
  long checked = 0;
  for (int regime = 0; regime < 2; ++regime) {
    for (int trial = 0; trial < 10000; ++trial) {
      const double k = 1e-9 + (1 - 1e-9) * rng.uniform();
      const double x = k * rng.uniform();
      const double mu = regime == 0 ? 1 + 5 * rng.uniform() : rng.uniform();
      const auto r = scalar_lemma(x, k, mu);
      if (!r.holds) {
        detail = "failed at x=" + std::to_string(x) + " k=" + std::to_string(k) + " mu=" + std::to_string(mu);
        return false;
      }
      ++checked;
    }
  }
  detail = std::to_string(checked) + " triples";
  return true;
}

bool monogamy_bound_fuzz(std::string& detail) {
  const std::vector<double> alphas = {2, 3};
  const std::vector<double> mus = {1, 1.5, 2, 3};
  RoofOptions opts;  // measures take analytic/pure paths on these inputs
  long violations = 0, dominance_failures = 0, trials = 0;

  auto run_state = [&](const QuantumState<double>& psi, std::uint64_t seed) {
    const auto part = one_vs_rest(psi.layout, 0);
    for (double alpha : alphas) {
      for (double mu : mus) {
        RoofOptions o = opts;
        o.seed = seed;
        const auto report = check_monogamy(psi, part, make_params(alpha, mu), o);
        ++trials;
        if (report.any_violated()) ++violations;

        // Pointwise dominance at a common feasible k.
        const auto& values = report.diagnostics.sorted_values;
        const double k_geo = report.diagnostics.geometric_min_k > 0 ? report.diagnostics.geometric_min_k : 1.0;
        BoundParams bp = make_params(alpha, mu, k_geo);
        bp.family = Family::hamming;
        const double rhs_hamming = bound_monogamy(values, bp);
        bp.family = Family::exponent;
        const double rhs_exponent = bound_monogamy(values, bp);
        bp.family = Family::kim_hamming;
        bp.k.reset();
        const double rhs_kim = bound_monogamy(values, bp);
        double plain = 0;
        for (double v : values) plain += std::pow(v, mu);
        if (!(rhs_hamming >= rhs_kim - 1e-12 && rhs_kim >= plain - 1e-12 &&
              rhs_exponent >= rhs_hamming - 1e-12))
          ++dominance_failures;
      }
    }
  };

  for (int i = 0; i < 1000; ++i) run_state(make_random_pure<double>({2, 2, 2}, 50000 + i), 50000 + i);
  for (int i = 0; i < 500; ++i) run_state(make_random_pure<double>({2, 2, 2, 2}, 60000 + i), 60000 + i);

  detail = std::to_string(trials) + " trials, " + std::to_string(violations) + " violations, " +
           std::to_string(dominance_failures) + " dominance failures";
  return violations == 0 && dominance_failures == 0;
}

bool negative_mu_fuzz(std::string& detail) {
  const std::vector<double> mus = {-0.5, -1, -2};
  long accepted = 0, violations = 0;
  std::uint64_t seed = 70000;
  while (accepted < 500) {
    const auto psi = make_random_pure<double>({2, 2, 2}, seed++);
    const double c01 = concurrence(partial_trace(psi, {0, 1}));
    const double c02 = concurrence(partial_trace(psi, {0, 2}));
    if (c01 <= 0.05 || c02 <= 0.05) continue;
    ++accepted;
    RoofOptions opts;
    opts.seed = seed;
    for (double mu : mus) {
      const auto report = check_monogamy(psi, one_vs_rest(psi.layout, 0), make_params(3, mu), opts);
      const auto& fv = report.verdicts.at(Family::negative_mu);
      if (fv.verdict == Verdict::violated) ++violations;
      if (fv.verdict == Verdict::not_applicable) {
        detail = "unexpected not-applicable: " + fv.reason;
        return false;
      }
      // lhs^mu <= rhs within 1e-9 (all measure paths are exact here)
      if (report.lhs > report.rhs_by_family.at(Family::negative_mu) + 1e-9) ++violations;
    }
  }
  detail = "500 filtered states, " + std::to_string(violations) + " violations";
  return violations == 0;
}

bool polygamy_dominance(std::string& detail) {
  Rng rng(515151);
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 2 + int(rng.uniform() * 5);
    std::vector<double> values(n);
    for (double& v : values) v = rng.uniform();
    std::sort(values.rbegin(), values.rend());
    const double k = 1e-3 + (1 - 1e-3) * rng.uniform();
    const double mu = rng.uniform();
    BoundParams bp = make_params(0.5, mu, k);
    bp.family = Family::exponent;
    const double rhs_exponent = bound_polygamy(values, bp);
    bp.family = Family::hamming;
    const double rhs_hamming = bound_polygamy(values, bp);
    bp.family = Family::kim_hamming;
    bp.k.reset();
    const double rhs_kim = bound_polygamy(values, bp);
    if (!(rhs_exponent <= rhs_hamming + 1e-12 && rhs_hamming <= rhs_kim + 1e-12)) {
      detail = "failed at trial " + std::to_string(trial);
      return false;
    }
  }
  return true;
}

bool w_state_spot_check(std::string& detail) {
  const auto w = make_w<double>(3);
  const double lhs = renyi_entanglement_pure(w, one_vs_rest(w.layout, 0), AlphaParam(3));
  if (!near(lhs, 0.5 * log2_3, 1e-9)) {
    detail = "lhs = " + std::to_string(lhs);
    return false;
  }
  for (int partner : {1, 2}) {
    const double c = concurrence(partial_trace(w, {0, partner}));
    const double pairwise = renyi_from_concurrence(c, AlphaParam(3));
    if (!near(pairwise, 0.5 * (log2_3 - 1), 1e-9)) {
      detail = "pairwise = " + std::to_string(pairwise);
      return false;
    }
  }
  const auto report = check_monogamy(w, one_vs_rest(w.layout, 0), make_params(3, 1), RoofOptions{});
  const double slack = report.slack.at(Family::hamming);
  if (!near(slack, 1 - 0.5 * log2_3, 1e-8)) {
    detail = "slack = " + std::to_string(slack);
    return false;
  }
  detail = "lhs = " + std::to_string(lhs) + ", slack = " + std::to_string(slack);
  return true;
}

bool roof_cross_validation(std::string& detail) {
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const auto rho = make_random_mixed<double>({2, 2}, 4, 80000 + i);
    const double c = concurrence(rho);
    for (double alpha : {2.0, 3.0}) {
      const detail::MarginalRenyi<double> functional(rho.layout, 0, alpha);
      const auto roof = roof_optimize(rho, functional, RoofDirection::minimize, RoofOptions{});
      worst = std::max(worst, std::abs(double(roof.value) - renyi_from_concurrence(c, AlphaParam(alpha))));
    }
  }
  detail = "worst |roof - f_alpha(C)| = " + std::to_string(worst);
  return worst <= 5e-3;
}

bool entropy_axioms(std::string& detail) {
  const std::vector<double> alphas = {0.3, 0.7, 1.5, 2, 3, 6};
  for (int i = 0; i < 1000; ++i) {
    const auto rho = make_random_mixed<double>({4}, 1 + i % 4, 90000 + i);

    double prev = std::numeric_limits<double>::infinity();
    for (double alpha : alphas) {
      const double s = renyi_entropy(rho, AlphaParam(alpha));
      if (s < 0) {
        detail = "negative entropy";
        return false;
      }
      if (s > prev + 1e-10) {
        detail = "alpha-monotonicity failed at state " + std::to_string(i);
        return false;
      }
      prev = s;
    }

    const auto sigma = make_random_mixed<double>({4}, 1 + (i + 1) % 4, 91000 + i);
    if (!near(renyi_entropy(tensor(rho, sigma), AlphaParam(2)),
              renyi_entropy(rho, AlphaParam(2)) + renyi_entropy(sigma, AlphaParam(2)), 1e-8)) {
      detail = "additivity failed at state " + std::to_string(i);
      return false;
    }

    Rng rng(92000 + i);
    const Matrix<double> u = haar_unitary<double>(4, rng);
    QuantumState<double> rotated(rho.layout, Matrix<double>(u * rho.rho * u.adjoint()));
    if (!near(renyi_entropy(rotated, AlphaParam(3)), renyi_entropy(rho, AlphaParam(3)), 1e-8)) {
      detail = "unitary invariance failed at state " + std::to_string(i);
      return false;
    }

    const double vn = von_neumann_entropy(rho);
    if (!near(renyi_entropy(rho, AlphaParam(1 + 1e-4)), vn, 1e-3) ||
        !near(renyi_entropy(rho, AlphaParam(1 - 1e-4)), vn, 1e-3)) {
      detail = "von Neumann limit failed at state " + std::to_string(i);
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "counterexample reproduction (antisymmetric qutrit state)", 60, counterexample_reproduction);
  criterion(2, "figure 1: 2^mu - 1 - mu >= 0 on [1,5], equality only at mu=1", 5, figure1);
  criterion(3, "figure 2: dashed - solid >= 0 on [0,1], endpoint equality, mu=0.5 values", 5, figure2);
  criterion(4, "scalar lemma on 10^4 random triples per regime", 1, scalar_lemma_fuzz);
  criterion(5, "monogamy bound families on 1000 3-qubit + 500 4-qubit Haar states", 300, monogamy_bound_fuzz);
  criterion(6, "negative-mu upper bound on 500 filtered 3-qubit states", 120, negative_mu_fuzz);
  criterion(7, "polygamy dominance on 10^4 random value vectors", 1, polygamy_dominance);
  criterion(8, "W-state monogamy spot check", 5, w_state_spot_check);
  criterion(9, "roof optimizer vs analytic map on 100 two-qubit states", 180, roof_cross_validation);
  criterion(10, "entropy axioms on 10^3 random densities", 60, entropy_axioms);

  if (failures > 0) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
