// The bound families: Hamming-weight and exponent-indexed coefficients, the
// scalar lemma behind them, ordering diagnostics, and full monogamy /
// polygamy report generation.

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmono/measures.hpp"

namespace qmono {

enum class Family { hamming, exponent, kim_hamming, kim_exponent, baseline, negative_mu };

inline const std::vector<Family>& all_families() {
  static const std::vector<Family> fams = {Family::hamming,      Family::exponent, Family::kim_hamming,
                                           Family::kim_exponent, Family::baseline, Family::negative_mu};
  return fams;
}

inline const char* family_name(Family f) {
  switch (f) {
    case Family::hamming: return "hamming";
    case Family::exponent: return "exponent";
    case Family::kim_hamming: return "kim_hamming";
    case Family::kim_exponent: return "kim_exponent";
    case Family::baseline: return "baseline";
    case Family::negative_mu: return "negative_mu";
  }
  return "?";
}

/// Parameters of a single bound evaluation: the Renyi order, the power mu,
/// the decay certificate k in (0,1], and the family selector.
struct BoundParams {
  AlphaParam alpha{2.0};
  double mu = 1.0;
  std::optional<double> k;  // absent: checks resolve the minimal feasible k
  Family family = Family::hamming;

  void check_k() const {
    if (k && !(*k > 0 && *k <= 1)) throw std::invalid_argument("BoundParams: k must be in (0,1]");
  }
};

inline int hamming_weight(std::int64_t j) {
  if (j < 0) throw std::invalid_argument("hamming_weight: j must be nonnegative");
  return std::popcount(static_cast<std::uint64_t>(j));
}

/// The tightening factor ((1+k)^mu - 1) / k^mu; equals 1 at mu = 1 and
/// 2^mu - 1 at k = 1.
inline double coefficient(double k, double mu) {
  if (!(k > 0 && k <= 1)) throw std::invalid_argument("coefficient: k must be in (0,1]");
  return (std::pow(1.0 + k, mu) - 1.0) / std::pow(k, mu);
}

struct ScalarLemmaResult {
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
};

/// (1+x)^mu against 1 + coefficient(k,mu) x^mu on 0 <= x <= k <= 1: the
/// inequality is >= for mu >= 1 and <= for 0 <= mu <= 1, checked at 1e-12.
inline ScalarLemmaResult scalar_lemma(double x, double k, double mu) {
  if (!(k > 0 && k <= 1)) throw std::invalid_argument("scalar_lemma: k must be in (0,1]");
  if (x < 0 || x > k) throw std::invalid_argument("scalar_lemma: x must be in [0,k]");
  if (mu < 0) throw std::invalid_argument("scalar_lemma: mu must be >= 0");
  ScalarLemmaResult r;
  r.lhs = std::pow(1.0 + x, mu);
  r.rhs = 1.0 + coefficient(k, mu) * std::pow(x, mu);
  constexpr double eps = 1e-12;
  r.holds = mu >= 1 ? r.lhs >= r.rhs - eps : r.lhs <= r.rhs + eps;
  return r;
}

namespace detail {

inline double power_term(double value, double mu) {
  if (value == 0) return mu == 0 ? 1.0 : 0.0;
  return std::pow(value, mu);
}

inline double family_coefficient(Family family, double k, double mu, int j) {
  switch (family) {
    case Family::hamming: return std::pow(coefficient(k, mu), hamming_weight(j));
    case Family::exponent: return std::pow(coefficient(k, mu), j);
    case Family::kim_hamming: return std::pow(mu, hamming_weight(j));
    case Family::kim_exponent: return std::pow(mu, j);
    case Family::baseline: return 1.0;
    case Family::negative_mu: break;
  }
  throw std::invalid_argument("family_coefficient: unsupported family");
}

inline double weighted_power_sum(const std::vector<double>& values, const BoundParams& params) {
  const double k = params.k.value_or(1.0);
  double sum = 0;
  for (int j = 0; j < static_cast<int>(values.size()); ++j) {
    if (values[j] < 0) throw std::invalid_argument("bound: values must be nonnegative");
    sum += family_coefficient(params.family, k, params.mu, j) * power_term(values[j], params.mu);
  }
  return sum;
}

}  // namespace detail

/// RHS of the monogamy bounds: sum_j c_j E_j^mu with the family coefficient
/// scheme. Requires mu >= 1 (baseline: mu = 1 exactly).
inline double bound_monogamy(const std::vector<double>& values, const BoundParams& params) {
  params.check_k();
  if (params.family == Family::negative_mu)
    throw std::invalid_argument("bound_monogamy: use bound_negative_mu for mu < 0");
  if (params.family == Family::baseline) {
    if (params.mu != 1.0) throw std::invalid_argument("bound_monogamy: baseline requires mu = 1");
  } else if (params.mu < 1) {
    throw std::invalid_argument("bound_monogamy: requires mu >= 1");
  }
  return detail::weighted_power_sum(values, params);
}

/// RHS of the polygamy bounds, same coefficient schemes at 0 <= mu <= 1.
inline double bound_polygamy(const std::vector<double>& values, const BoundParams& params) {
  params.check_k();
  if (params.family == Family::negative_mu)
    throw std::invalid_argument("bound_polygamy: negative_mu is not a polygamy family");
  if (params.family == Family::baseline) {
    if (params.mu != 1.0) throw std::invalid_argument("bound_polygamy: baseline requires mu = 1");
  } else if (params.mu < 0 || params.mu > 1) {
    throw std::invalid_argument("bound_polygamy: requires 0 <= mu <= 1");
  }
  return detail::weighted_power_sum(values, params);
}

/// Upper bound for negative powers: (1/(N-1)) sum_j E_j^mu. Every value must
/// be strictly positive and N >= 2.
inline double bound_negative_mu(const std::vector<double>& values, double mu) {
  if (mu >= 0) throw std::invalid_argument("bound_negative_mu: requires mu < 0");
  if (values.size() < 2) throw std::invalid_argument("bound_negative_mu: needs at least 2 values");
  double sum = 0;
  for (double v : values) {
    if (!(v > 0)) throw std::invalid_argument("bound_negative_mu: every value must be > 0");
    sum += std::pow(v, mu);
  }
  return sum / double(values.size() - 1);
}

/// Minimal feasible decay certificates after a stable descending sort:
/// geometric_min_k is the largest consecutive ratio, sum_min_k the largest
/// tail-sum ratio. Infeasible (reported as infinity) when a zero precedes a
/// nonzero value.
struct OrderingDiagnostics {
  double geometric_min_k = 0;
  double sum_min_k = 0;
  std::vector<int> sorted_order;  // sorted_order[i] = original index of i-th sorted value
  std::vector<double> sorted_values;

  bool geometric_feasible() const { return std::isfinite(geometric_min_k) && geometric_min_k <= 1; }
  bool sum_feasible() const { return std::isfinite(sum_min_k) && sum_min_k <= 1; }
};

inline OrderingDiagnostics ordering_diagnostics(const std::vector<double>& values) {
  for (double v : values)
    if (v < 0) throw std::invalid_argument("ordering_diagnostics: values must be nonnegative");
  const int n = static_cast<int>(values.size());
  OrderingDiagnostics d;
  d.sorted_order.resize(n);
  std::iota(d.sorted_order.begin(), d.sorted_order.end(), 0);
  std::stable_sort(d.sorted_order.begin(), d.sorted_order.end(),
                   [&](int a, int b) { return values[a] > values[b]; });
  d.sorted_values.reserve(n);
  for (int i : d.sorted_order) d.sorted_values.push_back(values[i]);

  constexpr double inf = std::numeric_limits<double>::infinity();
  auto ratio = [&](double num, double den) {
    if (den > 0) return num / den;
    return num > 0 ? inf : 0.0;
  };
  for (int i = 0; i + 1 < n; ++i)
    d.geometric_min_k = std::max(d.geometric_min_k, ratio(d.sorted_values[i + 1], d.sorted_values[i]));
  for (int i = 0; i + 1 < n; ++i) {
    double tail = 0;
    for (int j = i + 1; j < n; ++j) tail += d.sorted_values[j];
    d.sum_min_k = std::max(d.sum_min_k, ratio(tail, d.sorted_values[i]));
  }
  return d;
}

enum class Verdict { holds, violated, not_applicable };

struct FamilyVerdict {
  Verdict verdict = Verdict::not_applicable;
  std::string reason;  // the unmet precondition when not applicable
};

struct ProvenanceEntry {
  std::string quantity;  // "lhs" or "pairwise[<j>]"
  double value = 0;      // raw measure value before raising to mu
  MeasureProvenance prov;
};

/// Everything a single inequality evaluation produced: the mu-powered
/// left-hand side, each family's right-hand side, verdicts with slack, the
/// ordering diagnostics and how each measure value was obtained.
struct InequalityReport {
  double lhs = 0;  // measure of the full bipartition raised to mu
  std::map<Family, double> rhs_by_family;
  std::map<Family, FamilyVerdict> verdicts;
  std::map<Family, double> slack;
  OrderingDiagnostics diagnostics;
  std::vector<ProvenanceEntry> measure_provenance;

  bool any_violated() const {
    for (const auto& [f, v] : verdicts)
      if (v.verdict == Verdict::violated) return true;
    return false;
  }
  bool all_applicable_hold() const {
    for (const auto& [f, v] : verdicts)
      if (v.verdict == Verdict::violated) return false;
    return true;
  }
};

namespace detail {

enum class CheckMode { monogamy, polygamy };

struct ResolvedK {
  bool applicable = false;
  double k = 1.0;
  std::string reason;
};

inline ResolvedK resolve_k(const std::optional<double>& user_k, double min_k, bool feasible) {
  ResolvedK r;
  if (!feasible) {
    r.reason = "ordering condition infeasible (min k > 1 or zero precedes nonzero)";
    if (user_k) r.reason = "ordering condition unmet for given k";
    return r;
  }
  if (user_k) {
    if (*user_k + 1e-12 < min_k) {
      r.reason = "ordering condition unmet for given k";
      return r;
    }
    r.applicable = true;
    r.k = *user_k;
    return r;
  }
  r.applicable = true;
  r.k = min_k > 0 ? min_k : 1.0;  // all non-leading values zero: any k works
  return r;
}

/// RHS recomputed with every value shifted against the inequality by its
/// one-sided error budget; the difference is the slack allowance.
inline double shifted_rhs(const std::vector<double>& values, const std::vector<double>& budgets,
                          const BoundParams& params, bool shift_down) {
  std::vector<double> shifted(values.size());
  for (size_t i = 0; i < values.size(); ++i)
    shifted[i] = shift_down ? std::max(values[i] - budgets[i], 0.0) : values[i] + budgets[i];
  return detail::weighted_power_sum(shifted, params);
}

template <typename Real>
InequalityReport check_impl(const QuantumState<Real>& state, const PartitionSpec& part,
                            const BoundParams& params, const RoofOptions& opts, CheckMode mode) {
  part.check(state.layout);
  params.check_k();
  const double alpha = params.alpha.alpha;
  const double mu = params.mu;
  const RoofDirection dir = mode == CheckMode::monogamy ? RoofDirection::minimize : RoofDirection::maximize;

  InequalityReport report;

  // Full-bipartition measure and the N pairwise measures.
  auto [lhs_value, lhs_prov] = measure_value(state, part, params.alpha, opts, dir);
  report.measure_provenance.push_back({"lhs", double(lhs_value), lhs_prov});

  std::vector<double> pairwise, budgets;
  for (size_t j = 0; j < part.partners.size(); ++j) {
    PartitionSpec pair;
    pair.focus = part.focus;
    pair.partners = {part.partners[j]};
    pair.mode = PartitionMode::one_vs_one;
    auto [value, prov] = measure_value(state, pair, params.alpha, opts, dir);
    report.measure_provenance.push_back({"pairwise[" + std::to_string(j) + "]", double(value), prov});
    pairwise.push_back(std::max(double(value), 0.0));
    budgets.push_back(prov.err_budget);
  }

  report.diagnostics = ordering_diagnostics(pairwise);
  std::vector<double> sorted_budgets;
  for (int i : report.diagnostics.sorted_order) sorted_budgets.push_back(budgets[i]);
  const auto& values = report.diagnostics.sorted_values;

  report.lhs = std::pow(double(lhs_value), mu);

  const bool alpha_ok_mono = alpha >= 2;
  const bool alpha_ok_poly = alpha > 0 && alpha < 2 && alpha != 1;
  const bool zero_pairwise = std::any_of(values.begin(), values.end(), [](double v) { return v <= 0; });

  for (Family family : all_families()) {
    FamilyVerdict fv;
    auto not_applicable = [&](std::string reason) {
      fv.verdict = Verdict::not_applicable;
      fv.reason = std::move(reason);
      report.verdicts[family] = fv;
    };

    if (family == Family::negative_mu) {
      if (mode != CheckMode::monogamy) {
        not_applicable("monogamy-mode family");
        continue;
      }
      if (!(mu < 0)) {
        not_applicable("mu < 0 required");
        continue;
      }
      if (!alpha_ok_mono) {
        not_applicable("alpha >= 2 required");
        continue;
      }
      if (values.size() < 2) {
        not_applicable("needs at least 2 partners");
        continue;
      }
      if (zero_pairwise) {
        not_applicable("zero pairwise value (hypothesis requires all E > 0)");
        continue;
      }
      const double rhs = bound_negative_mu(values, mu);
      // lhs^mu must stay below rhs; shifting roof values down can only
      // raise the admissible rhs.
      double rhs_upper = 0;
      bool unbounded = false;
      for (size_t i = 0; i < values.size(); ++i) {
        const double shifted = values[i] - sorted_budgets[i];
        if (shifted <= 0) {
          unbounded = true;
          break;
        }
        rhs_upper += std::pow(shifted, mu);
      }
      rhs_upper = unbounded ? std::numeric_limits<double>::infinity() : rhs_upper / double(values.size() - 1);
      report.rhs_by_family[family] = rhs;
      report.slack[family] = rhs - report.lhs;
      fv.verdict = report.lhs > rhs_upper + tol::verdict ? Verdict::violated : Verdict::holds;
      report.verdicts[family] = fv;
      continue;
    }

    // Power-sum families.
    if (mode == CheckMode::monogamy) {
      if (!alpha_ok_mono) {
        not_applicable("alpha >= 2 required");
        continue;
      }
      if (family == Family::baseline ? mu != 1.0 : mu < 1) {
        not_applicable(family == Family::baseline ? "mu = 1 required" : "mu >= 1 required");
        continue;
      }
    } else {
      if (!alpha_ok_poly) {
        not_applicable("0 < alpha < 2, alpha != 1 required");
        continue;
      }
      if (family == Family::baseline ? mu != 1.0 : (mu < 0 || mu > 1)) {
        not_applicable(family == Family::baseline ? "mu = 1 required" : "0 <= mu <= 1 required");
        continue;
      }
    }

    BoundParams fam_params = params;
    fam_params.family = family;
    switch (family) {
      case Family::hamming: {
        const auto rk = resolve_k(params.k, report.diagnostics.geometric_min_k,
                                  report.diagnostics.geometric_feasible());
        if (!rk.applicable) {
          not_applicable(rk.reason);
          continue;
        }
        fam_params.k = rk.k;
        break;
      }
      case Family::exponent: {
        const auto rk = resolve_k(params.k, report.diagnostics.sum_min_k, report.diagnostics.sum_feasible());
        if (!rk.applicable) {
          not_applicable(rk.reason);
          continue;
        }
        fam_params.k = rk.k;
        break;
      }
      case Family::kim_exponent:
        // The exponent-indexed corollary inherits the tail-sum hypothesis
        // at k = 1.
        if (!report.diagnostics.sum_feasible()) {
          not_applicable("tail-sum ordering condition infeasible");
          continue;
        }
        fam_params.k.reset();
        break;
      default:
        fam_params.k.reset();
        break;
    }

    const double rhs = mode == CheckMode::monogamy ? bound_monogamy(values, fam_params)
                                                   : bound_polygamy(values, fam_params);
    report.rhs_by_family[family] = rhs;

    if (mode == CheckMode::monogamy) {
      report.slack[family] = report.lhs - rhs;
      const double rhs_floor = shifted_rhs(values, sorted_budgets, fam_params, /*shift_down=*/true);
      fv.verdict = report.lhs < rhs_floor - tol::verdict ? Verdict::violated : Verdict::holds;
    } else {
      report.slack[family] = rhs - report.lhs;
      const double rhs_ceil = shifted_rhs(values, sorted_budgets, fam_params, /*shift_down=*/false);
      fv.verdict = report.lhs > rhs_ceil + tol::verdict ? Verdict::violated : Verdict::holds;
    }
    report.verdicts[family] = fv;
  }
  return report;
}

}  // namespace detail

/// Evaluate every monogamy-direction family (Hamming-weight, exponent, their
/// mu-coefficient counterparts, the plain sum at mu = 1, and the negative-mu
/// family when mu < 0) on the given state and bipartition.
template <typename Real>
InequalityReport check_monogamy(const QuantumState<Real>& state, const PartitionSpec& part,
                                const BoundParams& params, const RoofOptions& opts = {}) {
  return detail::check_impl(state, part, params, opts, detail::CheckMode::monogamy);
}

/// Polygamy-direction counterpart using the assistance measure.
template <typename Real>
InequalityReport check_polygamy(const QuantumState<Real>& state, const PartitionSpec& part,
                                const BoundParams& params, const RoofOptions& opts = {}) {
  return detail::check_impl(state, part, params, opts, detail::CheckMode::polygamy);
}

struct FigureRow {
  double mu = 0;
  double y_solid = 0;
  double y_dashed = 0;
};

/// The worked two-partner curves: figure 1 compares 2^mu against 1 + mu on
/// mu >= 1; figure 2 compares (2/3)^mu 2^mu against (2/3)^mu (1 + mu) on
/// mu in [0,1].
inline std::vector<FigureRow> figure_curves(int which, const std::vector<double>& mu_grid) {
  if (which != 1 && which != 2) throw std::invalid_argument("figure_curves: which must be 1 or 2");
  std::vector<FigureRow> rows;
  rows.reserve(mu_grid.size());
  for (double mu : mu_grid) {
    FigureRow row;
    row.mu = mu;
    if (which == 1) {
      if (mu < 1) throw std::invalid_argument("figure_curves: figure 1 needs mu >= 1");
      row.y_solid = std::pow(2.0, mu);
      row.y_dashed = 1.0 + mu;
    } else {
      if (mu < 0 || mu > 1) throw std::invalid_argument("figure_curves: figure 2 needs mu in [0,1]");
      const double scale = std::pow(2.0 / 3.0, mu);
      row.y_solid = scale * std::pow(2.0, mu);
      row.y_dashed = scale * (1.0 + mu);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qmono
