// JSON schemas: state files, decomposition exports, inequality reports.

#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qmono/inequalities.hpp"
#include "qmono/roof.hpp"
#include "qmono/state.hpp"

namespace qmono {

using json = nlohmann::json;

/// { "dims": [...], "kind": "pure"|"density", "data": [[re,im],...] },
/// density data row-major.
template <typename Real = double>
json state_to_json(const QuantumState<Real>& state) {
  json j;
  j["dims"] = state.layout.dims;
  j["kind"] = state.is_pure() ? "pure" : "density";
  json data = json::array();
  if (state.is_pure()) {
    for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i)
      data.push_back({double(state.amplitudes(i).real()), double(state.amplitudes(i).imag())});
  } else {
    for (Eigen::Index r = 0; r < state.rho.rows(); ++r)
      for (Eigen::Index c = 0; c < state.rho.cols(); ++c)
        data.push_back({double(state.rho(r, c).real()), double(state.rho(r, c).imag())});
  }
  j["data"] = std::move(data);
  return j;
}

template <typename Real = double>
QuantumState<Real> state_from_json(const json& j) {
  if (!j.contains("dims") || !j.contains("kind") || !j.contains("data"))
    throw std::invalid_argument("state file: missing dims, kind or data");
  SystemLayout layout(j.at("dims").get<std::vector<int>>());
  const std::string kind = j.at("kind").get<std::string>();
  const json& data = j.at("data");
  const long d = layout.total_dim();

  auto entry = [&](size_t i) -> Complex<Real> {
    const json& e = data.at(i);
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("state file: data entries must be [re, im]");
    return Complex<Real>(Real(e.at(0).get<double>()), Real(e.at(1).get<double>()));
  };

  if (kind == "pure") {
    if (static_cast<long>(data.size()) != d)
      throw std::invalid_argument("state file: pure data length " + std::to_string(data.size()) +
                                  " does not match dimension " + std::to_string(d));
    Vector<Real> amps(d);
    for (long i = 0; i < d; ++i) amps(i) = entry(i);
    QuantumState<Real> state(layout, std::move(amps));
    if (auto v = validate(state); !v.pass) throw std::invalid_argument("state file: " + v.message());
    return state;
  }
  if (kind == "density") {
    if (static_cast<long>(data.size()) != d * d)
      throw std::invalid_argument("state file: density data length " + std::to_string(data.size()) +
                                  " does not match dimension squared " + std::to_string(d * d));
    Matrix<Real> rho(d, d);
    for (long r = 0; r < d; ++r)
      for (long c = 0; c < d; ++c) rho(r, c) = entry(size_t(r * d + c));
    QuantumState<Real> state(layout, std::move(rho));
    if (auto v = validate(state); !v.pass) throw std::invalid_argument("state file: " + v.message());
    return state;
  }
  throw std::invalid_argument("state file: kind must be \"pure\" or \"density\"");
}

template <typename Real = double>
void save(const QuantumState<Real>& state, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << state_to_json(state).dump(2) << '\n';
}

template <typename Real = double>
QuantumState<Real> load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("state file " + path + ": " + e.what());
  }
  return state_from_json<Real>(j);
}

/// { "weights": [...], "vectors": [[[re,im],...],...] }
template <typename Real = double>
json decomposition_to_json(const Decomposition<Real>& dec) {
  json j;
  j["weights"] = dec.weights;
  json vecs = json::array();
  for (const auto& v : dec.vectors) {
    json amps = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) amps.push_back({double(v(i).real()), double(v(i).imag())});
    vecs.push_back(std::move(amps));
  }
  j["vectors"] = std::move(vecs);
  return j;
}

inline json provenance_to_json(const MeasureProvenance& p) {
  json j;
  j["method"] = to_string(p.method);
  j["restarts"] = p.restarts;
  j["converged"] = p.converged;
  j["err_budget"] = p.err_budget;
  return j;
}

inline json report_to_json(const InequalityReport& report) {
  json j;
  j["lhs"] = report.lhs;
  json rhs = json::object(), verdicts = json::object(), slack = json::object();
  for (const auto& [family, value] : report.rhs_by_family) rhs[family_name(family)] = value;
  for (const auto& [family, fv] : report.verdicts) {
    switch (fv.verdict) {
      case Verdict::holds: verdicts[family_name(family)] = "holds"; break;
      case Verdict::violated: verdicts[family_name(family)] = "violated"; break;
      case Verdict::not_applicable: verdicts[family_name(family)] = "not-applicable(" + fv.reason + ")"; break;
    }
  }
  for (const auto& [family, value] : report.slack) slack[family_name(family)] = value;
  j["rhs_by_family"] = std::move(rhs);
  j["verdicts"] = std::move(verdicts);
  j["slack"] = std::move(slack);

  json diag;
  const auto& d = report.diagnostics;
  diag["geometric_min_k"] = std::isfinite(d.geometric_min_k) ? json(d.geometric_min_k) : json("infeasible");
  diag["sum_min_k"] = std::isfinite(d.sum_min_k) ? json(d.sum_min_k) : json("infeasible");
  diag["sorted_order"] = d.sorted_order;
  j["diagnostics"] = std::move(diag);

  json prov = json::array();
  for (const auto& entry : report.measure_provenance) {
    json e = provenance_to_json(entry.prov);
    e["quantity"] = entry.quantity;
    e["value"] = entry.value;
    prov.push_back(std::move(e));
  }
  j["measure_provenance"] = std::move(prov);
  return j;
}

}  // namespace qmono
