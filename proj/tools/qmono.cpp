// Command-line front end: entropy evaluation, entanglement measures, bound
// checks, mu sweeps, figure data and randomized verification campaigns.
//
// Exit codes: 0 success / all applicable bounds hold, 2 an asserted
// violation was found, 1 usage or numeric error. Machine-readable output
// (JSON or CSV) goes to --out or stdout; diagnostics go to stderr.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmono/inequalities.hpp"
#include "qmono/io.hpp"
#include "qmono/states.hpp"

namespace {

using namespace qmono;

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_violation = 2;

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// --state grammar: ghz:N | w:N | antisym3 | random-pure:dims=2,2,2,seed=7
// | random-mixed:dims=2,2,rank=3,seed=7 | file:PATH
StateSpec parse_state_spec(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);

  StateSpec spec;
  if (head == "ghz" || head == "w") {
    spec.kind = head == "ghz" ? StateFamilyKind::ghz : StateFamilyKind::w;
    if (rest.empty()) throw CLI::ValidationError("--state", head + " needs a subsystem count, e.g. " + head + ":3");
    spec.n = std::stoi(rest);
    return spec;
  }
  if (head == "antisym3") {
    spec.kind = StateFamilyKind::antisym3;
    return spec;
  }
  if (head == "file") {
    spec.kind = StateFamilyKind::file;
    spec.path = rest;
    return spec;
  }
  if (head == "random-pure" || head == "random-mixed") {
    spec.kind = head == "random-pure" ? StateFamilyKind::random_pure : StateFamilyKind::random_mixed;
    std::string key;
    std::stringstream ss(rest);
    std::string token;
    while (std::getline(ss, token, ',')) {
      const auto eq = token.find('=');
      std::string value = token;
      if (eq != std::string::npos) {
        key = token.substr(0, eq);
        value = token.substr(eq + 1);
      }
      if (key == "dims")
        spec.dims.push_back(std::stoi(value));
      else if (key == "seed")
        spec.seed = std::stoull(value);
      else if (key == "rank")
        spec.rank = std::stoi(value);
      else
        throw CLI::ValidationError("--state", "unknown key '" + key + "' in " + text);
    }
    return spec;
  }
  throw CLI::ValidationError("--state", "unknown state '" + text + "'");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) out.push_back(std::stoi(token));
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) out.push_back(std::stod(token));
  return out;
}

// "a:b:step" inclusive grid; "a" alone is a single point.
std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ':')) parts.push_back(token);
  if (parts.size() == 1) return {std::stod(parts[0])};
  if (parts.size() != 3) throw CLI::ValidationError("--mu-range", "expected a:b:step");
  const double a = std::stod(parts[0]), b = std::stod(parts[1]), step = std::stod(parts[2]);
  if (step <= 0) throw CLI::ValidationError("--mu-range", "step must be > 0");
  if (b < a) throw CLI::ValidationError("--mu-range", "empty grid");
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double mu = a + i * step;
    if (mu > b + step * 1e-9) break;
    out.push_back(std::min(mu, b));
  }
  return out;
}

struct OutputTarget {
  std::string path;  // empty: stdout

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      std::cout.flush();
      return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
  }
};

enum class Format { standard, json, csv };

struct CommonOpts {
  std::string state_text;
  std::vector<int> trace_keep;
  OutputTarget out;
  RoofOptions roof;
  bool want_json = false;
  bool want_csv = false;

  Format format() const {
    if (want_json && want_csv) throw std::invalid_argument("--json and --csv are mutually exclusive");
    return want_json ? Format::json : want_csv ? Format::csv : Format::standard;
  }
};

void add_common(CLI::App* cmd, CommonOpts& common, bool needs_state = true) {
  auto* state = cmd->add_option("--state", common.state_text,
                                "State: ghz:N | w:N | antisym3 | random-pure:dims=2,2,2,seed=7 | "
                                "random-mixed:dims=2,2,rank=3,seed=7 | file:PATH");
  if (needs_state) state->required();
  cmd->add_option("--trace-keep", [&common](const std::vector<std::string>& vals) {
        common.trace_keep = parse_int_list(vals.back());
        return true;
      }, "Keep these subsystems (partial trace) before the command body");
  cmd->add_option("--out", common.out.path, "Write primary output to PATH instead of stdout");
  cmd->add_flag("--json", common.want_json, "Force JSON output");
  cmd->add_flag("--csv", common.want_csv, "Force CSV output");
  cmd->add_option("--restarts", common.roof.restarts, "Roof-optimizer restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", common.roof.tol, "Roof-optimizer convergence tolerance");
  cmd->add_option("--max-ensemble", common.roof.max_ensemble, "Decomposition length cap (0: 2*rank)");
  cmd->add_option("--seed", common.roof.seed, "Seed for the roof optimizer / campaign");
}

QuantumState<double> build_state(const CommonOpts& common) {
  QuantumState<double> state = make<double>(parse_state_spec(common.state_text));
  if (!common.trace_keep.empty()) state = partial_trace(state, common.trace_keep);
  return state;
}

PartitionSpec build_partition(const QuantumState<double>& state, int focus, const std::string& partners_text) {
  if (partners_text.empty()) return one_vs_rest(state.layout, focus);
  PartitionSpec part;
  part.focus = focus;
  part.partners = parse_int_list(partners_text);
  part.check(state.layout);
  return part;
}

// ---------------------------------------------------------------- entropy

int cmd_entropy(const CommonOpts& common, double alpha, bool von_neumann) {
  if (common.format() == Format::csv) throw std::invalid_argument("entropy has no CSV form");
  const auto state = build_state(common);
  double value = 0;
  if (von_neumann) {
    value = von_neumann_entropy(state);
  } else {
    if (alpha == 1.0)
      throw std::invalid_argument("alpha = 1 is the von Neumann limit; use --von-neumann");
    value = renyi_entropy(state, AlphaParam(alpha));
  }
  if (common.format() == Format::json) {
    json j;
    j["value"] = value;
    common.out.write(j.dump(2) + "\n");
  } else {
    common.out.write(fmt12(value) + "\n");
  }
  return exit_ok;
}

// ---------------------------------------------------------------- measure

int cmd_measure(const CommonOpts& common, int focus, const std::string& partners_text, double alpha,
                bool assist, const std::string& decomposition_path) {
  if (common.format() == Format::csv) throw std::invalid_argument("measure has no CSV form");
  const auto state = build_state(common);
  const auto part = build_partition(state, focus, partners_text);
  const AlphaParam a(alpha);
  const auto res = assist ? renyi_assistance(state, part, a, common.roof)
                          : renyi_entanglement(state, part, a, common.roof);
  json j;
  j["value"] = res.value;
  j["ensemble_average"] = res.ensemble_average;
  j["provenance"] = provenance_to_json(res.provenance);
  common.out.write(j.dump(2) + "\n");
  if (!decomposition_path.empty()) {
    std::ofstream out(decomposition_path);
    if (!out) throw std::runtime_error("cannot open " + decomposition_path + " for writing");
    out << decomposition_to_json(res.decomposition).dump(2) << '\n';
  }
  return exit_ok;
}

// ---------------------------------------------------------------- check

InequalityReport run_check(const QuantumState<double>& state, const PartitionSpec& part,
                           const BoundParams& params, const RoofOptions& roof, const std::string& mode) {
  if (mode == "polygamy") return check_polygamy(state, part, params, roof);
  return check_monogamy(state, part, params, roof);
}

int cmd_check(const CommonOpts& common, int focus, const std::string& partners_text, double alpha,
              double mu, std::optional<double> k, const std::string& mode) {
  const auto state = build_state(common);
  const auto part = build_partition(state, focus, partners_text);
  if (mode == "negative" && mu >= 0) throw std::invalid_argument("--mode negative requires --mu < 0");
  BoundParams params;
  params.alpha = AlphaParam(alpha);
  params.mu = mu;
  params.k = k;
  const auto report = run_check(state, part, params, common.roof, mode);
  if (common.format() == Format::csv) {
    std::string csv = "family,lhs,rhs,slack,verdict\n";
    for (const auto& [family, fv] : report.verdicts) {
      auto rhs_it = report.rhs_by_family.find(family);
      auto slack_it = report.slack.find(family);
      csv += std::string(family_name(family)) + "," + fmt12(report.lhs) + "," +
             (rhs_it == report.rhs_by_family.end() ? "nan" : fmt12(rhs_it->second)) + "," +
             (slack_it == report.slack.end() ? "nan" : fmt12(slack_it->second)) + "," +
             (fv.verdict == Verdict::holds ? "holds"
              : fv.verdict == Verdict::violated ? "violated" : "not-applicable") + "\n";
    }
    common.out.write(csv);
  } else {
    common.out.write(report_to_json(report).dump(2) + "\n");
  }
  return report.any_violated() ? exit_violation : exit_ok;
}

// ---------------------------------------------------------------- sweep

std::string provenance_summary(const InequalityReport& report) {
  std::string s;
  for (const auto& entry : report.measure_provenance) {
    if (!s.empty()) s += ";";
    s += to_string(entry.prov.method);
  }
  return s;
}

int cmd_sweep(const CommonOpts& common, int focus, const std::string& partners_text, double alpha,
              const std::string& mu_range, std::optional<double> k, const std::string& mode) {
  const auto state = build_state(common);
  const auto part = build_partition(state, focus, partners_text);
  const auto grid = parse_grid(mu_range);
  const bool as_json = common.format() == Format::json;

  std::string csv = "mu,lhs";
  for (Family f : all_families()) csv += std::string(",rhs_") + family_name(f);
  for (Family f : all_families()) csv += std::string(",slack_") + family_name(f);
  csv += ",provenance\n";
  json rows = json::array();

  bool violated = false;
  for (double mu : grid) {
    BoundParams params;
    params.alpha = AlphaParam(alpha);
    params.mu = mu;
    params.k = k;
    const auto report = run_check(state, part, params, common.roof, mode);
    violated = violated || report.any_violated();
    if (as_json) {
      json row = report_to_json(report);
      row["mu"] = mu;
      rows.push_back(std::move(row));
      continue;
    }
    csv += fmt12(mu) + "," + fmt12(report.lhs);
    for (Family f : all_families()) {
      auto it = report.rhs_by_family.find(f);
      csv += "," + (it == report.rhs_by_family.end() ? "nan" : fmt12(it->second));
    }
    for (Family f : all_families()) {
      auto it = report.slack.find(f);
      csv += "," + (it == report.slack.end() ? "nan" : fmt12(it->second));
    }
    csv += "," + provenance_summary(report) + "\n";
  }
  common.out.write(as_json ? rows.dump(2) + "\n" : csv);
  return violated ? exit_violation : exit_ok;
}

// ---------------------------------------------------------------- figure

int cmd_figure(const CommonOpts& common, int which, std::string mu_range) {
  if (mu_range.empty()) mu_range = which == 1 ? "1:5:0.01" : "0:1:0.01";
  const auto rows = figure_curves(which, parse_grid(mu_range));
  if (common.format() == Format::json) {
    json arr = json::array();
    for (const auto& row : rows)
      arr.push_back({{"mu", row.mu}, {"y_solid", row.y_solid}, {"y_dashed", row.y_dashed}});
    common.out.write(arr.dump(2) + "\n");
    return exit_ok;
  }
  std::string csv = "mu,y_solid,y_dashed\n";
  for (const auto& row : rows)
    csv += fmt12(row.mu) + "," + fmt12(row.y_solid) + "," + fmt12(row.y_dashed) + "\n";
  common.out.write(csv);
  return exit_ok;
}

// ---------------------------------------------------------------- fuzz

int cmd_fuzz(const CommonOpts& common, int focus, int trials, const std::string& alphas_text,
             const std::string& mus_text, const std::string& mode, bool stop_on_violation,
             const std::string& trials_out) {
  if (common.format() == Format::csv)
    throw std::invalid_argument("fuzz prints a JSON summary; use --trials-out for the per-trial CSV");
  const StateSpec template_spec = parse_state_spec(common.state_text);
  const auto alphas = parse_double_list(alphas_text);
  const auto mus = parse_double_list(mus_text);
  if (trials < 1 || alphas.empty() || mus.empty())
    throw std::invalid_argument("fuzz: trials >= 1 and nonempty alpha/mu sets required");
  for (double mu : mus) {
    if (mode == "negative" && mu >= 0) throw std::invalid_argument("fuzz: negative mode needs mu < 0");
    if (mode == "polygamy" && (mu < 0 || mu > 1)) throw std::invalid_argument("fuzz: polygamy needs mu in [0,1]");
    if (mode == "monogamy" && mu < 1) throw std::invalid_argument("fuzz: monogamy mode needs mu >= 1");
  }

  struct Counts {
    long holds = 0, violated = 0, not_applicable = 0;
  };
  std::map<Family, Counts> counts;
  double min_slack = std::numeric_limits<double>::infinity();
  std::uint64_t min_slack_seed = 0;
  std::string min_slack_family;
  bool any_violation = false, stopped_early = false;
  bool any_applicable = false;

  std::string trial_csv = "trial,seed,alpha,mu,family,lhs,rhs,slack,verdict\n";

  for (int trial = 0; trial < trials && !stopped_early; ++trial) {
    StateSpec spec = template_spec;
    const std::uint64_t trial_seed = common.roof.seed + std::uint64_t(trial);
    if (spec.kind == StateFamilyKind::random_pure || spec.kind == StateFamilyKind::random_mixed)
      spec.seed = spec.seed.value_or(0) + trial_seed;
    const auto state = make<double>(spec);
    const auto part = one_vs_rest(state.layout, focus);

    for (double alpha : alphas) {
      for (double mu : mus) {
        BoundParams params;
        params.alpha = AlphaParam(alpha);
        params.mu = mu;
        RoofOptions roof = common.roof;
        roof.seed = trial_seed;
        const auto report = run_check(state, part, params, roof, mode);
        for (const auto& [family, fv] : report.verdicts) {
          switch (fv.verdict) {
            case Verdict::holds: counts[family].holds++; any_applicable = true; break;
            case Verdict::violated: counts[family].violated++; any_applicable = true; break;
            case Verdict::not_applicable: counts[family].not_applicable++; break;
          }
          if (fv.verdict != Verdict::not_applicable) {
            const double slack = report.slack.at(family);
            if (slack < min_slack) {
              min_slack = slack;
              min_slack_seed = trial_seed;
              min_slack_family = family_name(family);
            }
          }
          if (!trials_out.empty()) {
            auto rhs_it = report.rhs_by_family.find(family);
            auto slack_it = report.slack.find(family);
            trial_csv += std::to_string(trial) + "," + std::to_string(trial_seed) + "," + fmt12(alpha) +
                         "," + fmt12(mu) + "," + family_name(family) + "," + fmt12(report.lhs) + "," +
                         (rhs_it == report.rhs_by_family.end() ? "nan" : fmt12(rhs_it->second)) + "," +
                         (slack_it == report.slack.end() ? "nan" : fmt12(slack_it->second)) + "," +
                         (fv.verdict == Verdict::holds ? "holds"
                          : fv.verdict == Verdict::violated ? "violated" : "not-applicable") + "\n";
          }
        }
        if (report.any_violated()) {
          any_violation = true;
          if (stop_on_violation) stopped_early = true;
        }
      }
    }
  }

  json summary;
  summary["trials"] = trials;
  summary["mode"] = mode;
  json fams = json::object();
  for (const auto& [family, c] : counts) {
    json f;
    f["holds"] = c.holds;
    f["violated"] = c.violated;
    f["not_applicable"] = c.not_applicable;
    fams[family_name(family)] = std::move(f);
  }
  summary["families"] = std::move(fams);
  if (std::isfinite(min_slack)) {
    summary["min_slack"] = {{"value", min_slack}, {"seed", min_slack_seed}, {"family", min_slack_family}};
  }
  summary["stopped_early"] = stopped_early;
  common.out.write(summary.dump(2) + "\n");

  if (!trials_out.empty()) {
    std::ofstream out(trials_out);
    if (!out) throw std::runtime_error("cannot open " + trials_out + " for writing");
    out << trial_csv;
  }
  if (!any_applicable) std::cerr << "warning: no applicable family in any trial\n";
  return any_violation ? exit_violation : exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Renyi-alpha entanglement measures and multiqubit monogamy / polygamy bound checks"};
  app.require_subcommand(1);

  // entropy
  CommonOpts entropy_common;
  double entropy_alpha = 2.0;
  bool von_neumann = false;
  auto* entropy_cmd = app.add_subcommand("entropy", "Renyi or von Neumann entropy of a state");
  add_common(entropy_cmd, entropy_common);
  auto* alpha_opt = entropy_cmd->add_option("--alpha", entropy_alpha, "Renyi order (> 0, != 1)");
  entropy_cmd->add_flag("--von-neumann", von_neumann, "Compute the von Neumann entropy instead");
  entropy_cmd->callback([&] {
    if (!von_neumann && alpha_opt->count() == 0)
      throw CLI::RequiredError("--alpha (or --von-neumann)");
  });

  // measure
  CommonOpts measure_common;
  int measure_focus = 0;
  std::string measure_partners, measure_dec_path;
  double measure_alpha = 2.0;
  bool measure_assist = false;
  auto* measure_cmd = app.add_subcommand("measure", "Renyi-alpha entanglement (or assistance) of a bipartition");
  add_common(measure_cmd, measure_common);
  measure_cmd->add_option("--focus", measure_focus, "Focus subsystem A");
  measure_cmd->add_option("--partners", measure_partners, "Partner subsystems (default: all others)");
  measure_cmd->add_option("--alpha", measure_alpha, "Renyi order")->required();
  measure_cmd->add_flag("--assist", measure_assist, "Maximize instead of minimize (assistance)");
  measure_cmd->add_option("--export-decomposition", measure_dec_path, "Write the decomposition JSON to PATH");

  // check
  CommonOpts check_common;
  int check_focus = 0;
  std::string check_partners, check_mode = "monogamy";
  double check_alpha = 3.0, check_mu = 1.0;
  std::optional<double> check_k;
  auto* check_cmd = app.add_subcommand("check", "Evaluate every bound family; JSON report");
  add_common(check_cmd, check_common);
  check_cmd->add_option("--focus", check_focus, "Focus subsystem A");
  check_cmd->add_option("--partners", check_partners, "Partner subsystems (default: all others)");
  check_cmd->add_option("--alpha", check_alpha, "Renyi order")->required();
  check_cmd->add_option("--mu", check_mu, "Power of the measure")->required();
  check_cmd->add_option("--k", [&check_k](const std::vector<std::string>& vals) {
        check_k = std::stod(vals.back());
        return true;
      }, "Decay certificate k in (0,1] (default: minimal feasible)");
  check_cmd->add_option("--mode", check_mode, "monogamy | polygamy | negative")
      ->check(CLI::IsMember({"monogamy", "polygamy", "negative"}));

  // sweep
  CommonOpts sweep_common;
  int sweep_focus = 0;
  std::string sweep_partners, sweep_mode = "monogamy", sweep_range;
  double sweep_alpha = 3.0;
  std::optional<double> sweep_k;
  auto* sweep_cmd = app.add_subcommand("sweep", "Mu sweep of the bound families; CSV");
  add_common(sweep_cmd, sweep_common);
  sweep_cmd->add_option("--focus", sweep_focus, "Focus subsystem A");
  sweep_cmd->add_option("--partners", sweep_partners, "Partner subsystems (default: all others)");
  sweep_cmd->add_option("--alpha", sweep_alpha, "Renyi order")->required();
  sweep_cmd->add_option("--mu-range", sweep_range, "Grid a:b:step")->required();
  sweep_cmd->add_option("--k", [&sweep_k](const std::vector<std::string>& vals) {
        sweep_k = std::stod(vals.back());
        return true;
      }, "Decay certificate k in (0,1]");
  sweep_cmd->add_option("--mode", sweep_mode, "monogamy | polygamy | negative")
      ->check(CLI::IsMember({"monogamy", "polygamy", "negative"}));

  // figure
  CommonOpts figure_common;
  int figure_which = 1;
  std::string figure_range;
  auto* figure_cmd = app.add_subcommand("figure", "Worked two-partner curves; CSV");
  add_common(figure_cmd, figure_common, /*needs_state=*/false);
  figure_cmd->add_option("--which", figure_which, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  figure_cmd->add_option("--mu-range", figure_range, "Grid a:b:step (defaults to the figure's domain)");

  // fuzz
  CommonOpts fuzz_common;
  int fuzz_focus = 0, fuzz_trials = 100;
  std::string fuzz_alphas = "2,3", fuzz_mus = "1,2", fuzz_mode = "monogamy", fuzz_trials_out;
  bool fuzz_stop = false;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Randomized verification campaign; JSON summary");
  add_common(fuzz_cmd, fuzz_common);
  fuzz_cmd->add_option("--focus", fuzz_focus, "Focus subsystem A");
  fuzz_cmd->add_option("--trials", fuzz_trials, "Number of trials")->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--alpha", fuzz_alphas, "Comma-separated Renyi orders");
  fuzz_cmd->add_option("--mu", fuzz_mus, "Comma-separated powers");
  fuzz_cmd->add_option("--mode", fuzz_mode, "monogamy | polygamy | negative")
      ->check(CLI::IsMember({"monogamy", "polygamy", "negative"}));
  fuzz_cmd->add_flag("--stop-on-violation", fuzz_stop, "Stop at the first asserted violation");
  fuzz_cmd->add_option("--trials-out", fuzz_trials_out, "Write the per-trial CSV to PATH");

  CLI11_PARSE(app, argc, argv);

  try {
    if (entropy_cmd->parsed()) return cmd_entropy(entropy_common, entropy_alpha, von_neumann);
    if (measure_cmd->parsed())
      return cmd_measure(measure_common, measure_focus, measure_partners, measure_alpha, measure_assist,
                         measure_dec_path);
    if (check_cmd->parsed())
      return cmd_check(check_common, check_focus, check_partners, check_alpha, check_mu, check_k, check_mode);
    if (sweep_cmd->parsed())
      return cmd_sweep(sweep_common, sweep_focus, sweep_partners, sweep_alpha, sweep_range, sweep_k, sweep_mode);
    if (figure_cmd->parsed()) return cmd_figure(figure_common, figure_which, figure_range);
    if (fuzz_cmd->parsed())
      return cmd_fuzz(fuzz_common, fuzz_focus, fuzz_trials, fuzz_alphas, fuzz_mus, fuzz_mode, fuzz_stop,
                      fuzz_trials_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_error;
  }
  return exit_error;
}
