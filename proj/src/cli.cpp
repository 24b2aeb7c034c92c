#include "kgo/cli.hpp"

#include "kgo/errors.hpp"
#include "kgo/published.hpp"
#include "kgo/serialize.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <exception>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <variant>

namespace kgo::cli {
namespace {

using nlohmann::json;

std::string_view to_string(Command c) {
  switch (c) {
    case Command::spectrum: return "spectrum";
    case Command::table: return "table";
    case Command::density: return "density";
    case Command::check: return "check";
    case Command::selftest: return "selftest";
  }
  return "?";
}

std::string_view to_string(FisherMode m) {
  switch (m) {
    case FisherMode::direct: return "direct";
    case FisherMode::paper: return "paper";
    case FisherMode::both: return "both";
  }
  return "?";
}

template <class T, class F>
std::string join(const std::vector<T>& items, F&& fmt_item) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += fmt_item(items[i]);
  }
  return out;
}

std::string gamma_text(const RunConfig& c) {
  return join(c.gamma_list, [](double g) { return format_number(g); });
}

std::string n_text(const RunConfig& c) {
  return join(c.n_list, [](int n) { return std::to_string(n); });
}

json meta_json(const RunConfig& c) {
  json m{{"command", std::string(to_string(c.command))},
         {"gamma_list", c.gamma_list},
         {"branch", std::string(kgo::to_string(c.branch))},
         {"rel_tol", c.rel_tol}};
  switch (c.command) {
    case Command::spectrum:
      m["n_max"] = c.n_max;
      break;
    case Command::density:
      m["n"] = c.n_list.front();
      m["space"] = std::string(kgo::to_string(c.space));
      m["kind"] = std::string(kgo::to_string(c.kind));
      break;
    default:
      m["n_list"] = c.n_list;
      m["mode"] = std::string(to_string(c.mode));
      m["compare_paper"] = c.compare_paper;
      m["forensic"] = c.forensic;
      break;
  }
  return m;
}

std::string meta_line(const RunConfig& c) {
  std::string line = fmt::format("# kgo {} gamma={} branch={} rel_tol={}", to_string(c.command),
                                 gamma_text(c), kgo::to_string(c.branch), format_number(c.rel_tol));
  switch (c.command) {
    case Command::spectrum:
      line += fmt::format(" n_max={}", c.n_max);
      break;
    case Command::density:
      line += fmt::format(" n={} space={} kind={}", c.n_list.front(), kgo::to_string(c.space),
                          kgo::to_string(c.kind));
      break;
    default:
      line += fmt::format(" n={} mode={} compare_paper={} forensic={}", n_text(c),
                          to_string(c.mode), c.compare_paper ? 1 : 0, c.forensic ? 1 : 0);
      break;
  }
  return line;
}

// Result of one row: the report, or the NoPhysicalRoot it raised.
using RowOutcome = std::variant<MeasureReport, std::exception_ptr>;

std::vector<RowOutcome> compute_rows(const RunConfig& config, bool paper_mode) {
  const QuadratureSpec spec = config.quadrature();
  ReportOptions options;
  options.forensic = config.forensic;
  options.paper_mode = paper_mode;

  std::vector<std::future<RowOutcome>> futures;
  for (int n : config.n_list)
    for (double g : config.gamma_list)
      futures.push_back(std::async(std::launch::async, [=]() -> RowOutcome {
        try {
          return report(g, n, config.branch, spec, options);
        } catch (const NoPhysicalRoot&) {
          return std::current_exception();
        }
      }));

  std::vector<RowOutcome> rows;
  rows.reserve(futures.size());
  for (auto& f : futures) rows.push_back(f.get());
  return rows;
}

// Replaces the direct Fisher values with the closed-form ones and rebuilds
// everything that depends on them.
MeasureReport with_paper_fisher(MeasureReport r) {
  r.Fx = r.Fx_paper;
  r.Fp = r.Fp_paper;
  assemble_derived(r);
  return r;
}

std::string status_of(const InequalityRecord& rec) {
  return rec.satisfied ? "satisfied" : "violated";
}

Finding recomputed_finding(const MeasureReport& r, std::string item,
                           const std::optional<InequalityRecord>& rec) {
  Finding f{r.n, r.gamma, std::move(item), "recomputed", "unavailable", {}, {}, {}, {}};
  if (rec) {
    f.status = status_of(*rec);
    f.lhs = rec->lhs;
    f.rhs = rec->rhs;
    f.margin = rec->margin;
  }
  return f;
}

const std::optional<InequalityRecord>* record_by_name(const MeasureReport& r,
                                                      const std::string& name) {
  if (name == "stam_x") return &r.stam_x;
  if (name == "stam_p") return &r.stam_p;
  if (name == "cramer_rao_x") return &r.cramer_rao_x;
  if (name == "cramer_rao_p") return &r.cramer_rao_p;
  if (name == "fisher_product") return &r.fisher_product;
  if (name == "bbm") return &r.bbm;
  return nullptr;
}

void paper_fisher_finding(const MeasureReport& r, const char* item,
                          const std::optional<double>& paper, const std::optional<double>& direct,
                          double threshold, std::vector<Finding>& out) {
  Finding f{r.n, r.gamma, item, "recomputed", "unavailable", {}, {}, {}, {}};
  if (paper && direct) {
    f.lhs = *paper;
    f.rhs = *direct;
    f.margin = (*paper - *direct) / std::abs(*direct);
    f.status = std::abs(*f.margin) > threshold ? "divergent" : "consistent";
  }
  out.push_back(std::move(f));
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json finding_json(const Finding& f) {
  json j{{"n", f.n},
         {"gamma", f.gamma},
         {"item", f.item},
         {"source", f.source},
         {"status", f.status},
         {"lhs", optional_json(f.lhs)},
         {"rhs", optional_json(f.rhs)},
         {"margin", optional_json(f.margin)}};
  j["recomputed"] = f.recomputed ? to_json(*f.recomputed) : json(nullptr);
  return j;
}

// summary[item][source][status] = count, in sorted key order.
using Summary = std::map<std::string, std::map<std::string, std::map<std::string, int>>>;

Summary summarize(const std::vector<Finding>& findings) {
  Summary s;
  for (const auto& f : findings) ++s[f.item][f.source][f.status];
  return s;
}

void write_spectrum_failure(std::ostream& err, const std::string& message) {
  err << "kgo: spectrum failure: " << message << '\n';
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ':')) parts.push_back(piece);
  if (parts.size() != 3) throw std::invalid_argument("grid must be min:max:count, got '" + text + "'");
  GridSpec g;
  std::size_t used = 0;
  try {
    g.min = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("");
    g.max = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("");
    g.count = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("grid must be min:max:count, got '" + text + "'");
  }
  if (g.count < 2) throw std::invalid_argument("grid count must be at least 2");
  if (!(g.min < g.max)) throw std::invalid_argument("grid min must be below max");
  return g;
}

void RunConfig::validate() const {
  if (gamma_list.empty()) throw std::invalid_argument("gamma list is empty");
  if (n_list.empty()) throw std::invalid_argument("n list is empty");
  for (double g : gamma_list) ModelConfig{g, branch}.validate();
  for (int n : n_list)
    if (n < 0) throw std::invalid_argument("n must be non-negative");
  if (n_max < 0) throw std::invalid_argument("n-max must be non-negative");
  if (grid && grid->count < 2) throw std::invalid_argument("grid count must be at least 2");
  quadrature().validate();
}

QuadratureSpec RunConfig::quadrature() const {
  QuadratureSpec spec;
  spec.rel_tol = rel_tol;
  return spec;
}

std::vector<MeasureReport> compute_reports(const RunConfig& config) {
  std::vector<MeasureReport> out;
  for (auto& row : compute_rows(config, config.mode != FisherMode::direct)) {
    if (auto* e = std::get_if<std::exception_ptr>(&row)) std::rethrow_exception(*e);
    auto& r = std::get<MeasureReport>(row);
    out.push_back(config.mode == FisherMode::paper ? with_paper_fisher(std::move(r)) : std::move(r));
  }
  return out;
}

std::vector<InequalityRecord> published_inequalities(int n, double gamma) {
  const auto row = published_row(n, gamma);
  if (!row) return {};
  return {make_inequality("stam_x", Relation::less_equal, row->Fx, 4.0 * row->p2),
          make_inequality("stam_p", Relation::less_equal, row->Fp, 4.0 * row->x2),
          make_inequality("cramer_rao_x", Relation::greater_equal, row->Fx, 1.0 / row->x2),
          make_inequality("cramer_rao_p", Relation::greater_equal, row->Fp, 1.0 / row->p2),
          make_inequality("fisher_product", Relation::greater_equal, row->FxFp, 4.0),
          make_inequality("bbm", Relation::greater_equal, row->S_sum, bbm_bound())};
}

AuditResult audit(const RunConfig& config) {
  static const char* const kItems[] = {"stam_x",       "stam_p",         "cramer_rao_x",
                                       "cramer_rao_p", "fisher_product", "bbm"};
  AuditResult result;
  const ReportOptions defaults;
  const auto rows = compute_rows(config, true);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int n = config.n_list[i / config.gamma_list.size()];
    const double g = config.gamma_list[i % config.gamma_list.size()];
    if (std::holds_alternative<std::exception_ptr>(rows[i])) {
      result.spectrum_failure = true;
      result.findings.push_back({n, g, "state", "recomputed", "no_physical_root", {}, {}, {}, {}});
      continue;
    }
    const auto& r = std::get<MeasureReport>(rows[i]);
    result.reports.push_back(r);

    for (const char* item : kItems) result.findings.push_back(recomputed_finding(r, item, *record_by_name(r, item)));
    paper_fisher_finding(r, "fisher_paper_x", r.Fx_paper, r.Fx,
                         defaults.paper_divergence_threshold, result.findings);
    paper_fisher_finding(r, "fisher_paper_p", r.Fp_paper, r.Fp,
                         defaults.paper_divergence_threshold, result.findings);
    for (const auto& fl : r.flags)
      result.findings.push_back({n, g, "state", "recomputed", fl, {}, {}, {}, {}});

    if (!config.compare_paper) continue;
    for (const auto& pub : published_inequalities(r.n, r.gamma)) {
      Finding f{r.n, r.gamma, pub.name, "published", status_of(pub), pub.lhs, pub.rhs, pub.margin, {}};
      if (const auto* rec = record_by_name(r, pub.name); rec && *rec) f.recomputed = **rec;
      result.findings.push_back(std::move(f));
    }
  }
  return result;
}

int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err) {
  struct Series {
    double gamma;
    std::vector<EnergyLevel> levels;
    std::optional<double> asym;
  };
  std::vector<Series> all;
  try {
    for (double g : config.gamma_list) {
      const ModelConfig model{g, config.branch};
      std::optional<double> asym;
      if (g != 0.0) asym = asymptote(g);
      all.push_back({g, spectrum(model, config.n_max), asym});
    }
  } catch (const NoPhysicalRoot& e) {
    write_spectrum_failure(err, e.what());
    return exit_code::spectrum_failure;
  }

  if (config.format == Format::json) {
    json rows = json::array();
    for (const auto& s : all) {
      json levels = json::array();
      for (const auto& l : s.levels) levels.push_back(to_json(l));
      rows.push_back({{"gamma", s.gamma},
                      {"branch", std::string(kgo::to_string(config.branch))},
                      {"asymptote", optional_json(s.asym)},
                      {"levels", levels}});
    }
    out << json{{"meta", meta_json(config)}, {"rows", rows}}.dump(2) << '\n';
    return exit_code::ok;
  }

  out << meta_line(config) << '\n';
  out << "gamma,n,E,lambda,asymptote,quartic_residual,condition_residual\n";
  for (const auto& s : all)
    for (const auto& l : s.levels)
      out << format_number(s.gamma) << ',' << l.n << ',' << format_number(l.E) << ','
          << format_number(l.lambda) << ','
          << format_optional(s.asym) << ','
          << format_number(l.quartic_residual) << ',' << format_number(l.condition_residual)
          << '\n';
  return exit_code::ok;
}

int cmd_table(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<MeasureReport> reports;
  try {
    reports = compute_reports(config);
  } catch (const NoPhysicalRoot& e) {
    write_spectrum_failure(err, e.what());
    return exit_code::spectrum_failure;
  }

  bool forensic = false;
  for (const auto& r : reports) forensic = forensic || r.forensic;

  if (config.format == Format::json) {
    json rows = json::array();
    for (const auto& r : reports) {
      json j = to_json(r);
      if (config.compare_paper) {
        const auto pub = published_row(r.n, r.gamma);
        j["published"] = pub ? to_json(*pub) : json(nullptr);
      }
      rows.push_back(std::move(j));
    }
    out << json{{"meta", meta_json(config)}, {"rows", rows}}.dump(2) << '\n';
  } else {
    out << meta_line(config) << '\n';
    out << csv_header(config.compare_paper) << '\n';
    for (const auto& r : reports) out << csv_row(r, config.compare_paper) << '\n';
  }
  return forensic ? exit_code::forensic_rows : exit_code::ok;
}

int cmd_density(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const double gamma = config.gamma_list.front();
  const int n = config.n_list.front();
  EnergyLevel level;
  try {
    level = energy_level(ModelConfig{gamma, config.branch}, n);
  } catch (const NoPhysicalRoot& e) {
    write_spectrum_failure(err, e.what());
    return exit_code::spectrum_failure;
  }

  DensityCurve curve;
  try {
    const WaveState state =
        make_state(level, gamma, config.space, Normalization::strict, config.quadrature());
    const double R = state.truncation_radius();
    const GridSpec g = config.grid.value_or(GridSpec{-R, R, 2001});
    curve = density_curve(state, config.kind, make_grid(g.min, g.max, g.count));
  } catch (const NonNormalizable& e) {
    err << "kgo: invalid density: " << e.what() << '\n';
    return exit_code::invalid_density;
  } catch (const InvalidDensity& e) {
    err << "kgo: invalid density: " << e.what() << '\n';
    return exit_code::invalid_density;
  }

  if (config.format == Format::json) {
    json meta = meta_json(config);
    meta["E"] = level.E;
    out << json{{"meta", meta}, {"rows", json::array({to_json(curve)})}}.dump(2) << '\n';
  } else {
    out << meta_line(config) << " E=" << format_number(level.E) << '\n';
    out << density_csv(curve);
  }
  return exit_code::ok;
}

int cmd_check(const RunConfig& config, std::ostream& out, std::ostream& /*err*/) {
  const AuditResult result = audit(config);
  const Summary summary = summarize(result.findings);

  if (config.format == Format::json) {
    json rows = json::array();
    for (const auto& r : result.reports) rows.push_back(to_json(r));
    json findings = json::array();
    for (const auto& f : result.findings) findings.push_back(finding_json(f));
    out << json{{"meta", meta_json(config)},
                {"rows", rows},
                {"findings", findings},
                {"summary", summary}}
               .dump(2)
        << '\n';
  } else {
    out << meta_line(config) << '\n';
    out << "n,gamma,item,source,status,lhs,rhs,margin,recomputed_lhs,recomputed_rhs,"
           "recomputed_margin\n";
    for (const auto& f : result.findings) {
      out << f.n << ',' << format_number(f.gamma) << ',' << f.item << ',' << f.source << ','
          << f.status << ',' << format_optional(f.lhs) << ',' << format_optional(f.rhs) << ','
          << format_optional(f.margin);
      if (f.recomputed)
        out << ',' << format_number(f.recomputed->lhs) << ',' << format_number(f.recomputed->rhs)
            << ',' << format_number(f.recomputed->margin);
      else
        out << ",NA,NA,NA";
      out << '\n';
    }
    for (const auto& [item, sources] : summary)
      for (const auto& [source, counts] : sources) {
        out << "# summary " << item << ' ' << source;
        for (const auto& [status, count] : counts) out << ' ' << status << '=' << count;
        out << '\n';
      }
  }
  return exit_code::ok;
}

int cmd_selftest(const RunConfig& config, std::ostream& out, std::ostream& /*err*/) {
  RunConfig c = config;
  c.gamma_list = {0.0};
  c.n_list = {0, 1, 2};
  c.mode = FisherMode::direct;
  c.forensic = false;
  const auto reports = compute_reports(c);

  int failures = 0;
  auto expect = [&](const std::string& what, const std::optional<double>& got, double want,
                    double tol) {
    const bool ok = got && std::abs(*got - want) <= tol;
    if (!ok) ++failures;
    out << (ok ? "PASS " : "FAIL ") << what << " = " << format_optional(got) << " (expected "
        << format_number(want) << ")\n";
  };
  for (const auto& r : reports) {
    const double n = r.n;
    const std::string tag = fmt::format("n={} ", r.n);
    expect(tag + "E", r.E, std::sqrt(2.0 * n + 1.0), 1e-12);
    expect(tag + "x2", r.x2, n + 0.5, 1e-8);
    expect(tag + "p2", r.p2, n + 0.5, 1e-8);
    expect(tag + "Fx", r.Fx, 4.0 * n + 2.0, 1e-6);
    expect(tag + "Fp", r.Fp, 4.0 * n + 2.0, 1e-6);
  }
  expect("n=0 S_sum", reports.front().S_sum, 1.0 + std::log(std::numbers::pi), 1e-6);
  return failures == 0 ? exit_code::ok : exit_code::usage;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (config.output_path) {
    file.open(*config.output_path);
    if (!file) {
      err << "kgo: cannot open '" << *config.output_path << "' for writing\n";
      return exit_code::usage;
    }
    sink = &file;
  }
  try {
    switch (config.command) {
      case Command::spectrum: return cmd_spectrum(config, *sink, err);
      case Command::table: return cmd_table(config, *sink, err);
      case Command::density: return cmd_density(config, *sink, err);
      case Command::check: return cmd_check(config, *sink, err);
      case Command::selftest: return cmd_selftest(config, *sink, err);
    }
  } catch (const NoPhysicalRoot& e) {
    write_spectrum_failure(err, e.what());
    return exit_code::spectrum_failure;
  } catch (const InvalidDensity& e) {
    err << "kgo: invalid density: " << e.what() << '\n';
    return exit_code::invalid_density;
  } catch (const std::exception& e) {
    err << "kgo: " << e.what() << '\n';
  }
  return exit_code::usage;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Klein-Gordon oscillator with energy-dependent potential: spectrum, densities, "
               "information measures and the uncertainty-table audit"};
  app.require_subcommand(1);

  RunConfig config;
  std::optional<double> gamma;
  std::string branch = "particle", space = "coordinate", kind = "rho", mode = "both",
              format = "csv", grid, output;

  auto add_common = [&](CLI::App* sub, bool lists) {
    sub->add_option("--gamma", gamma, "Single coupling value")->allow_extra_args(false);
    sub->add_option("--branch", branch, "particle or antiparticle")
        ->check(CLI::IsMember({"particle", "antiparticle"}));
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", output, "Write to a file instead of stdout");
    sub->add_option("--rel-tol", config.rel_tol, "Quadrature relative tolerance");
    if (lists) {
      sub->add_option("--gamma-list", config.gamma_list, "Comma-separated coupling values")
          ->delimiter(',')
          ->allow_extra_args(false);
      sub->add_option("--n", config.n_list, "Comma-separated quantum numbers")
          ->delimiter(',')
          ->allow_extra_args(false);
    }
  };

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Energy levels E_n for n = 0..n-max");
  add_common(spectrum_cmd, false);
  spectrum_cmd->add_option("--gamma-list", config.gamma_list, "Comma-separated coupling values")
      ->delimiter(',')
      ->allow_extra_args(false);
  spectrum_cmd->add_option("--n-max", config.n_max, "Highest quantum number");

  auto* table_cmd = app.add_subcommand("table", "Uncertainty, Fisher and Shannon table");
  add_common(table_cmd, true);
  table_cmd->add_option("--mode", mode, "Fisher values: direct, paper or both")
      ->check(CLI::IsMember({"direct", "paper", "both"}));
  table_cmd->add_flag("--compare-paper", config.compare_paper, "Append published values");
  table_cmd->add_flag("--forensic", config.forensic,
                      "Evaluate non-normalizable states with the closed-form constant");

  auto* density_cmd = app.add_subcommand("density", "Sampled density curve");
  add_common(density_cmd, true);
  density_cmd->add_option("--space", space, "coordinate or momentum")
      ->check(CLI::IsMember({"coordinate", "momentum"}));
  density_cmd->add_option("--kind", kind, "rho, fisher or shannon")
      ->check(CLI::IsMember({"rho", "fisher", "shannon"}));
  density_cmd->add_option("--grid", grid, "min:max:count");

  auto* check_cmd = app.add_subcommand("check", "Inequality audit");
  add_common(check_cmd, true);
  check_cmd->add_flag("--compare-paper", config.compare_paper, "Audit published values too");
  check_cmd->add_flag("--forensic", config.forensic,
                      "Evaluate non-normalizable states with the closed-form constant");

  auto* selftest_cmd = app.add_subcommand("selftest", "Check the zero-coupling anchors");
  selftest_cmd->add_option("--rel-tol", config.rel_tol, "Quadrature relative tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  try {
    if (*spectrum_cmd) config.command = Command::spectrum;
    if (*table_cmd) config.command = Command::table;
    if (*density_cmd) config.command = Command::density;
    if (*check_cmd) config.command = Command::check;
    if (*selftest_cmd) config.command = Command::selftest;

    if (gamma) config.gamma_list = {*gamma};
    config.branch = parse_branch(branch);
    config.space = parse_space(space);
    config.kind = parse_density_kind(kind);
    config.mode = mode == "direct" ? FisherMode::direct
                  : mode == "paper" ? FisherMode::paper
                                    : FisherMode::both;
    config.format = format == "json" ? Format::json : Format::csv;
    if (!grid.empty()) config.grid = parse_grid(grid);
    if (!output.empty()) config.output_path = output;
    config.validate();
  } catch (const std::exception& e) {
    err << "kgo: " << e.what() << '\n';
    return exit_code::usage;
  }
  return run(config, out, err);
}

}  // namespace kgo::cli
