#pragma once

#include "kgo/measures.hpp"
#include "kgo/spectrum.hpp"
#include "kgo/states.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kgo::cli {

enum class Command { spectrum, table, density, check, selftest };
enum class FisherMode { direct, paper, both };
enum class Format { csv, json };

/// Exit codes shared by every subcommand.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int spectrum_failure = 2;
inline constexpr int forensic_rows = 3;
inline constexpr int invalid_density = 4;
}  // namespace exit_code

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int count = 0;
};

/// Parses "min:max:count"; throws std::invalid_argument.
GridSpec parse_grid(const std::string& text);

struct RunConfig {
  Command command = Command::table;
  std::vector<double> gamma_list{0.0, -0.16, -0.32, -0.48, -0.64, -0.80};
  std::vector<int> n_list{0, 1, 2};
  int n_max = 10;
  Branch branch = Branch::particle;
  Space space = Space::coordinate;
  DensityKind kind = DensityKind::rho;
  std::optional<GridSpec> grid;
  FisherMode mode = FisherMode::both;
  Format format = Format::csv;
  std::optional<std::string> output_path;
  double rel_tol = 1e-10;
  bool compare_paper = false;
  bool forensic = false;

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
  QuadratureSpec quadrature() const;
};

/// Outcome of the audit for one item of one (n, gamma) row.
struct Finding {
  int n = 0;
  double gamma = 0.0;
  /// stam_x, ..., bbm, fisher_paper_x, fisher_paper_p, or "state" for report flags.
  std::string item;
  /// "recomputed" or "published".
  std::string source;
  /// satisfied / violated / unavailable, divergent / consistent, or a flag code.
  std::string status;
  std::optional<double> lhs, rhs, margin;
  /// Recomputed counterpart reported next to a published finding.
  std::optional<InequalityRecord> recomputed;
};

struct AuditResult {
  std::vector<MeasureReport> reports;
  std::vector<Finding> findings;
  bool spectrum_failure = false;
};

/// Reports for every (n, gamma) pair, ordered by n then by the given gamma order.
/// Rows are computed concurrently. Throws NoPhysicalRoot.
std::vector<MeasureReport> compute_reports(const RunConfig& config);

/// Published-table inequality records for one row.
std::vector<InequalityRecord> published_inequalities(int n, double gamma);

AuditResult audit(const RunConfig& config);

int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_table(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_density(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_check(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_selftest(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches on config.command, honouring output_path.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace kgo::cli
