#pragma once

#include "flagres/cohomology.hpp"
#include "flagres/flag.hpp"
#include "flagres/forms.hpp"
#include "flagres/quad.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace flagres::cli {

inline constexpr const char* kToolVersion = "1.0.0";

using Json = nlohmann::ordered_json;

struct ProjectiveEntry {
  int n = 0;
  SplitSheaf F1, F2;
  std::vector<int> j_values;
  std::map<int, Rational> printed_values;
};

struct PositivityEntry {
  int n = 0;
  SplitSheaf F, F1;
  std::optional<Rational> printed_value;
};

struct FormsEntry {
  std::string label;
  unsigned k1 = 0, k2 = 0;
  DifferentialForm theta2{0, 1}, theta12{0, 1};
  std::size_t samples = 50;
  double sample_radius = 0.4;
};

struct MilnorEntry {
  std::string label;
  std::vector<std::string> vars;
  std::vector<Expr> generators;
  std::vector<Rational> point;
  std::vector<double> radii;  // empty: the file's quad settings
};

struct ProblemFile {
  std::string name;
  std::string description;
  std::string digest;  // FNV-1a 64 of the raw bytes
  std::optional<FlagChart> chart;
  std::vector<ChartPoint> points;
  std::vector<std::string> tasks;
  QuadSettings quad;
  std::vector<ProjectiveEntry> projective;
  std::vector<PositivityEntry> positivity;
  std::vector<FormsEntry> forms;
  std::vector<MilnorEntry> milnor;
  /// Values printed in the source for the chart (e.g. "mu"), compared but never asserted.
  std::map<std::string, Rational> printed_values;
};

/// Known task tags, in canonical order.
const std::vector<std::string>& task_tags();

/// Throws SchemaError on malformed input.
ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::filesystem::path& path);

/// Resolves a file argument: an existing path, else a corpus entry by name.
std::filesystem::path resolve_problem_path(const std::string& arg);
std::filesystem::path corpus_directory();
std::vector<std::filesystem::path> list_corpus(const std::filesystem::path& dir);

struct RunOptions {
  std::optional<unsigned> max_nodes;
  std::optional<double> rel_tol;
  std::optional<std::vector<double>> radii;
  /// Restricts execution to these tags; empty runs the declared tasks.
  std::set<std::string> only;
  /// Adds the "multiplicity" pseudo-task (algebraic mu at each exact point).
  bool multiplicities = false;
};

struct RunResult {
  Json report;
  std::string summary;
  bool all_passed = true;
  bool any_error = false;
};

RunResult run(const ProblemFile& problem, const RunOptions& options);

/// Rounds to 15 significant digits for stable textual output.
double round15(double v);
std::string fnv1a64(const std::string& bytes);

}  // namespace flagres::cli
