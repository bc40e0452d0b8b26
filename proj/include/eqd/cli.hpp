#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eqd/combo.hpp"
#include "eqd/degen.hpp"
#include "eqd/exact.hpp"
#include "eqd/geom.hpp"
#include "eqd/solve.hpp"

namespace eqd {

/// Problem description as read from a JSON problem file. Vertex and face
/// numbers in files are 1-based.
struct ProblemFile {
  std::vector<RationalPoint> polygon;
  /// Exactly one of `type` and `enumerate` is set.
  std::optional<CombinatorialType> type;
  std::optional<std::pair<int, int>> enumerate;  // (n, i)
  bool equal_areas = false;
  std::vector<Rational> areas;
  /// 1-based face numbers forming the square subsystem.
  std::optional<std::vector<int>> square_faces;
  BoundarySymmetry symmetry = BoundarySymmetry::none;

  bool operator==(const ProblemFile&) const = default;
};

/// Parse failure; `field` names the offending key path ("areas[2]").
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

ProblemFile parse_problem(const std::string& text);
std::string serialize_problem(const ProblemFile& problem);

/// One (type, areas) pair to solve.
struct Instance {
  CombinatorialType type;
  AreaAssignment areas;
  std::optional<std::vector<int>> square_faces;
};

/// Expands an enumerate directive and resolves {equal: true}.
std::vector<Instance> instances(const ProblemFile& problem, const Polygon& polygon, const EnumerationLimits& limits);

struct CliOptions {
  SolveConfig solve;
  DegenSettings degen;
  CertifyConfig certify_config;
  bool certify = false;
  int max_i = 3;
};

enum ExitCode : int { kOk = 0, kError = 1, kParseError = 2, kInfeasible = 3, kPathFailures = 4 };

struct CommandResult {
  int exit_code = kOk;
  std::string output;
  std::string error;
};

CommandResult cmd_solve(const std::string& problem_text, const CliOptions& options);
CommandResult cmd_inspect(const std::string& problem_text, const CliOptions& options);
/// SVG of solution `solution_index` (1-based) of type `type_index` (1-based).
CommandResult cmd_render(const std::string& problem_text, std::size_t solution_index, std::size_t type_index,
                         const CliOptions& options);
CommandResult cmd_enumerate(int n, int interior, BoundarySymmetry symmetry, const CliOptions& options);

std::string format_number(double value);
std::string format_complex(Complex value);

}  // namespace eqd
