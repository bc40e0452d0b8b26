#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eqd/combo.hpp"
#include "eqd/geom.hpp"
#include "eqd/homotopy.hpp"
#include "eqd/poly.hpp"

namespace eqd {

struct SolveConfig {
  std::uint64_t seed = 0;
  SquareStrategy strategy = SquareStrategy::greedy;
  /// Explicit square subsystem as positions into the system's equations.
  std::optional<std::vector<std::size_t>> square_equations;
  TrackerSettings tracker;
  double filter_tolerance = 1e-6;
  double refine_tolerance = 1e-12;
  int refine_iterations = 50;
  double residual_tolerance = 1e-9;
  double dedup_tolerance = 1e-6;
  double real_tolerance = 1e-9;
  double rank_threshold = 1e-8;
  long long max_denominator = 1000000000000LL;
  bool parallel = true;
};

struct IsolationReport {
  std::size_t rank = 0;
  std::size_t unknowns = 0;
  bool isolated = true;
  std::vector<double> singular_values;
};

struct GeometricCheck {
  bool geometric = false;
  std::vector<std::string> diagnostics;
};

struct Solution {
  /// One point per interior vertex, in label order.
  std::vector<AffinePoint> coordinates;
  Eigen::VectorXcd values;
  double residual = 0.0;
  bool is_real = false;
  bool is_geometric = false;
  std::vector<std::string> diagnostics;
  IsolationReport isolation;
};

struct PathCounts {
  std::size_t total = 0, converged = 0, diverged = 0, failed = 0;
};

struct SolutionSet {
  std::vector<Solution> solutions;
  std::vector<PathResult> divergences;
  PathCounts paths;
  bool infeasible = false;
  std::string reason;
  std::vector<std::string> warnings;
  PolynomialSystem system;
  /// Equation positions forming the square subsystem (empty for random combinations).
  std::vector<std::size_t> square_equations;
};

SolutionSet solve(const CombinatorialType& g, const Polygon& p, const AreaAssignment& a, const SolveConfig& config = {});

/// Exact check that real coordinates realise g as a triangulation of p:
/// positive faces, no crossing edges, interior points strictly inside.
GeometricCheck check_geometric(const CombinatorialType& g, const Polygon& p, std::span<const AffinePoint> interior,
                               long long max_denominator = 1000000000000LL, double real_tolerance = 1e-9);
/// Same check on exact coordinates.
GeometricCheck check_geometric_exact(const CombinatorialType& g, const Polygon& p,
                                     std::span<const RationalPoint> interior);

/// Numerical rank of the full-system Jacobian (singular values above
/// threshold * largest). Isolated iff the rank equals the unknown count.
IsolationReport isolation_check(const PolynomialSystem& s, const Eigen::VectorXcd& point, double threshold = 1e-8);

/// Random rational placement of the interior vertices realising g inside p.
/// Throws std::runtime_error when the sampling cap is hit.
std::vector<RationalPoint> sample_configuration(const CombinatorialType& g, const Polygon& p, std::uint64_t seed,
                                                int max_attempts = 200);

struct RoundtripReport {
  bool recovered = false;
  std::vector<RationalPoint> sample;
  AreaAssignment areas;
  SolutionSet result;
  double distance = 0.0;  // max-norm distance from the sample to the nearest solution
  std::string failure;
};

/// Samples a configuration, solves for its induced areas, and checks the
/// sample comes back as a geometric solution within `tolerance`.
RoundtripReport roundtrip_oracle(const CombinatorialType& g, const Polygon& p, std::uint64_t seed,
                                 const SolveConfig& config = {}, double tolerance = 1e-9);

}  // namespace eqd
