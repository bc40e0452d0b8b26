#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "eqd/geom.hpp"
#include "eqd/poly.hpp"

namespace eqd {

enum class SquareStrategy {
  /// Pick 2i equations: low degree first, then most new unknowns, then face
  /// order; an equation is taken only if it raises the generic Jacobian rank.
  greedy,
  /// 2i random complex combinations of all equations.
  random_combination,
};

struct SquareSubsystem {
  PolynomialSystem square;
  /// Equations not in the square system, used as filters.
  PolynomialSystem leftovers;
  std::vector<std::size_t> selected;
  std::vector<std::size_t> leftover;
};

SquareSubsystem make_square_subsystem(const PolynomialSystem& s, SquareStrategy strategy = SquareStrategy::greedy,
                                      std::uint64_t seed = 0);
/// Uses exactly the equations at `indices` (positions in s.polys).
SquareSubsystem select_equations(const PolynomialSystem& s, std::vector<std::size_t> indices);

enum class NewtonStatus { converged, singular, not_converged };

struct NewtonResult {
  Eigen::VectorXcd x;
  double residual = 0.0;  // max-norm of the system at x
  int iterations = 0;
  NewtonStatus status = NewtonStatus::not_converged;
};

/// Newton's method; least-squares (Gauss-Newton) steps when the system is
/// overdetermined. A numerically rank-deficient Jacobian stops with
/// NewtonStatus::singular.
NewtonResult newton_refine(const PolynomialSystem& s, const Eigen::VectorXcd& x0, int max_iter,
                           double tolerance = 1e-12);

struct TrackerSettings {
  double initial_step = 1e-2;
  double max_step = 5e-2;
  double min_step = 1e-14;
  /// Step floor relative to t, used once it is below min_step.
  double relative_min_step = 1e-4;
  /// Paths still unresolved below this t fail.
  double min_t = 1e-200;
  double step_growth = 1.5;
  int successes_before_growth = 3;
  int corrector_iterations = 3;
  double corrector_tolerance = 1e-9;
  double divergence_threshold = 1e8;
  /// A path stuck at the step floor, or reaching t = 0, beyond this magnitude
  /// counts as diverged.
  double stall_divergence_threshold = 1e4;
  double endpoint_tolerance = 1e-10;
  int endpoint_iterations = 20;
  std::size_t max_steps = 200000;
};

/// H(x,t) = gamma t g(x) + (1-t) f(x) with start system g_j = x_j^{d_j} - 1.
struct HomotopyProblem {
  PolynomialSystem target;
  std::vector<int> degrees;
  Complex gamma;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument unless target is square with every degree >= 1.
  static HomotopyProblem make(PolynomialSystem target, std::uint64_t seed);

  std::size_t path_count() const;
  /// Root of the start system for path `index` (mixed-radix over the degrees).
  Eigen::VectorXcd start_root(std::size_t index) const;
  /// g(x), used by tests of the start system.
  Eigen::VectorXcd start_system(const Eigen::VectorXcd& x) const;
};

enum class PathStatus { converged, diverged, failed };
const char* to_string(PathStatus s);

struct PathResult {
  std::size_t index = 0;
  Eigen::VectorXcd start_root;
  PathStatus status = PathStatus::failed;
  /// Refined root when converged, otherwise the last accepted sample.
  Eigen::VectorXcd endpoint;
  /// Canonicalized [x : y : 1] per interior point of the last sample.
  std::vector<ProjectivePoint> limits;
  double t_final = 1.0;
  double newton_residual = 0.0;
  std::size_t steps = 0;
};

PathResult track_path(const HomotopyProblem& problem, std::size_t index, const TrackerSettings& settings = {});

/// All paths, OpenMP-parallel; results ordered by start-root index.
std::vector<PathResult> track_all(const HomotopyProblem& problem, const TrackerSettings& settings = {});
/// Serial reference for track_all.
std::vector<PathResult> track_all_serial(const HomotopyProblem& problem, const TrackerSettings& settings = {});

/// Deterministic uniform double in [0,1) from a 64-bit generator value.
double unit_interval(std::uint64_t bits);
/// Unit-modulus constant derived from the seed.
Complex gamma_from_seed(std::uint64_t seed);

}  // namespace eqd
