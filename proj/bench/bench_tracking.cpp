// Times serial and OpenMP path tracking on the same homotopy and checks
// that both produce identical endpoints.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "eqd/combo.hpp"
#include "eqd/homotopy.hpp"
#include "eqd/solve.hpp"

using namespace eqd;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int interior = argc > 1 ? std::atoi(argv[1]) : 3;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;

  const Polygon square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto types = enumerate_types(4, interior, BoundarySymmetry::none, {.max_interior = interior});
  const CombinatorialType& g = types.front();
  const auto sample = sample_configuration(g, square, 1);
  const AreaAssignment areas = AreaAssignment::induced(g, square, sample);
  const PolynomialSystem system = build_system(g, square, areas);
  const SquareSubsystem sq = make_square_subsystem(system, SquareStrategy::greedy, 0);
  const HomotopyProblem problem = HomotopyProblem::make(sq.square, 0);

  std::printf("type: %s\npaths: %zu\nthreads: %d\n", describe_faces(g).c_str(), problem.path_count(),
              omp_get_max_threads());

  std::vector<PathResult> serial, parallel;
  double best_serial = 1e300, best_parallel = 1e300;
  for (int r = 0; r < repeats; ++r) {
    best_serial = std::min(best_serial, seconds([&] { serial = track_all_serial(problem); }));
    best_parallel = std::min(best_parallel, seconds([&] { parallel = track_all(problem); }));
  }

  bool identical = serial.size() == parallel.size();
  for (std::size_t k = 0; identical && k < serial.size(); ++k)
    identical = serial[k].status == parallel[k].status && serial[k].endpoint == parallel[k].endpoint;

  std::printf("serial:   %.4f s\nparallel: %.4f s\nspeedup:  %.2f\nidentical: %s\n", best_serial, best_parallel,
              best_serial / best_parallel, identical ? "yes" : "no");
  return identical ? 0 : 1;
}
