// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "eqd/cli.hpp"
#include "eqd/combo.hpp"
#include "eqd/degen.hpp"
#include "eqd/exact.hpp"
#include "eqd/solve.hpp"
#include "oracles.hpp"

using namespace eqd;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

const Polygon& square() {
  static const Polygon p({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  return p;
}
const Polygon& triangle() {
  static const Polygon p({{0, 0}, {1, 0}, {0, 1}});
  return p;
}
const Polygon& pentagon() {
  static const Polygon p({{0, 0}, {2, 0}, {3, 2}, {1, 3}, {-1, 1}});
  return p;
}

CombinatorialType cone4() { return {4, 5, {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}}}; }
CombinatorialType cone3() { return {3, 4, {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}}}; }
CombinatorialType cone5() { return {5, 6, {{0, 1, 5}, {1, 2, 5}, {2, 3, 5}, {3, 4, 5}, {4, 0, 5}}}; }
CombinatorialType two_interior() {
  return {4, 6, {{0, 1, 4}, {1, 2, 5}, {2, 3, 5}, {3, 0, 4}, {4, 1, 5}, {4, 5, 3}}};
}
CombinatorialType collapse_type() {
  return {4, 6, {{0, 1, 4}, {1, 2, 5}, {2, 4, 5}, {4, 1, 5}, {2, 0, 4}, {0, 2, 3}}};
}

AreaAssignment quarter_areas() { return {{Rational(1, 8), Rational(1, 4), Rational(3, 8), Rational(1, 4)}}; }

struct Hand {
  std::string name;
  CombinatorialType g;
  const Polygon* p;
  AreaAssignment a;
  double x, y;
};

std::vector<Hand> hand_instances() {
  return {{"square cone (1/8,1/4,3/8,1/4)", cone4(), &square(), quarter_areas(), 0.5, 0.25},
          {"square cone equal", cone4(), &square(), AreaAssignment::equal(cone4(), square()), 0.5, 0.5},
          {"triangle cone equal", cone3(), &triangle(), AreaAssignment::equal(cone3(), triangle()), 1.0 / 3, 1.0 / 3}};
}

struct Roundtrip {
  std::string name;
  CombinatorialType g;
  const Polygon* p;
};

std::vector<Roundtrip> roundtrip_types() {
  return {{"square cone", cone4(), &square()},
          {"square two-interior", two_interior(), &square()},
          {"pentagon cone", cone5(), &pentagon()}};
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

Complex random_complex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return {u(rng), u(rng)};
}

Eigen::VectorXcd random_point(std::mt19937_64& rng, std::size_t n) {
  Eigen::VectorXcd x(static_cast<Eigen::Index>(n));
  for (auto& v : x) v = random_complex(rng);
  return x;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

Outcome hand_solutions() {
  Outcome o;
  double slowest = 0;
  for (const auto& h : hand_instances()) {
    const auto start = Clock::now();
    const SolutionSet ss = solve(h.g, *h.p, h.a);
    const double dt = seconds_since(start);
    slowest = std::max(slowest, dt);
    if (dt >= 1.0) o.fail(h.name + " took " + fmt("%.3g s", dt));
    std::size_t geometric = 0;
    for (const auto& s : ss.solutions) geometric += s.is_geometric;
    if (ss.solutions.size() != 1 || geometric != 1) {
      o.fail(h.name + ": expected one geometric solution");
      continue;
    }
    const AffinePoint& q = ss.solutions[0].coordinates[0];
    const double err = std::max(std::abs(q.x - h.x), std::abs(q.y - h.y));
    if (err > 1e-9) o.fail(h.name + ": error " + fmt("%.3g", err));
  }
  if (o.pass) o.detail = "3 instances, slowest " + fmt("%.3g s", slowest);
  return o;
}

Outcome roundtrip(std::vector<RoundtripReport>& reports) {
  Outcome o;
  const auto start = Clock::now();
  double worst = 0;
  for (const auto& t : roundtrip_types())
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      RoundtripReport r = roundtrip_oracle(t.g, *t.p, seed);
      worst = std::max(worst, r.distance);
      if (!r.recovered) o.fail(t.name + " seed " + std::to_string(seed) + ": " + r.failure);
      if (r.result.solutions.empty()) o.fail(t.name + " seed " + std::to_string(seed) + ": no solutions");
      for (const auto& s : r.result.solutions)
        if (!s.isolation.isolated) o.fail(t.name + " seed " + std::to_string(seed) + ": solution not isolated");
      reports.push_back(std::move(r));
    }
  const double dt = seconds_since(start);
  if (dt >= 60.0) o.fail("suite took " + fmt("%.3g s", dt));
  if (o.pass) o.detail = "300 samples, max distance " + fmt("%.3g", worst) + ", " + fmt("%.3g s", dt);
  return o;
}

struct SuiteInstance {
  std::string name;
  CombinatorialType g;
  const Polygon* p;
  AreaAssignment a;
};

std::vector<SuiteInstance> curated_suite() {
  std::vector<SuiteInstance> out;
  for (const auto& h : hand_instances()) out.push_back({h.name, h.g, h.p, h.a});
  out.push_back({"square two-interior equal", two_interior(), &square(), AreaAssignment::equal(two_interior(), square())});
  for (auto [n, i] : std::vector<std::pair<int, int>>{{4, 1}, {4, 2}, {5, 1}, {5, 2}, {4, 3}}) {
    const Polygon& p = n == 4 ? square() : pentagon();
    const auto types = enumerate_types(n, i);
    for (std::size_t k = 0; k < types.size(); ++k) {
      const auto sample = sample_configuration(types[k], p, k);
      out.push_back({"(" + std::to_string(n) + "," + std::to_string(i) + ") type " + std::to_string(k + 1), types[k],
                     &p, AreaAssignment::induced(types[k], p, sample)});
    }
  }
  return out;
}

struct SuiteRuns {
  std::vector<SuiteInstance> instances;
  std::vector<std::vector<SolutionSet>> runs;  // [instance][seed]
};

SuiteRuns run_suite() {
  SuiteRuns s;
  s.instances = curated_suite();
  for (const auto& inst : s.instances) {
    auto& per = s.runs.emplace_back();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      SolveConfig c;
      c.seed = seed;
      per.push_back(solve(inst.g, *inst.p, inst.a, c));
    }
  }
  return s;
}

Outcome stability(const SuiteRuns& s) {
  Outcome o;
  std::size_t solutions = 0;
  for (std::size_t k = 0; k < s.instances.size(); ++k) {
    const auto& per = s.runs[k];
    const std::string& name = s.instances[k].name;
    const std::size_t first = per[0].solutions.size();
    if (first == 0) o.fail(name + ": no solutions");
    for (std::size_t seed = 0; seed < per.size(); ++seed) {
      if (per[seed].solutions.size() != first)
        o.fail(name + ": seed " + std::to_string(seed) + " found " + std::to_string(per[seed].solutions.size()) +
               " solutions, seed 0 found " + std::to_string(first));
      for (const auto& sol : per[seed].solutions) {
        const std::size_t want = static_cast<std::size_t>(2 * s.instances[k].g.interior_count());
        if (!sol.isolation.isolated || sol.isolation.rank != want)
          o.fail(name + ": rank " + std::to_string(sol.isolation.rank) + " of " + std::to_string(want));
      }
    }
    solutions += first;
  }
  if (o.pass)
    o.detail = std::to_string(s.instances.size()) + " instances x 20 seeds, " + std::to_string(solutions) +
               " isolated solutions per seed";
  return o;
}

std::size_t bezout(const SolutionSet& ss) {
  std::vector<std::size_t> positions = ss.square_equations;
  std::size_t product = 1;
  for (std::size_t k : positions) product *= static_cast<std::size_t>(ss.system.polys[k].total_degree());
  return product;
}

Outcome accounting(const SuiteRuns& s, const std::vector<RoundtripReport>& roundtrips) {
  Outcome o;
  std::size_t runs = 0, paths = 0;
  auto check = [&](const std::string& name, const SolutionSet& ss, bool curated) {
    if (ss.infeasible) return;
    ++runs;
    paths += ss.paths.total;
    const PathCounts& c = ss.paths;
    if (c.converged + c.diverged + c.failed != c.total) o.fail(name + ": path counts do not add up");
    if (c.total != bezout(ss))
      o.fail(name + ": " + std::to_string(c.total) + " paths, degree product " + std::to_string(bezout(ss)));
    if (curated && c.failed != 0) o.fail(name + ": " + std::to_string(c.failed) + " failed paths");
  };
  for (std::size_t k = 0; k < s.instances.size(); ++k)
    for (const auto& ss : s.runs[k]) check(s.instances[k].name, ss, true);
  for (const auto& r : roundtrips) check("roundtrip", r.result, false);
  if (o.pass) o.detail = std::to_string(runs) + " runs, " + std::to_string(paths) + " paths, failed = 0 on the suite";
  return o;
}

std::vector<std::pair<CombinatorialType, const Polygon*>> system_instances() {
  std::vector<std::pair<CombinatorialType, const Polygon*>> out{
      {cone4(), &square()}, {cone3(), &triangle()}, {cone5(), &pentagon()}, {two_interior(), &square()},
      {collapse_type(), &square()}};
  for (const auto& g : enumerate_types(4, 3)) out.emplace_back(g, &square());
  for (const auto& g : enumerate_types(5, 2)) out.emplace_back(g, &pentagon());
  return out;
}

Outcome area_formula() {
  Outcome o;
  std::mt19937_64 rng(1001);
  double worst_area = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = 3 + rng() % 10;
    std::vector<AffinePoint> pts(k);
    for (auto& q : pts) q = {random_complex(rng), random_complex(rng)};
    const Complex s = oracles::shoelace(pts);
    for (int r = 0; r < 2; ++r) {
      const AffinePoint ref{random_complex(rng), random_complex(rng)};
      const double e = rel(oriented_area_polygon(pts, ref), s);
      worst_area = std::max(worst_area, e);
    }
  }
  if (worst_area > 1e-12) o.fail("area relative error " + fmt("%.3g", worst_area));

  const auto all = system_instances();
  double worst_jac = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto& [g, p] = all[rng() % all.size()];
    const PolynomialSystem s = build_system(g, *p, AreaAssignment::equal(g, *p));
    const Eigen::VectorXcd x = random_point(rng, s.unknown_count);
    const Eigen::MatrixXcd J = jacobian(s, x);
    const double h = 1e-5;
    Eigen::MatrixXcd fd(J.rows(), J.cols());
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      Eigen::VectorXcd xp = x, xm = x;
      xp(k) += h;
      xm(k) -= h;
      fd.col(k) = (evaluate(s, xp) - evaluate(s, xm)) / (2 * h);
    }
    worst_jac = std::max(worst_jac, (J - fd).norm() / std::max(1.0, J.norm()));
  }
  if (worst_jac > 1e-6) o.fail("jacobian relative error " + fmt("%.3g", worst_jac));
  if (o.pass)
    o.detail = "area " + fmt("%.3g", worst_area) + " over 1000 cases, jacobian " + fmt("%.3g", worst_jac) +
               " over 100 pairs";
  return o;
}

Outcome area_identity() {
  Outcome o;
  std::mt19937_64 rng(1002);
  double worst = 0;
  const auto all = system_instances();
  for (const auto& [g, p] : all) {
    const double area = p->area().get_d();
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::VectorXcd x = random_point(rng, static_cast<std::size_t>(2 * g.interior_count()));
      auto pos = [&](int v) -> AffinePoint {
        if (v < g.n) return (*p)[static_cast<std::size_t>(v)].to_affine();
        return {x(2 * (v - g.n)), x(2 * (v - g.n) + 1)};
      };
      // Half-determinants written out independently of the library.
      Complex sum = 0.0;
      for (const auto& f : g.faces) {
        const AffinePoint a = pos(f[0]), b = pos(f[1]), c = pos(f[2]);
        sum += 0.5 * (a.x * (b.y - c.y) - b.x * (a.y - c.y) + c.x * (a.y - b.y));
      }
      double scale = std::abs(area);
      for (const auto& f : g.faces) {
        const AffinePoint a = pos(f[0]), b = pos(f[1]), c = pos(f[2]);
        scale = std::max(scale, std::abs(0.5 * (a.x * (b.y - c.y) - b.x * (a.y - c.y) + c.x * (a.y - b.y))));
      }
      worst = std::max(worst, std::abs(sum - area) / scale);
    }
    // Exact: the face determinants sum to twice the area as polynomials.
    RationalPoly total(static_cast<std::size_t>(2 * g.interior_count()));
    for (std::size_t f = 0; f < g.faces.size(); ++f) total += face_determinant(g, *p, f);
    if (!(total == RationalPoly::constant(total.variable_count(), 2 * p->area())))
      o.fail("determinant sum is not constant for " + describe_faces(g));
  }
  if (worst > 1e-10) o.fail("relative error " + fmt("%.3g", worst));
  if (o.pass) o.detail = std::to_string(all.size()) + " instances x 100 points, worst " + fmt("%.3g", worst);
  return o;
}

Outcome certificates(const std::vector<RoundtripReport>& reports) {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& r : reports) {
    if (!r.recovered) continue;
    const int interior = static_cast<int>(r.sample.size());
    if (interior > 2) continue;
    const auto polys = coordinate_eliminants(r.result.system);
    for (std::size_t k = 0; k < polys.size(); ++k) {
      const RationalPoint& q = r.sample[k / 2];
      const Rational& coord = k % 2 == 0 ? q.x : q.y;
      ++checked;
      if (polys[k].size() < 2 || evaluate_exact(polys[k], coord) != 0)
        o.fail("eliminant of " + r.result.system.variables[k] + " does not vanish at " + to_string(coord));
    }
  }

  auto expect = [&](const std::string& name, const CombinatorialType& g, const Polygon& p, const AreaAssignment& a,
                    const std::vector<long>& x, const std::vector<long>& y) {
    const auto certs = certify(g, p, a, solve(g, p, a));
    if (certs.size() != 1 || !certs[0].ok()) {
      o.fail(name + ": certificate missing");
      return;
    }
    auto same = [](const IntPoly& poly, const std::vector<long>& want) {
      if (poly.size() != want.size()) return false;
      for (std::size_t k = 0; k < want.size(); ++k)
        if (poly[k] != want[k]) return false;
      return true;
    };
    if (!same(certs[0].coordinates[0].polynomial, x) || !same(certs[0].coordinates[1].polynomial, y))
      o.fail(name + ": got " + to_string(certs[0].coordinates[0].polynomial) + ", " +
             to_string(certs[0].coordinates[1].polynomial));
  };
  expect("square cone (1/8,1/4,3/8,1/4)", cone4(), square(), quarter_areas(), {-1, 2}, {-1, 4});
  expect("triangle cone equal", cone3(), triangle(), AreaAssignment::equal(cone3(), triangle()), {-1, 3}, {-1, 3});
  if (o.pass) o.detail = std::to_string(checked) + " exact annihilations; 2t - 1, 4t - 1, 3t - 1";
  return o;
}

Outcome degeneration() {
  Outcome o;
  // Faces (1,2,5) and (3,4,5) force y = 1/4 and y = 1/2 at once.
  const AreaAssignment bad{{Rational(1, 8), Rational(1, 8), Rational(1, 4), Rational(1, 2)}};
  SolveConfig c;
  c.square_equations = std::vector<std::size_t>{0, 2};
  const SolutionSet cone = solve(cone4(), square(), bad, c);
  double cone_z = 1.0;
  for (const auto& path : cone.divergences) {
    const DegenerationReport r = inspect(cone4(), square(), bad, path);
    if (r.at_infinity == std::vector<int>{4}) cone_z = std::min(cone_z, std::abs(r.limits[0].z()));
  }
  if (cone.divergences.empty()) o.fail("inconsistent cone: no diverged path");
  if (!(cone_z < 1e-6)) o.fail("inconsistent cone: |z| = " + fmt("%.3g", cone_z));

  const AreaAssignment family{
      {Rational(1, 8), Rational(1, 24), Rational(1, 24), Rational(1, 24), Rational(1, 4), Rational(1, 2)}};
  SolveConfig lc;
  lc.square_equations = std::vector<std::size_t>{0, 1, 2, 3};
  const SolutionSet ls = solve(collapse_type(), square(), family, lc);
  double best_col = 1.0, best_defect = 0.0;
  for (const auto& path : ls.divergences) {
    const DegenerationReport r = inspect(collapse_type(), square(), family, path);
    const AreaAudit audit = area_sum_audit(r, square());
    for (const auto& f : r.faces)
      if (f.collinearity && *f.collinearity < 1e-4 && audit.collapsed_defect.real() > 1e-3) {
        best_col = std::min(best_col, *f.collinearity);
        best_defect = std::max(best_defect, audit.collapsed_defect.real());
      }
  }
  if (best_defect == 0.0) o.fail("two-point family: no path with a collapsed face and positive defect");
  if (o.pass)
    o.detail = "cone |z| " + fmt("%.3g", cone_z) + "; family collinearity " + fmt("%.3g", best_col) + ", defect " +
               fmt("%.3g", best_defect);
  return o;
}

Outcome combinatorics() {
  Outcome o;
  if (enumerate_types(3, 0).size() != 1) o.fail("(3,0) count");
  if (enumerate_types(4, 0).size() != 2) o.fail("(4,0) count");
  const auto types = enumerate_types(4, 1);
  const std::size_t oracle = oracles::TypeOracle(4, 1).classes().size();
  if (types.size() != oracle) o.fail("(4,1): " + std::to_string(types.size()) + " vs oracle " + std::to_string(oracle));
  const std::string cone = canonical_form(cone4());
  if (std::none_of(types.begin(), types.end(), [&](const auto& t) { return canonical_form(t) == cone; }))
    o.fail("(4,1) lacks the cone");

  std::mt19937_64 rng(1009);
  std::size_t relabelings = 0;
  for (auto [n, i] : std::vector<std::pair<int, int>>{{4, 1}, {4, 2}, {5, 2}, {4, 3}})
    for (const auto& t : enumerate_types(n, i)) {
      const std::string key = canonical_form(t);
      std::vector<int> perm(static_cast<std::size_t>(i));
      std::iota(perm.begin(), perm.end(), 0);
      for (int trial = 0; trial < 100; ++trial) {
        std::shuffle(perm.begin(), perm.end(), rng);
        CombinatorialType u = relabel_interior(t, perm);
        std::shuffle(u.faces.begin(), u.faces.end(), rng);
        for (auto& f : u.faces) std::rotate(f.begin(), f.begin() + static_cast<long>(rng() % 3), f.end());
        ++relabelings;
        if (canonical_form(u) != key) o.fail("canonical form changed under relabeling of " + describe_faces(t));
      }
    }
  if (o.pass)
    o.detail = "(3,0)=1, (4,0)=2, (4,1)=" + std::to_string(types.size()) + " = oracle, " +
               std::to_string(relabelings) + " relabelings";
  return o;
}

Outcome cli() {
  Outcome o;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(EQD_FIXTURES))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  const fs::path golden(EQD_GOLDEN);
  CliOptions certify_opts;
  certify_opts.certify = true;
  std::size_t compared = 0;
  for (const auto& f : files) {
    const std::string text = slurp(f);
    const std::string name = f.stem().string();
    const ProblemFile a = parse_problem(text);
    const std::string round = serialize_problem(a);
    if (!(parse_problem(round) == a) || serialize_problem(parse_problem(round)) != round)
      o.fail(name + ": parse round-trip");
    if (cmd_solve(text, certify_opts).output != slurp(golden / (name + ".solve.txt"))) o.fail(name + ": solve golden");
    if (cmd_inspect(text, {}).output != slurp(golden / (name + ".inspect.txt"))) o.fail(name + ": inspect golden");
    compared += 2;
  }
  CliOptions plain;
  if (cmd_enumerate(4, 1, BoundarySymmetry::none, plain).output != slurp(golden / "enumerate_4_1.txt"))
    o.fail("enumerate 4 1 golden");
  if (cmd_enumerate(6, 0, BoundarySymmetry::dihedral, plain).output != slurp(golden / "enumerate_6_0_dihedral.txt"))
    o.fail("enumerate 6 0 golden");
  compared += 2;

  auto svg = [&](const std::string& name, std::size_t vertices, std::size_t edges, std::size_t faces) {
    const std::string out = cmd_render(slurp(fs::path(EQD_FIXTURES) / (name + ".json")), 1, 1, {}).output;
    if (count(out, "<circle class=\"vertex\"") != vertices || count(out, "<line class=\"edge\"") != edges ||
        count(out, "<text class=\"area\"") != faces)
      o.fail(name + ": svg counts");
    if (out != slurp(golden / (name + ".svg"))) o.fail(name + ": svg golden");
    ++compared;
  };
  // V, E = V + F - 1 and F for a triangulated disk.
  svg("square_cone_equal", 5, 8, 4);
  svg("triangle_centroid", 4, 6, 3);
  if (o.pass)
    o.detail = std::to_string(compared) + " golden files, " + std::to_string(files.size()) + " fixtures round-trip";
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int k, const std::string& title, const std::function<Outcome()>& run) {
    Outcome o;
    const auto start = Clock::now();
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::printf("%s criterion %d: %s (%s) [%.1f s]\n", o.pass ? "PASS" : "FAIL", k, title.c_str(), o.detail.c_str(),
                seconds_since(start));
    std::fflush(stdout);
  };

  std::vector<RoundtripReport> roundtrips;
  SuiteRuns suite;
  report(1, "hand-solvable instances", hand_solutions);
  report(2, "roundtrip oracle", [&] { return roundtrip(roundtrips); });
  report(3, "finiteness and stability", [&] {
    suite = run_suite();
    return stability(suite);
  });
  report(4, "path accounting", [&] { return accounting(suite, roundtrips); });
  report(5, "area formula and jacobians", area_formula);
  report(6, "area-sum identity", area_identity);
  report(7, "algebraicity certificates", [&] { return certificates(roundtrips); });
  report(8, "degeneration diagnostics", degeneration);
  report(9, "combinatorics", combinatorics);
  report(10, "command line", cli);
  return failures == 0 ? 0 : 1;
}
