#include "eqd/solve.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace eqd {

namespace {

double max_abs(const Eigen::VectorXcd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

std::string vname(int v) { return std::to_string(v + 1); }

std::string face_name(const Face& f) { return "(" + vname(f[0]) + "," + vname(f[1]) + "," + vname(f[2]) + ")"; }

// Lexicographic on (re, im) per coordinate, ties within 1e-7.
bool solution_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (std::abs(a(k).real() - b(k).real()) > 1e-7) return a(k).real() < b(k).real();
    if (std::abs(a(k).imag() - b(k).imag()) > 1e-7) return a(k).imag() < b(k).imag();
  }
  return false;
}

}  // namespace

IsolationReport isolation_check(const PolynomialSystem& s, const Eigen::VectorXcd& point, double threshold) {
  IsolationReport r;
  r.unknowns = s.unknown_count;
  if (s.unknown_count == 0) return r;
  const Eigen::MatrixXcd J = jacobian(s, point);
  if (J.rows() == 0) {
    r.isolated = false;
    return r;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J);
  const auto& sv = svd.singularValues();
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    r.singular_values.push_back(sv(k));
    if (sv(0) > 0.0 && sv(k) > threshold * sv(0)) ++r.rank;
  }
  r.isolated = r.rank == r.unknowns;
  return r;
}

GeometricCheck check_geometric_exact(const CombinatorialType& g, const Polygon& p,
                                     std::span<const RationalPoint> interior) {
  GeometricCheck out;
  std::vector<RationalPoint> pts(p.vertices());
  pts.insert(pts.end(), interior.begin(), interior.end());

  for (int v = g.n; v < g.N; ++v) {
    const Location loc = locate(p.vertices(), pts[static_cast<std::size_t>(v)]);
    if (loc == Location::boundary) out.diagnostics.push_back("vertex " + vname(v) + " lies on the boundary of P");
    if (loc == Location::outside) out.diagnostics.push_back("vertex " + vname(v) + " lies outside P");
  }
  for (const auto& f : g.faces)
    if (orientation(pts[f[0]], pts[f[1]], pts[f[2]]) <= 0)
      out.diagnostics.push_back("face " + face_name(f) + " is not positively oriented");

  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto [a, b] = edges[i];
      const auto [c, d] = edges[j];
      const std::string label = "edges " + vname(a) + "-" + vname(b) + " and " + vname(c) + "-" + vname(d);
      int shared = -1, u = -1, w = -1;
      if (a == c) shared = a, u = b, w = d;
      else if (a == d) shared = a, u = b, w = c;
      else if (b == c) shared = b, u = a, w = d;
      else if (b == d) shared = b, u = a, w = c;
      if (shared >= 0) {
        const auto& s = pts[shared];
        const auto& pu = pts[u];
        const auto& pw = pts[w];
        const Rational dot = (pu.x - s.x) * (pw.x - s.x) + (pu.y - s.y) * (pw.y - s.y);
        if (orientation(s, pu, pw) == 0 && sgn(dot) > 0) out.diagnostics.push_back(label + " overlap");
        continue;
      }
      if (segments_intersect(pts[a], pts[b], pts[c], pts[d])) out.diagnostics.push_back(label + " cross");
    }
  }
  out.geometric = out.diagnostics.empty();
  return out;
}

GeometricCheck check_geometric(const CombinatorialType& g, const Polygon& p, std::span<const AffinePoint> interior,
                               long long max_denominator, double real_tolerance) {
  std::vector<RationalPoint> exact;
  for (std::size_t k = 0; k < interior.size(); ++k) {
    const auto& q = interior[k];
    if (std::abs(q.x.imag()) > real_tolerance || std::abs(q.y.imag()) > real_tolerance)
      return {false, {"vertex " + vname(g.n + static_cast<int>(k)) + " has complex coordinates"}};
    exact.emplace_back(rationalize(q.x.real(), max_denominator), rationalize(q.y.real(), max_denominator));
  }
  return check_geometric_exact(g, p, exact);
}

SolutionSet solve(const CombinatorialType& g, const Polygon& p, const AreaAssignment& a, const SolveConfig& config) {
  SolutionSet out;
  out.system = build_system(g, p, a);
  const PolynomialSystem& sys = out.system;

  if (sys.feasibility_warning) {
    out.infeasible = true;
    out.reason = *sys.feasibility_warning;
    return out;
  }
  for (const auto& c : sys.constants_report) {
    if (sgn(c.residual) != 0) {
      out.infeasible = true;
      out.reason = "face " + face_name(g.faces[c.face]) + " has no unknowns and residual " + to_string(c.residual);
      return out;
    }
  }

  if (sys.unknown_count == 0) {
    Solution s;
    s.values = Eigen::VectorXcd(0);
    s.is_real = true;
    const auto check = check_geometric_exact(g, p, {});
    s.is_geometric = check.geometric;
    s.diagnostics = check.diagnostics;
    s.isolation = isolation_check(sys, s.values, config.rank_threshold);
    out.solutions.push_back(std::move(s));
    return out;
  }

  const SquareSubsystem square = config.square_equations
                                     ? select_equations(sys, *config.square_equations)
                                     : make_square_subsystem(sys, config.strategy, config.seed);
  out.square_equations = square.selected;
  const HomotopyProblem problem = HomotopyProblem::make(square.square, config.seed);
  const std::vector<PathResult> paths =
      config.parallel ? track_all(problem, config.tracker) : track_all_serial(problem, config.tracker);

  out.paths.total = paths.size();
  std::vector<Eigen::VectorXcd> candidates;
  for (const auto& path : paths) {
    switch (path.status) {
      case PathStatus::converged: ++out.paths.converged; break;
      case PathStatus::diverged: ++out.paths.diverged; out.divergences.push_back(path); break;
      case PathStatus::failed: ++out.paths.failed; break;
    }
    if (path.status != PathStatus::converged) continue;
    if (square.leftovers.size() > 0 && max_abs(evaluate(square.leftovers, path.endpoint)) > config.filter_tolerance)
      continue;
    const NewtonResult refined = newton_refine(sys, path.endpoint, config.refine_iterations, config.refine_tolerance);
    const Eigen::VectorXcd x = refined.status == NewtonStatus::singular ? path.endpoint : refined.x;
    if (max_abs(evaluate(sys, x)) < config.residual_tolerance) candidates.push_back(x);
  }
  if (out.paths.failed > 0)
    out.warnings.push_back(std::to_string(out.paths.failed) + " of " + std::to_string(out.paths.total) +
                           " paths failed");

  std::stable_sort(candidates.begin(), candidates.end(), solution_less);
  std::vector<Eigen::VectorXcd> distinct;
  for (const auto& c : candidates) {
    const bool seen = std::any_of(distinct.begin(), distinct.end(),
                                  [&](const Eigen::VectorXcd& d) { return max_abs(d - c) <= config.dedup_tolerance; });
    if (!seen) distinct.push_back(c);
  }

  for (auto& x : distinct) {
    Solution s;
    s.is_real = true;
    for (Eigen::Index k = 0; k < x.size(); ++k)
      if (std::abs(x(k).imag()) >= config.real_tolerance) s.is_real = false;
    if (s.is_real)
      for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = Complex(x(k).real(), 0.0);
    s.values = x;
    s.coordinates = unpack_points(x);
    s.residual = max_abs(evaluate(sys, x));
    if (s.is_real) {
      const auto check = check_geometric(g, p, s.coordinates, config.max_denominator, config.real_tolerance);
      s.is_geometric = check.geometric;
      s.diagnostics = check.diagnostics;
    } else {
      s.diagnostics.push_back("complex solution");
    }
    s.isolation = isolation_check(sys, x, config.rank_threshold);
    out.solutions.push_back(std::move(s));
  }
  return out;
}

std::vector<RationalPoint> sample_configuration(const CombinatorialType& g, const Polygon& p, std::uint64_t seed,
                                                int max_attempts) {
  const int interior = g.interior_count();
  if (interior == 0) return {};
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit_interval(rng()); };

  // Weighted barycentric (Tutte) embedding with random positive weights.
  const auto rot = rotation_system(g);
  const auto m = static_cast<Eigen::Index>(interior);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m, 2);
  for (int v = g.n; v < g.N; ++v) {
    const Eigen::Index r = v - g.n;
    for (int w : rot[static_cast<std::size_t>(v)]) {
      const double weight = uniform(0.25, 4.0);
      A(r, r) += weight;
      if (w >= g.n) {
        A(r, w - g.n) -= weight;
      } else {
        rhs(r, 0) += weight * p[static_cast<std::size_t>(w)].x.get_d();
        rhs(r, 1) += weight * p[static_cast<std::size_t>(w)].y.get_d();
      }
    }
  }
  const Eigen::MatrixXd embedding = A.fullPivLu().solve(rhs);

  std::vector<std::pair<double, double>> all;
  for (const auto& q : p.vertices()) all.emplace_back(q.x.get_d(), q.y.get_d());
  for (Eigen::Index r = 0; r < m; ++r) all.emplace_back(embedding(r, 0), embedding(r, 1));
  double spacing = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      spacing = std::min(spacing, std::hypot(all[i].first - all[j].first, all[i].second - all[j].second));

  constexpr long kDenominator = 1L << 16;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const double radius = 0.2 * spacing / (1.0 + attempt);
    std::vector<RationalPoint> sample;
    for (Eigen::Index r = 0; r < m; ++r) {
      const double x = embedding(r, 0) + uniform(-radius, radius);
      const double y = embedding(r, 1) + uniform(-radius, radius);
      sample.emplace_back(Rational(std::lround(x * kDenominator), kDenominator),
                          Rational(std::lround(y * kDenominator), kDenominator));
    }
    if (check_geometric_exact(g, p, sample).geometric) return sample;
  }
  throw std::runtime_error("sample_configuration: no geometric sample after " + std::to_string(max_attempts) +
                           " attempts");
}

RoundtripReport roundtrip_oracle(const CombinatorialType& g, const Polygon& p, std::uint64_t seed,
                                 const SolveConfig& config, double tolerance) {
  RoundtripReport report;
  try {
    report.sample = sample_configuration(g, p, seed);
  } catch (const std::runtime_error& e) {
    report.failure = e.what();
    return report;
  }
  report.areas = AreaAssignment::induced(g, p, report.sample);
  report.result = solve(g, p, report.areas, config);
  if (report.result.infeasible) {
    report.failure = "solver reported infeasible: " + report.result.reason;
    return report;
  }
  std::vector<AffinePoint> expected;
  for (const auto& q : report.sample) expected.push_back(q.to_affine());
  const Eigen::VectorXcd target = pack_points(expected);
  report.distance = std::numeric_limits<double>::infinity();
  const Solution* nearest = nullptr;
  for (const auto& s : report.result.solutions) {
    const double d = max_abs(s.values - target);
    if (d < report.distance) {
      report.distance = d;
      nearest = &s;
    }
  }
  if (nearest == nullptr) {
    report.failure = "no solutions returned";
    return report;
  }
  if (report.distance > tolerance) {
    report.failure = "sample not among solutions (nearest at distance " + std::to_string(report.distance) + ")";
    return report;
  }
  if (!nearest->is_geometric) {
    report.failure = "recovered solution is not marked geometric";
    return report;
  }
  report.recovered = true;
  return report;
}

}  // namespace eqd
