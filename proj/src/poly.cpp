#include "eqd/poly.hpp"

#include <sstream>

namespace eqd {

MultiPoly to_complex(const RationalPoly& p) {
  MultiPoly out(p.variable_count());
  for (const auto& [e, c] : p.terms()) out.add_term(e, Complex(c.get_d(), 0.0));
  return out;
}

std::string to_string(const RationalPoly& p, std::span<const std::string> names) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest terms first.
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    bool has_var = false;
    std::ostringstream mono;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (has_var) mono << '*';
      mono << names[k];
      if (e[k] > 1) mono << '^' << e[k];
      has_var = true;
    }
    if (!has_var || mag != 1) {
      os << to_string(mag);
      if (has_var) os << '*';
    }
    os << mono.str();
    first = false;
  }
  return os.str();
}

Rational AreaAssignment::sum() const {
  Rational s = 0;
  for (const auto& a : areas) s += a;
  return s;
}

AreaAssignment AreaAssignment::equal(const CombinatorialType& g, const Polygon& p) {
  const Rational each = p.area() / static_cast<long>(g.faces.size());
  return {std::vector<Rational>(g.faces.size(), each)};
}

AreaAssignment AreaAssignment::induced(const CombinatorialType& g, const Polygon& p,
                                       std::span<const RationalPoint> interior) {
  if (static_cast<int>(interior.size()) != g.interior_count())
    throw SystemError("induced areas: expected " + std::to_string(g.interior_count()) + " interior points");
  auto at = [&](int v) -> const RationalPoint& {
    return v < g.n ? p[static_cast<std::size_t>(v)] : interior[static_cast<std::size_t>(v - g.n)];
  };
  AreaAssignment out;
  for (const auto& f : g.faces) out.areas.push_back(oriented_area_triangle_exact(at(f[0]), at(f[1]), at(f[2])));
  return out;
}

PolynomialSystem PolynomialSystem::subset(std::span<const std::size_t> indices) const {
  PolynomialSystem out;
  out.unknown_count = unknown_count;
  out.variables = variables;
  for (std::size_t k : indices) {
    out.polys.push_back(polys.at(k));
    if (has_exact()) out.exact.push_back(exact.at(k));
    out.face_of.push_back(face_of.at(k));
  }
  return out;
}

namespace {

struct CoordinatePolys {
  RationalPoly x, y;
};

CoordinatePolys coordinates_of(const CombinatorialType& g, const Polygon& p, int v) {
  const auto nvars = static_cast<std::size_t>(2 * g.interior_count());
  if (v < g.n) {
    const auto& q = p[static_cast<std::size_t>(v)];
    return {RationalPoly::constant(nvars, q.x), RationalPoly::constant(nvars, q.y)};
  }
  const auto base = static_cast<std::size_t>(2 * (v - g.n));
  return {RationalPoly::variable(nvars, base), RationalPoly::variable(nvars, base + 1)};
}

}  // namespace

RationalPoly face_determinant(const CombinatorialType& g, const Polygon& p, std::size_t face) {
  const Face& f = g.faces.at(face);
  const auto a = coordinates_of(g, p, f[0]);
  const auto b = coordinates_of(g, p, f[1]);
  const auto c = coordinates_of(g, p, f[2]);
  return a.x * b.y + b.x * c.y + c.x * a.y - a.x * c.y - b.x * a.y - c.x * b.y;
}

PolynomialSystem build_system(const CombinatorialType& g, const Polygon& p, const AreaAssignment& a) {
  if (p.size() != static_cast<std::size_t>(g.n))
    throw SystemError("build_system: polygon has " + std::to_string(p.size()) + " vertices, type expects " +
                      std::to_string(g.n));
  if (a.areas.size() != g.faces.size())
    throw SystemError("build_system: " + std::to_string(a.areas.size()) + " areas given for " +
                      std::to_string(g.faces.size()) + " faces (missing face area)");

  PolynomialSystem s;
  const int interior = g.interior_count();
  s.unknown_count = static_cast<std::size_t>(2 * interior);
  for (int v = g.n; v < g.N; ++v) {
    s.variables.push_back("x" + std::to_string(v + 1));
    s.variables.push_back("y" + std::to_string(v + 1));
  }
  for (std::size_t k = 0; k < g.faces.size(); ++k) {
    RationalPoly eq = face_determinant(g, p, k);
    eq -= RationalPoly::constant(s.unknown_count, Rational(2 * a.areas[k]));
    const Face& f = g.faces[k];
    const bool has_unknown = f[0] >= g.n || f[1] >= g.n || f[2] >= g.n;
    if (!has_unknown) {
      Rational residual = 0;
      if (!eq.is_zero()) residual = eq.terms().begin()->second;
      s.constants_report.push_back({k, residual});
      continue;
    }
    s.polys.push_back(to_complex(eq));
    s.exact.push_back(std::move(eq));
    s.face_of.push_back(k);
  }
  const Rational total = a.sum();
  const Rational area = p.area();
  if (total != area)
    s.feasibility_warning = "prescribed areas sum to " + to_string(total) + " but the polygon area is " + to_string(area);
  return s;
}

Eigen::VectorXcd evaluate(const PolynomialSystem& s, const Eigen::VectorXcd& point) {
  if (static_cast<std::size_t>(point.size()) != s.unknown_count)
    throw std::invalid_argument("evaluate: point has " + std::to_string(point.size()) + " entries, system has " +
                                std::to_string(s.unknown_count) + " unknowns");
  Eigen::VectorXcd out(static_cast<Eigen::Index>(s.polys.size()));
  const std::span<const Complex> x(point.data(), static_cast<std::size_t>(point.size()));
  for (std::size_t r = 0; r < s.polys.size(); ++r) out(static_cast<Eigen::Index>(r)) = s.polys[r].evaluate(x);
  return out;
}

Eigen::MatrixXcd jacobian(const PolynomialSystem& s, const Eigen::VectorXcd& point) {
  if (static_cast<std::size_t>(point.size()) != s.unknown_count)
    throw std::invalid_argument("jacobian: point has " + std::to_string(point.size()) + " entries, system has " +
                                std::to_string(s.unknown_count) + " unknowns");
  const auto rows = static_cast<Eigen::Index>(s.polys.size());
  const auto cols = static_cast<Eigen::Index>(s.unknown_count);
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (const auto& [e, c] : s.polys[static_cast<std::size_t>(r)].terms()) {
      for (Eigen::Index v = 0; v < cols; ++v) {
        if (e[static_cast<std::size_t>(v)] == 0) continue;
        Complex term = c * static_cast<double>(e[static_cast<std::size_t>(v)]);
        for (Eigen::Index k = 0; k < cols; ++k) {
          const int power = e[static_cast<std::size_t>(k)] - (k == v ? 1 : 0);
          for (int q = 0; q < power; ++q) term *= point(k);
        }
        J(r, v) += term;
      }
    }
  }
  return J;
}

std::vector<AffinePoint> unpack_points(const Eigen::VectorXcd& values) {
  std::vector<AffinePoint> out;
  for (Eigen::Index k = 0; k + 1 < values.size(); k += 2) out.push_back({values(k), values(k + 1)});
  return out;
}

Eigen::VectorXcd pack_points(std::span<const AffinePoint> points) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(2 * points.size()));
  for (std::size_t k = 0; k < points.size(); ++k) {
    out(static_cast<Eigen::Index>(2 * k)) = points[k].x;
    out(static_cast<Eigen::Index>(2 * k + 1)) = points[k].y;
  }
  return out;
}

}  // namespace eqd
