#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace eqd {

using Complex = std::complex<double>;
using Rational = mpq_class;

/// Plane point with complex coordinates.
struct AffinePoint {
  Complex x;
  Complex y;
};

/// Plane point with exact rational coordinates, kept in lowest terms.
struct RationalPoint {
  Rational x;
  Rational y;

  RationalPoint() = default;
  RationalPoint(Rational px, Rational py);

  AffinePoint to_affine() const;
  bool operator==(const RationalPoint& other) const;
};

/// Homogeneous triple [x:y:z], not all zero.
class ProjectivePoint {
 public:
  ProjectivePoint(Complex x, Complex y, Complex z);
  static ProjectivePoint from_affine(const AffinePoint& p);

  const Complex& x() const { return x_; }
  const Complex& y() const { return y_; }
  const Complex& z() const { return z_; }

  /// True when |z| < tolerance once the largest coordinate is scaled to 1.
  bool at_infinity(double tolerance = 1e-8) const;

  /// Affine image; std::nullopt for z == 0.
  std::optional<AffinePoint> to_affine() const;

 private:
  Complex x_, y_, z_;
};

/// Scales p so that its largest-magnitude coordinate is exactly 1.
/// Throws std::invalid_argument for the all-zero triple.
ProjectivePoint canonicalize(const ProjectivePoint& p);

Complex oriented_area_triangle(const AffinePoint& p1, const AffinePoint& p2, const AffinePoint& p3);

/// Sum of oriented triangle areas (v_k, v_{k+1}, ref) over the closed path.
/// The value does not depend on ref.
Complex oriented_area_polygon(std::span<const AffinePoint> points, const AffinePoint& ref);

Rational oriented_area_triangle_exact(const RationalPoint& p1, const RationalPoint& p2,
                                      const RationalPoint& p3);
/// Shoelace area about the origin.
Rational oriented_area_polygon_exact(std::span<const RationalPoint> points);

/// Sign of the exact orientation determinant: +1 anticlockwise, -1 clockwise, 0 collinear.
int orientation(const RationalPoint& a, const RationalPoint& b, const RationalPoint& c);

/// True when the closed segments [a,b] and [c,d] share at least one point.
bool segments_intersect(const RationalPoint& a, const RationalPoint& b, const RationalPoint& c,
                        const RationalPoint& d);

/// Point location against a simple polygon.
enum class Location { inside, boundary, outside };
Location locate(std::span<const RationalPoint> polygon, const RationalPoint& q);

/// Simple, anticlockwise polygon with rational vertices.
class Polygon {
 public:
  /// Throws std::invalid_argument naming the violated invariant.
  explicit Polygon(std::vector<RationalPoint> vertices);

  std::size_t size() const { return vertices_.size(); }
  const std::vector<RationalPoint>& vertices() const { return vertices_; }
  const RationalPoint& operator[](std::size_t i) const { return vertices_[i]; }
  Rational area() const { return oriented_area_polygon_exact(vertices_); }
  std::vector<AffinePoint> affine_vertices() const;

  /// Empty string when the vertex list is a valid polygon, else the reason.
  static std::string check(const std::vector<RationalPoint>& vertices);

 private:
  std::vector<RationalPoint> vertices_;
};

/// Best rational approximation with denominator at most max_denominator
/// (continued fractions).
Rational rationalize(double value, long long max_denominator);

/// Parses "p/q" or an integer string. Throws std::invalid_argument.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

}  // namespace eqd
