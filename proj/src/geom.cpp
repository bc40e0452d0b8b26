#include "eqd/geom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eqd {

RationalPoint::RationalPoint(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {
  x.canonicalize();
  y.canonicalize();
}

AffinePoint RationalPoint::to_affine() const { return {Complex(x.get_d(), 0.0), Complex(y.get_d(), 0.0)}; }

bool RationalPoint::operator==(const RationalPoint& other) const { return x == other.x && y == other.y; }

ProjectivePoint::ProjectivePoint(Complex x, Complex y, Complex z) : x_(x), y_(y), z_(z) {}

ProjectivePoint ProjectivePoint::from_affine(const AffinePoint& p) { return {p.x, p.y, Complex(1.0, 0.0)}; }

bool ProjectivePoint::at_infinity(double tolerance) const {
  return std::abs(canonicalize(*this).z()) < tolerance;
}

std::optional<AffinePoint> ProjectivePoint::to_affine() const {
  if (z_ == Complex(0.0, 0.0)) return std::nullopt;
  return AffinePoint{x_ / z_, y_ / z_};
}

ProjectivePoint canonicalize(const ProjectivePoint& p) {
  const Complex coords[3] = {p.x(), p.y(), p.z()};
  int pivot = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(coords[k]) > std::abs(coords[pivot])) pivot = k;
  if (std::abs(coords[pivot]) == 0.0) throw std::invalid_argument("canonicalize: all-zero projective point");
  Complex out[3];
  for (int k = 0; k < 3; ++k) out[k] = coords[k] / coords[pivot];
  out[pivot] = Complex(1.0, 0.0);
  return {out[0], out[1], out[2]};
}

Complex oriented_area_triangle(const AffinePoint& p1, const AffinePoint& p2, const AffinePoint& p3) {
  const Complex det = p1.x * p2.y + p2.x * p3.y + p3.x * p1.y - p1.x * p3.y - p2.x * p1.y - p3.x * p2.y;
  return 0.5 * det;
}

Complex oriented_area_polygon(std::span<const AffinePoint> points, const AffinePoint& ref) {
  Complex sum{0.0, 0.0};
  const std::size_t n = points.size();
  for (std::size_t k = 0; k < n; ++k) sum += oriented_area_triangle(points[k], points[(k + 1) % n], ref);
  return sum;
}

Rational oriented_area_triangle_exact(const RationalPoint& p1, const RationalPoint& p2,
                                      const RationalPoint& p3) {
  Rational det = p1.x * p2.y + p2.x * p3.y + p3.x * p1.y - p1.x * p3.y - p2.x * p1.y - p3.x * p2.y;
  return det / 2;
}

Rational oriented_area_polygon_exact(std::span<const RationalPoint> points) {
  Rational twice = 0;
  const std::size_t n = points.size();
  for (std::size_t k = 0; k < n; ++k) {
    const auto& a = points[k];
    const auto& b = points[(k + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return twice / 2;
}

int orientation(const RationalPoint& a, const RationalPoint& b, const RationalPoint& c) {
  return sgn(Rational((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)));
}

namespace {

// c collinear with [a,b]; is it within the bounding box?
bool on_segment(const RationalPoint& a, const RationalPoint& b, const RationalPoint& c) {
  return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= c.y &&
         c.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(const RationalPoint& a, const RationalPoint& b, const RationalPoint& c,
                        const RationalPoint& d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) ||
         (o3 == 0 && on_segment(c, d, a)) || (o4 == 0 && on_segment(c, d, b));
}

Location locate(std::span<const RationalPoint> polygon, const RationalPoint& q) {
  const std::size_t n = polygon.size();
  bool inside = false;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& a = polygon[k];
    const auto& b = polygon[(k + 1) % n];
    if (orientation(a, b, q) == 0 && on_segment(a, b, q)) return Location::boundary;
    // Crossing-number test on the half-open edge (a.y > q.y) != (b.y > q.y).
    if ((a.y > q.y) != (b.y > q.y)) {
      const Rational xcross = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (q.x < xcross) inside = !inside;
    }
  }
  return inside ? Location::inside : Location::outside;
}

Polygon::Polygon(std::vector<RationalPoint> vertices) : vertices_(std::move(vertices)) {
  if (auto reason = check(vertices_); !reason.empty()) throw std::invalid_argument("polygon: " + reason);
}

std::string Polygon::check(const std::vector<RationalPoint>& v) {
  const std::size_t n = v.size();
  if (n < 3) return "fewer than 3 vertices";
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (v[a] == v[b]) return "repeated vertex " + std::to_string(a + 1);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const bool adjacent = b == a + 1 || (a == 0 && b == n - 1);
      const auto& p = v[a];
      const auto& p2 = v[(a + 1) % n];
      const auto& q = v[b];
      const auto& q2 = v[(b + 1) % n];
      if (adjacent) {
        // Adjacent edges may only share their common endpoint.
        const auto& shared = (b == a + 1) ? p2 : p;
        const auto& e1 = (b == a + 1) ? p : p2;
        const auto& e2 = (b == a + 1) ? q2 : q;
        if (orientation(e1, shared, e2) == 0 && on_segment(e1, shared, e2)) return "overlapping edges";
        if (orientation(e2, shared, e1) == 0 && on_segment(e2, shared, e1)) return "overlapping edges";
        continue;
      }
      if (segments_intersect(p, p2, q, q2))
        return "edges " + std::to_string(a + 1) + " and " + std::to_string(b + 1) + " intersect";
    }
  }
  if (sgn(oriented_area_polygon_exact(v)) <= 0) return "not oriented anticlockwise";
  return {};
}

std::vector<AffinePoint> Polygon::affine_vertices() const {
  std::vector<AffinePoint> out;
  out.reserve(vertices_.size());
  for (const auto& v : vertices_) out.push_back(v.to_affine());
  return out;
}

Rational rationalize(double value, long long max_denominator) {
  if (!std::isfinite(value)) throw std::invalid_argument("rationalize: non-finite value");
  Rational exact(value);
  mpz_class num = exact.get_num();
  mpz_class den = exact.get_den();
  // Convergents h/k of the continued fraction of num/den.
  mpz_class h_prev = 0, h = 1, k_prev = 1, k = 0;
  const mpz_class limit(std::to_string(max_denominator), 10);
  Rational best = 0;
  while (den != 0) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class h_next = a * h + h_prev;
    mpz_class k_next = a * k + k_prev;
    if (k_next > limit) break;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
    best = Rational(h, k);
    mpz_class r = num - a * den;
    num = den;
    den = r;
  }
  best.canonicalize();
  return best;
}

Rational parse_rational(const std::string& text) {
  auto valid_int = [](const std::string& s) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start) return false;
    return std::all_of(s.begin() + static_cast<long>(start), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational \"" + text + "\"");
  mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator in \"" + text + "\"");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace eqd
