#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqd/combo.hpp"
#include "eqd/geom.hpp"
#include "eqd/homotopy.hpp"
#include "eqd/poly.hpp"

namespace eqd {

struct DegenSettings {
  /// |z| of the canonicalized limit below which a point counts as escaped.
  double infinity_tolerance = 1e-6;
  /// Magnitude above which a point is "near the truncation threshold".
  double mixed_rate_magnitude = 1e7;
};

/// A bounded face f of H with its anticlockwise boundary walk.
struct HFace {
  /// Vertex labels along the walk; repeats are kept.
  std::vector<int> walk;
  /// Index into g.faces when f is itself a face of G, else -1.
  int g_face = -1;
  /// Faces of G inside f.
  std::vector<std::size_t> contained;
  Rational prescribed;  // S_f: sum of prescribed areas inside f
  Complex limit_area;   // S'_f: oriented area of the limit walk
  /// Normalized smallest singular value of the centred limit points (non-G faces).
  std::optional<double> collinearity;
};

struct DegenerationReport {
  std::size_t path_index = 0;
  /// Canonicalized limit per interior vertex.
  std::vector<ProjectivePoint> limits;
  std::vector<int> at_infinity;
  std::vector<int> finite;
  /// Limit positions of every finite vertex (boundary included), indexed by label.
  std::vector<std::optional<AffinePoint>> positions;
  std::vector<Edge> h_prime_edges;
  std::vector<int> h_vertices;
  std::vector<Edge> h_edges;
  std::vector<HFace> faces;
  bool mixed_rate_warning = false;
};

/// Classifies a diverged path. Throws std::invalid_argument if the path did
/// not diverge and std::logic_error if no point is classified at infinity.
DegenerationReport inspect(const CombinatorialType& g, const Polygon& p, const AreaAssignment& a,
                           const PathResult& path, const DegenSettings& settings = {});

struct AreaAudit {
  Rational prescribed_sum;  // sum of S_f over bounded faces of H
  Complex limit_sum;        // sum of S'_f
  Rational polygon_area;
  Complex defect;  // prescribed_sum - limit_sum; zero up to rounding whenever H covers the polygon
  /// Sum of S_f - S'_f over the faces of H that are not faces of G.
  Complex collapsed_defect;
  /// Sum of S'_f - S_f over the faces of H that are faces of G; balances
  /// collapsed_defect and measures how far the limit violates those equations.
  Complex leftover_excess;
  /// |collapsed_defect| below tolerance: no area collapsed onto a line.
  bool near_solution = false;
};

AreaAudit area_sum_audit(const DegenerationReport& report, const Polygon& p, double tolerance = 1e-6);

/// Boundary walks of the faces of the plane graph induced on `vertices`,
/// using the rotation system of g. The outer face is excluded.
std::vector<std::vector<int>> bounded_face_walks(const CombinatorialType& g, const std::vector<int>& vertices);

/// Smallest over largest singular value of the centred point matrix; 0 for
/// fewer than three distinct points.
double collinearity_deviation(const std::vector<AffinePoint>& points);

}  // namespace eqd
