#include "eqd/degen.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace eqd {

std::vector<std::vector<int>> bounded_face_walks(const CombinatorialType& g, const std::vector<int>& vertices) {
  const std::set<int> in(vertices.begin(), vertices.end());
  const auto rot = rotation_system(g);
  std::map<int, std::vector<int>> around;
  for (int v : in)
    for (int w : rot[static_cast<std::size_t>(v)])
      if (in.count(w)) around[v].push_back(w);

  // Face on the left of u->v continues with v->w, w just clockwise of u around v.
  auto next = [&](int u, int v) {
    const auto& r = around.at(v);
    const auto pos = static_cast<std::size_t>(std::find(r.begin(), r.end(), u) - r.begin());
    return r[(pos + r.size() - 1) % r.size()];
  };

  std::set<Edge> visited;
  std::vector<std::vector<int>> walks;
  for (const auto& [u0, nbrs] : around) {
    for (int v0 : nbrs) {
      if (visited.count({u0, v0})) continue;
      std::vector<int> walk;
      bool outer = false;
      int u = u0, v = v0;
      do {
        visited.insert({u, v});
        walk.push_back(u);
        if (u == 1 && v == 0) outer = true;
        const int w = next(u, v);
        u = v;
        v = w;
      } while (u != u0 || v != v0);
      if (!outer) walks.push_back(std::move(walk));
    }
  }
  return walks;
}

double collinearity_deviation(const std::vector<AffinePoint>& points) {
  if (points.size() < 3) return 0.0;
  const auto k = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXcd m(k, 2);
  Complex cx{0.0, 0.0}, cy{0.0, 0.0};
  for (const auto& q : points) {
    cx += q.x;
    cy += q.y;
  }
  cx /= static_cast<double>(k);
  cy /= static_cast<double>(k);
  for (Eigen::Index r = 0; r < k; ++r) {
    m(r, 0) = points[static_cast<std::size_t>(r)].x - cx;
    m(r, 1) = points[static_cast<std::size_t>(r)].y - cy;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  return sv(0) == 0.0 ? 0.0 : sv(1) / sv(0);
}

DegenerationReport inspect(const CombinatorialType& g, const Polygon& p, const AreaAssignment& a,
                           const PathResult& path, const DegenSettings& settings) {
  if (path.status != PathStatus::diverged)
    throw std::invalid_argument(std::string("inspect: path ") + std::to_string(path.index + 1) + " is " +
                                to_string(path.status) + ", not diverged");
  if (path.limits.size() != static_cast<std::size_t>(g.interior_count()))
    throw std::invalid_argument("inspect: path limits do not match the interior vertex count");

  DegenerationReport r;
  r.path_index = path.index;
  r.limits = path.limits;
  r.positions.assign(static_cast<std::size_t>(g.N), std::nullopt);
  for (int v = 0; v < g.n; ++v) r.positions[static_cast<std::size_t>(v)] = p[static_cast<std::size_t>(v)].to_affine();

  int near_threshold = 0;
  for (int k = 0; k < g.interior_count(); ++k) {
    const int v = g.n + k;
    const auto& lim = path.limits[static_cast<std::size_t>(k)];
    const AffinePoint sample{path.endpoint(2 * k), path.endpoint(2 * k + 1)};
    if (std::max(std::abs(sample.x), std::abs(sample.y)) >= settings.mixed_rate_magnitude) ++near_threshold;
    if (std::abs(lim.z()) < settings.infinity_tolerance) {
      r.at_infinity.push_back(v);
    } else {
      r.finite.push_back(v);
      r.positions[static_cast<std::size_t>(v)] = sample;
    }
  }
  r.mixed_rate_warning = near_threshold >= 2;
  if (r.at_infinity.empty())
    throw std::logic_error("inspect: path " + std::to_string(path.index + 1) +
                           " diverged but no interior point is at infinity");

  auto finite = [&](int v) { return r.positions[static_cast<std::size_t>(v)].has_value(); };
  for (const auto& e : g.edges())
    if (finite(e.first) && finite(e.second)) r.h_prime_edges.push_back(e);

  // H: component of H' containing the boundary.
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.N));
  for (const auto& [u, v] : r.h_prime_edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  std::vector<bool> in_h(static_cast<std::size_t>(g.N), false);
  std::deque<int> queue{0};
  in_h[0] = true;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int w : adj[static_cast<std::size_t>(u)])
      if (!in_h[static_cast<std::size_t>(w)]) {
        in_h[static_cast<std::size_t>(w)] = true;
        queue.push_back(w);
      }
  }
  for (int v = 0; v < g.N; ++v)
    if (in_h[static_cast<std::size_t>(v)]) r.h_vertices.push_back(v);
  for (const auto& e : r.h_prime_edges)
    if (in_h[static_cast<std::size_t>(e.first)]) r.h_edges.push_back(e);

  // Faces of G grouped into regions separated only by edges of H.
  const std::set<Edge> h_edge_set(r.h_edges.begin(), r.h_edges.end());
  std::vector<std::size_t> parent(g.faces.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<Edge, std::size_t> left_of;
  for (std::size_t f = 0; f < g.faces.size(); ++f)
    for (int j = 0; j < 3; ++j) left_of[{g.faces[f][j], g.faces[f][(j + 1) % 3]}] = f;
  for (const auto& [e, f] : left_of) {
    auto twin = left_of.find({e.second, e.first});
    if (twin == left_of.end()) continue;
    const Edge key{std::min(e.first, e.second), std::max(e.first, e.second)};
    if (!h_edge_set.count(key)) parent[find(f)] = find(twin->second);
  }

  for (auto& walk : bounded_face_walks(g, r.h_vertices)) {
    HFace face;
    if (walk.size() == 3) face.g_face = g.find_face({walk[0], walk[1], walk[2]});
    const std::size_t root = find(left_of.at({walk[0], walk[1]}));
    face.prescribed = 0;
    for (std::size_t f = 0; f < g.faces.size(); ++f)
      if (find(f) == root) {
        face.contained.push_back(f);
        face.prescribed += a.areas[f];
      }
    std::vector<AffinePoint> pts;
    for (int v : walk) pts.push_back(*r.positions[static_cast<std::size_t>(v)]);
    face.limit_area = oriented_area_polygon(pts, AffinePoint{});
    if (face.g_face < 0) {
      std::vector<int> distinct = walk;
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      std::vector<AffinePoint> unique_pts;
      for (int v : distinct) unique_pts.push_back(*r.positions[static_cast<std::size_t>(v)]);
      face.collinearity = collinearity_deviation(unique_pts);
    }
    face.walk = std::move(walk);
    r.faces.push_back(std::move(face));
  }
  return r;
}

AreaAudit area_sum_audit(const DegenerationReport& report, const Polygon& p, double tolerance) {
  AreaAudit audit;
  audit.prescribed_sum = 0;
  for (const auto& f : report.faces) {
    audit.prescribed_sum += f.prescribed;
    audit.limit_sum += f.limit_area;
    const Complex gap = Complex(f.prescribed.get_d(), 0.0) - f.limit_area;
    if (f.g_face < 0)
      audit.collapsed_defect += gap;
    else
      audit.leftover_excess -= gap;
  }
  audit.polygon_area = p.area();
  audit.defect = Complex(audit.prescribed_sum.get_d(), 0.0) - audit.limit_sum;
  audit.near_solution = std::abs(audit.collapsed_defect) < tolerance;
  return audit;
}

}  // namespace eqd
