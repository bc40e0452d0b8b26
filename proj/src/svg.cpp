#include "eqd/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace eqd {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

}  // namespace

std::string render_svg(const CombinatorialType& g, const Polygon& p, const AreaAssignment& a,
                       std::span<const AffinePoint> interior) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& v : p.affine_vertices()) pts.emplace_back(v.x.real(), v.y.real());
  for (const auto& v : interior) pts.emplace_back(v.x.real(), v.y.real());

  double xmin = pts[0].first, xmax = xmin, ymin = pts[0].second, ymax = ymin;
  for (std::size_t k = 0; k < p.size(); ++k) {
    xmin = std::min(xmin, pts[k].first);
    xmax = std::max(xmax, pts[k].first);
    ymin = std::min(ymin, pts[k].second);
    ymax = std::max(ymax, pts[k].second);
  }
  const double w = xmax - xmin, h = ymax - ymin;
  const double mx = 0.05 * w, my = 0.05 * h;
  const double scale = std::max(w, h);
  // Flip y so the drawing has y pointing up.
  auto X = [&](double x) { return num(x); };
  auto Y = [&](double y) { return num(ymax + ymin - y); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << num(xmin - mx) << ' '
     << num(ymin - my) << ' ' << num(w + 2 * mx) << ' ' << num(h + 2 * my) << "\">\n";
  os << "<style>.outline{fill:#f4f4f4;stroke:#000;stroke-width:" << num(scale * 0.006)
     << "}.edge{stroke:#333;stroke-width:" << num(scale * 0.003) << "}.vertex{fill:#c00}.area{font-size:"
     << num(scale * 0.035) << "px;text-anchor:middle;font-family:sans-serif}</style>\n";

  os << "<polygon class=\"outline\" points=\"";
  for (std::size_t k = 0; k < p.size(); ++k) os << (k ? " " : "") << X(pts[k].first) << ',' << Y(pts[k].second);
  os << "\"/>\n";

  for (const auto& [u, v] : g.edges())
    os << "<line class=\"edge\" x1=\"" << X(pts[u].first) << "\" y1=\"" << Y(pts[u].second) << "\" x2=\""
       << X(pts[v].first) << "\" y2=\"" << Y(pts[v].second) << "\"/>\n";

  for (std::size_t f = 0; f < g.faces.size(); ++f) {
    const Face& face = g.faces[f];
    double cx = 0, cy = 0;
    for (int v : face) {
      cx += pts[v].first / 3;
      cy += pts[v].second / 3;
    }
    os << "<text class=\"area\" x=\"" << X(cx) << "\" y=\"" << Y(cy) << "\">" << to_string(a.areas[f])
       << "</text>\n";
  }

  for (std::size_t v = 0; v < pts.size(); ++v)
    os << "<circle class=\"vertex\" cx=\"" << X(pts[v].first) << "\" cy=\"" << Y(pts[v].second) << "\" r=\""
       << num(scale * 0.012) << "\"><title>" << v + 1 << "</title></circle>\n";

  os << "</svg>\n";
  return os.str();
}

}  // namespace eqd
