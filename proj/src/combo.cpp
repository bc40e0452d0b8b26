#include "eqd/combo.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace eqd {

namespace {

std::string vname(int v) { return std::to_string(v + 1); }

Face rotate_min_first(Face f) {
  const auto it = std::min_element(f.begin(), f.end());
  std::rotate(f.begin(), it, f.end());
  return f;
}

// succ[v][b] = c for every face corner (v, b, c) in anticlockwise order.
std::vector<std::map<int, int>> corner_successors(const CombinatorialType& t) {
  std::vector<std::map<int, int>> succ(static_cast<std::size_t>(t.N));
  for (const auto& f : t.faces)
    for (int j = 0; j < 3; ++j) succ[f[j]][f[(j + 1) % 3]] = f[(j + 2) % 3];
  return succ;
}

}  // namespace

std::vector<Edge> CombinatorialType::edges() const {
  std::set<Edge> out;
  for (const auto& f : faces)
    for (int j = 0; j < 3; ++j) {
      const int a = f[j], b = f[(j + 1) % 3];
      out.emplace(std::min(a, b), std::max(a, b));
    }
  return {out.begin(), out.end()};
}

int CombinatorialType::find_face(const Face& f) const {
  const Face key = rotate_min_first(f);
  for (std::size_t k = 0; k < faces.size(); ++k)
    if (rotate_min_first(faces[k]) == key) return static_cast<int>(k);
  return -1;
}

std::vector<std::string> validate(const CombinatorialType& t) {
  std::vector<std::string> errors;
  if (t.n < 3) errors.push_back("boundary has fewer than 3 vertices");
  if (t.N < t.n) errors.push_back("vertex count N is smaller than boundary count n");
  if (!errors.empty()) return errors;

  bool indices_ok = true;
  for (std::size_t k = 0; k < t.faces.size(); ++k) {
    const auto& f = t.faces[k];
    const bool in_range = std::all_of(f.begin(), f.end(), [&](int v) { return v >= 0 && v < t.N; });
    if (!in_range || f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) {
      errors.push_back("face " + std::to_string(k + 1) + " is not a triangle on three distinct vertices");
      indices_ok = false;
    }
  }
  if (!indices_ok) return errors;

  const int expected = expected_face_count(t.n, t.interior_count());
  if (static_cast<int>(t.faces.size()) != expected)
    errors.push_back("face count " + std::to_string(t.faces.size()) + " differs from n-2+2i = " +
                     std::to_string(expected) + " (Euler count violated, region uncovered or overfilled)");

  std::map<Edge, int> directed;
  for (const auto& f : t.faces)
    for (int j = 0; j < 3; ++j) ++directed[{f[j], f[(j + 1) % 3]}];
  for (const auto& [e, count] : directed)
    if (count > 1)
      errors.push_back("edge " + vname(e.first) + "-" + vname(e.second) +
                       " traversed twice in the same direction (inconsistent orientation)");

  auto has = [&](int a, int b) { return directed.count({a, b}) > 0; };
  for (int k = 0; k < t.n; ++k) {
    const int a = k, b = (k + 1) % t.n;
    if (!has(a, b)) errors.push_back("boundary edge " + vname(a) + "-" + vname(b) + " not covered by a face");
    if (has(b, a)) errors.push_back("boundary edge " + vname(a) + "-" + vname(b) + " covered from outside");
  }
  for (const auto& [a, b] : t.edges()) {
    const bool boundary = (b == (a + 1) % t.n && a < t.n && b < t.n) || (a == (b + 1) % t.n && a < t.n && b < t.n);
    if (boundary) continue;
    if (!has(a, b) || !has(b, a))
      errors.push_back("dangling edge " + vname(a) + "-" + vname(b) + " borders only one face");
  }

  std::vector<int> uses(static_cast<std::size_t>(t.N), 0);
  for (const auto& f : t.faces)
    for (int v : f) ++uses[v];
  for (int v = 0; v < t.N; ++v)
    if (uses[v] == 0) errors.push_back("vertex " + vname(v) + " lies in no face");

  const auto succ = corner_successors(t);
  for (int v = 0; v < t.N; ++v) {
    const auto& s = succ[v];
    if (s.empty()) continue;
    const bool boundary = v < t.n;
    int start = boundary ? (v + 1) % t.n : s.begin()->first;
    std::size_t steps = 0;
    int cur = start;
    bool ok = true;
    while (true) {
      auto it = s.find(cur);
      if (it == s.end()) {
        ok = boundary && cur == (v + t.n - 1) % t.n;
        break;
      }
      cur = it->second;
      if (++steps > s.size()) {
        ok = false;
        break;
      }
      if (!boundary && cur == start) break;
    }
    if (!ok || steps != s.size())
      errors.push_back("link of vertex " + vname(v) + (boundary ? " is not a single path" : " is not a single cycle"));
  }

  const auto e = static_cast<long>(t.edges().size());
  const long euler = t.N - e + static_cast<long>(t.faces.size()) + 1;
  if (euler != 2) errors.push_back("Euler characteristic V-E+F = " + std::to_string(euler) + ", expected 2");
  return errors;
}

std::vector<std::vector<int>> rotation_system(const CombinatorialType& t) {
  const auto succ = corner_successors(t);
  std::vector<std::vector<int>> rot(static_cast<std::size_t>(t.N));
  for (int v = 0; v < t.N; ++v) {
    const auto& s = succ[v];
    if (s.empty()) continue;
    int cur = v < t.n ? (v + 1) % t.n : s.begin()->first;
    rot[v].push_back(cur);
    while (true) {
      auto it = s.find(cur);
      if (it == s.end()) break;
      cur = it->second;
      if (cur == rot[v].front()) break;
      rot[v].push_back(cur);
    }
  }
  return rot;
}

namespace {

CombinatorialType map_boundary(const CombinatorialType& t, int shift, bool reflect) {
  CombinatorialType out = t;
  auto map = [&](int v) {
    if (v >= t.n) return v;
    return reflect ? ((shift - v) % t.n + t.n) % t.n : (v + shift) % t.n;
  };
  for (auto& f : out.faces) {
    for (int& v : f) v = map(v);
    if (reflect) std::swap(f[1], f[2]);
  }
  return out;
}

CombinatorialType bfs_relabel(const CombinatorialType& t) {
  const auto rot = rotation_system(t);
  std::vector<int> label(static_cast<std::size_t>(t.N), -1), parent(static_cast<std::size_t>(t.N), -1);
  std::deque<int> queue;
  for (int v = 0; v < t.n; ++v) {
    label[v] = v;
    queue.push_back(v);
  }
  int next = t.n;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    const auto& r = rot[v];
    const std::size_t deg = r.size();
    std::size_t s = 0;
    if (v >= t.n) s = static_cast<std::size_t>(std::find(r.begin(), r.end(), parent[v]) - r.begin());
    for (std::size_t k = 0; k < deg; ++k) {
      const int w = r[(s + k) % deg];
      if (label[w] >= 0) continue;
      label[w] = next++;
      parent[w] = v;
      queue.push_back(w);
    }
  }
  CombinatorialType out{t.n, t.N, {}};
  out.faces.reserve(t.faces.size());
  for (const auto& f : t.faces) out.faces.push_back(rotate_min_first({label[f[0]], label[f[1]], label[f[2]]}));
  std::sort(out.faces.begin(), out.faces.end());
  return out;
}

std::string serialize(const CombinatorialType& t) {
  std::ostringstream os;
  os << t.n << '|' << t.N << '|';
  for (std::size_t k = 0; k < t.faces.size(); ++k) {
    if (k) os << ';';
    os << t.faces[k][0] << ',' << t.faces[k][1] << ',' << t.faces[k][2];
  }
  return os.str();
}

}  // namespace

CombinatorialType canonical_type(const CombinatorialType& t, BoundarySymmetry symmetry) {
  if (auto errors = validate(t); !errors.empty())
    throw std::invalid_argument("canonical_form: invalid type: " + errors.front());
  std::vector<std::pair<int, bool>> maps{{0, false}};
  if (symmetry != BoundarySymmetry::none)
    for (int r = 1; r < t.n; ++r) maps.emplace_back(r, false);
  if (symmetry == BoundarySymmetry::dihedral)
    for (int r = 0; r < t.n; ++r) maps.emplace_back(r, true);

  CombinatorialType best;
  std::string best_key;
  for (const auto& [shift, reflect] : maps) {
    CombinatorialType candidate = bfs_relabel(map_boundary(t, shift, reflect));
    std::string key = serialize(candidate);
    if (best_key.empty() || key < best_key) {
      best_key = std::move(key);
      best = std::move(candidate);
    }
  }
  return best;
}

std::string canonical_form(const CombinatorialType& t, BoundarySymmetry symmetry) {
  return serialize(canonical_type(t, symmetry));
}

CombinatorialType relabel_interior(const CombinatorialType& t, std::span<const int> perm) {
  CombinatorialType out = t;
  for (auto& f : out.faces)
    for (int& v : f)
      if (v >= t.n) v = t.n + perm[static_cast<std::size_t>(v - t.n)];
  return out;
}

CombinatorialType fan(int n, int apex) {
  CombinatorialType t{n, n, {}};
  for (int j = 1; j + 1 < n; ++j) t.faces.push_back({apex % n, (apex + j) % n, (apex + j + 1) % n});
  return t;
}

CombinatorialType split_face(const CombinatorialType& t, std::size_t face) {
  CombinatorialType out = t;
  const Face f = t.faces.at(face);
  const int v = t.N;
  out.N = t.N + 1;
  out.faces[face] = {f[0], f[1], v};
  out.faces.push_back({f[1], f[2], v});
  out.faces.push_back({f[2], f[0], v});
  return out;
}

namespace {

// Faces on the left of a->b and of b->a, as (face index, opposite vertex).
std::pair<std::pair<int, int>, std::pair<int, int>> edge_faces(const CombinatorialType& t, int a, int b) {
  std::pair<int, int> left{-1, -1}, right{-1, -1};
  for (std::size_t k = 0; k < t.faces.size(); ++k) {
    const auto& f = t.faces[k];
    for (int j = 0; j < 3; ++j) {
      if (f[j] == a && f[(j + 1) % 3] == b) left = {static_cast<int>(k), f[(j + 2) % 3]};
      if (f[j] == b && f[(j + 1) % 3] == a) right = {static_cast<int>(k), f[(j + 2) % 3]};
    }
  }
  return {left, right};
}

}  // namespace

CombinatorialType flip_edge(const CombinatorialType& t, int a, int b) {
  const auto [left, right] = edge_faces(t, a, b);
  if (left.first < 0 || right.first < 0)
    throw std::invalid_argument("flip_edge: " + vname(a) + "-" + vname(b) + " is not an interior edge");
  const int c = left.second, d = right.second;
  if (c == d) throw std::invalid_argument("flip_edge: degenerate quadrilateral");
  const auto edges = t.edges();
  if (std::binary_search(edges.begin(), edges.end(), Edge{std::min(c, d), std::max(c, d)}))
    throw std::invalid_argument("flip_edge: edge " + vname(c) + "-" + vname(d) + " already exists");
  CombinatorialType out = t;
  out.faces[static_cast<std::size_t>(left.first)] = {a, d, c};
  out.faces[static_cast<std::size_t>(right.first)] = {d, b, c};
  return out;
}

std::vector<Edge> flippable_edges(const CombinatorialType& t) {
  const auto edges = t.edges();
  std::vector<Edge> out;
  for (const auto& [a, b] : edges) {
    const auto [left, right] = edge_faces(t, a, b);
    if (left.first < 0 || right.first < 0) continue;
    const int c = left.second, d = right.second;
    if (c == d) continue;
    if (std::binary_search(edges.begin(), edges.end(), Edge{std::min(c, d), std::max(c, d)})) continue;
    out.emplace_back(a, b);
  }
  return out;
}

std::vector<CombinatorialType> enumerate_types(int n, int interior, BoundarySymmetry symmetry,
                                               const EnumerationLimits& limits) {
  if (n < 3) throw std::invalid_argument("enumerate_types: n must be at least 3");
  if (interior < 0) throw std::invalid_argument("enumerate_types: negative interior count");
  if (interior > limits.max_interior)
    throw ResourceCapExceeded("enumerate_types: interior count " + std::to_string(interior) +
                              " exceeds max_interior cap " + std::to_string(limits.max_interior));

  auto close_under_flips = [&](const std::vector<CombinatorialType>& seeds) {
    std::map<std::string, CombinatorialType> classes;
    std::deque<CombinatorialType> pending;
    auto add = [&](const CombinatorialType& t) {
      CombinatorialType c = canonical_type(t, symmetry);
      std::string key = serialize(c);
      if (classes.count(key)) return;
      if (classes.size() >= limits.max_types)
        throw ResourceCapExceeded("enumerate_types: more than max_types cap " + std::to_string(limits.max_types) +
                                  " classes");
      classes.emplace(std::move(key), c);
      pending.push_back(std::move(c));
    };
    for (const auto& s : seeds) add(s);
    while (!pending.empty()) {
      const CombinatorialType t = std::move(pending.front());
      pending.pop_front();
      for (const auto& [a, b] : flippable_edges(t)) add(flip_edge(t, a, b));
    }
    std::vector<CombinatorialType> out;
    out.reserve(classes.size());
    for (auto& [key, t] : classes) out.push_back(std::move(t));
    return out;
  };

  std::vector<CombinatorialType> seeds;
  for (int apex = 0; apex < n; ++apex) seeds.push_back(fan(n, apex));
  std::vector<CombinatorialType> level = close_under_flips(seeds);
  for (int k = 0; k < interior; ++k) {
    seeds.clear();
    for (const auto& t : level)
      for (std::size_t f = 0; f < t.faces.size(); ++f) seeds.push_back(split_face(t, f));
    level = close_under_flips(seeds);
  }
  return level;
}

std::string describe_faces(const CombinatorialType& t) {
  std::ostringstream os;
  for (std::size_t k = 0; k < t.faces.size(); ++k) {
    if (k) os << ' ';
    os << '(' << t.faces[k][0] + 1 << ',' << t.faces[k][1] + 1 << ',' << t.faces[k][2] + 1 << ')';
  }
  return os.str();
}

}  // namespace eqd
