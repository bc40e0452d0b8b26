// Independent reference computations shared by the unit and acceptance tests.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "eqd/combo.hpp"
#include "eqd/geom.hpp"

namespace oracles {

using eqd::Complex;
using eqd::Edge;
using eqd::Face;

inline Complex shoelace(const std::vector<eqd::AffinePoint>& pts) {
  Complex s = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto& a = pts[k];
    const auto& b = pts[(k + 1) % pts.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

// Brute-force reference: every set of T vertex triples that, once oriented
// from the boundary inwards, forms a triangulated disk with the right
// boundary cycle. Classes are merged by trying every interior relabeling.
struct TypeOracle {
  int n, interior, N, T;
  std::vector<Face> triples;

  TypeOracle(int n_, int i_) : n(n_), interior(i_), N(n_ + i_), T(n_ - 2 + 2 * i_) {
    for (int a = 0; a < N; ++a)
      for (int b = a + 1; b < N; ++b)
        for (int c = b + 1; c < N; ++c) triples.push_back({a, b, c});
  }

  static bool is_boundary_edge(int n, int a, int b) {
    return (a < n && b < n) && ((b - a + n) % n == 1 || (a - b + n) % n == 1);
  }

  // Orients the chosen triples; empty result when no consistent disk exists.
  std::vector<Face> orient(const std::vector<Face>& chosen) const {
    std::map<Edge, std::vector<std::size_t>> by_edge;
    for (std::size_t f = 0; f < chosen.size(); ++f)
      for (int j = 0; j < 3; ++j) {
        int a = chosen[f][j], b = chosen[f][(j + 1) % 3];
        by_edge[{std::min(a, b), std::max(a, b)}].push_back(f);
      }
    for (int k = 0; k < n; ++k) {
      const int a = k, b = (k + 1) % n;
      auto it = by_edge.find({std::min(a, b), std::max(a, b)});
      if (it == by_edge.end() || it->second.size() != 1) return {};
    }
    for (const auto& [e, fs] : by_edge) {
      if (is_boundary_edge(n, e.first, e.second)) continue;
      if (fs.size() != 2) return {};
    }

    std::vector<int> sign(chosen.size(), 0);  // +1 keeps the sorted triple, -1 reverses it
    auto directed = [&](std::size_t f, int s) {
      Face x = chosen[f];
      if (s < 0) std::swap(x[1], x[2]);
      return x;
    };
    auto has_directed = [](const Face& x, int a, int b) {
      for (int j = 0; j < 3; ++j)
        if (x[j] == a && x[(j + 1) % 3] == b) return true;
      return false;
    };
    std::vector<std::size_t> stack;
    for (int k = 0; k < n; ++k) {
      const int a = k, b = (k + 1) % n;
      const std::size_t f = by_edge[{std::min(a, b), std::max(a, b)}][0];
      const int s = has_directed(directed(f, 1), a, b) ? 1 : -1;
      if (sign[f] == -s) return {};
      if (sign[f] == 0) {
        sign[f] = s;
        stack.push_back(f);
      }
    }
    while (!stack.empty()) {
      const std::size_t f = stack.back();
      stack.pop_back();
      const Face x = directed(f, sign[f]);
      for (int j = 0; j < 3; ++j) {
        const int a = x[j], b = x[(j + 1) % 3];
        for (std::size_t g : by_edge[{std::min(a, b), std::max(a, b)}]) {
          if (g == f) continue;
          const int s = has_directed(directed(g, 1), b, a) ? 1 : -1;
          if (sign[g] == -s) return {};
          if (sign[g] == 0) {
            sign[g] = s;
            stack.push_back(g);
          }
        }
      }
    }
    std::vector<Face> out;
    for (std::size_t f = 0; f < chosen.size(); ++f) {
      if (sign[f] == 0) return {};
      out.push_back(directed(f, sign[f]));
    }
    // Every vertex used and each link connected.
    for (int v = 0; v < N; ++v) {
      std::map<int, int> succ;
      for (const auto& x : out)
        for (int j = 0; j < 3; ++j)
          if (x[j] == v) succ[x[(j + 1) % 3]] = x[(j + 2) % 3];
      if (succ.empty()) return {};
      int start = v < n ? (v + 1) % n : succ.begin()->first;
      std::size_t seen = 0;
      int w = start;
      while (succ.count(w) && seen <= succ.size()) {
        w = succ[w];
        ++seen;
        if (w == start) break;
      }
      if (seen != succ.size()) return {};
      if (v < n && w != (v - 1 + n) % n) return {};
    }
    const std::set<Edge> edges = [&] {
      std::set<Edge> s;
      for (const auto& [e, fs] : by_edge) s.insert(e);
      return s;
    }();
    if (N - static_cast<int>(edges.size()) + T != 1) return {};
    return out;
  }

  std::string key(const std::vector<Face>& faces) const {
    std::vector<int> perm(static_cast<std::size_t>(interior));
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
      std::vector<Face> mapped;
      for (const auto& x : faces) {
        Face y;
        for (int j = 0; j < 3; ++j) y[j] = x[j] < n ? x[j] : n + perm[static_cast<std::size_t>(x[j] - n)];
        std::rotate(y.begin(), std::min_element(y.begin(), y.end()), y.end());
        mapped.push_back(y);
      }
      std::sort(mapped.begin(), mapped.end());
      std::string s;
      for (const auto& y : mapped) s += std::to_string(y[0]) + "," + std::to_string(y[1]) + "," + std::to_string(y[2]) + ";";
      if (best.empty() || s < best) best = s;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }

  std::set<std::string> classes() const {
    std::set<std::string> out;
    std::vector<int> pick(triples.size(), 0);
    std::fill(pick.begin(), pick.begin() + T, 1);
    std::sort(pick.begin(), pick.end(), std::greater<>());
    do {
      std::vector<Face> chosen;
      for (std::size_t k = 0; k < triples.size(); ++k)
        if (pick[k]) chosen.push_back(triples[k]);
      auto oriented = orient(chosen);
      if (!oriented.empty()) out.insert(key(oriented));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
  }
};

}  // namespace oracles
