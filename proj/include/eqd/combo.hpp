#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eqd {

/// Vertex triple of a face, listed anticlockwise. Indices are 0-based;
/// vertices 0..n-1 are the polygon boundary in order.
using Face = std::array<int, 3>;
using Edge = std::pair<int, int>;

struct CombinatorialType {
  int n = 0;  // boundary vertices
  int N = 0;  // all vertices
  std::vector<Face> faces;

  int interior_count() const { return N - n; }
  /// Undirected edges as (min, max), sorted.
  std::vector<Edge> edges() const;
  /// Position of the face with this anticlockwise triple (any rotation), or -1.
  int find_face(const Face& f) const;
  bool is_boundary_vertex(int v) const { return v < n; }

  bool operator==(const CombinatorialType&) const = default;
};

/// Expected face count n - 2 + 2i.
inline int expected_face_count(int n, int interior) { return n - 2 + 2 * interior; }

/// One message per violated invariant; empty iff the type is a valid
/// triangulation of the n-gon with the boundary cycle 0..n-1.
std::vector<std::string> validate(const CombinatorialType& t);

/// Anticlockwise neighbour order around each vertex. Boundary vertex k
/// starts at k+1 and ends at k-1; interior vertices are full cycles.
/// Requires a valid type.
std::vector<std::vector<int>> rotation_system(const CombinatorialType& t);

/// Which relabelings of the boundary count as isomorphisms.
enum class BoundarySymmetry { none, rotations, dihedral };

/// Representative of the isomorphism class with interior vertices labeled by
/// a breadth-first sweep of the rotation system; faces start at their
/// smallest label and are sorted. Throws std::invalid_argument on invalid types.
CombinatorialType canonical_type(const CombinatorialType& t,
                                 BoundarySymmetry symmetry = BoundarySymmetry::none);
std::string canonical_form(const CombinatorialType& t, BoundarySymmetry symmetry = BoundarySymmetry::none);

/// Applies a permutation of the interior labels: interior vertex n+k becomes
/// n + perm[k].
CombinatorialType relabel_interior(const CombinatorialType& t, std::span<const int> perm);

/// Fan triangulation of the n-gon from the given apex.
CombinatorialType fan(int n, int apex);

/// Inserts a new interior vertex (label N) into face `face`, replacing it by three.
CombinatorialType split_face(const CombinatorialType& t, std::size_t face);

/// Flips the interior edge {a, b}; throws std::invalid_argument when it is a
/// boundary edge, absent, or the flipped edge already exists.
CombinatorialType flip_edge(const CombinatorialType& t, int a, int b);
/// Interior edges that can be flipped without creating a duplicate edge.
std::vector<Edge> flippable_edges(const CombinatorialType& t);

struct EnumerationLimits {
  int max_interior = 3;
  std::size_t max_types = 100000;
};

/// Thrown when enumeration would exceed a configured cap.
class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every combinatorial type with n boundary and `interior` interior vertices,
/// one canonical representative per class, ordered by canonical form.
std::vector<CombinatorialType> enumerate_types(int n, int interior,
                                               BoundarySymmetry symmetry = BoundarySymmetry::none,
                                               const EnumerationLimits& limits = {});

/// 1-based "(a,b,c) (d,e,f)" listing for reports.
std::string describe_faces(const CombinatorialType& t);

}  // namespace eqd
