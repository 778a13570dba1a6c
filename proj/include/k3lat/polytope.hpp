#pragma once

// Newton polytope of the degree-N monomials in four weighted variables.

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "k3lat/singularity.hpp"

namespace k3lat {

using Point4 = std::array<long, 4>;

/// All a in Z^4, a >= 0, with sum q_i a_i = n, in lexicographic order.
/// Throws EmptySupport when there are none.
std::vector<Point4> enumerate_points(const std::array<long, 4>& q, long n);
std::vector<Point4> enumerate_points(const WeightSystem& w);

/// Supporting plane normal . (a1, a2, a3) <= offset of the projected hull.
struct Facet {
  std::array<long, 3> normal{};
  long offset = 0;
  friend bool operator==(const Facet&, const Facet&) = default;
};

struct NewtonPolytope {
  std::vector<Point4> points;
  std::vector<Point4> vertices;
  /// Index pairs into vertices, i < j, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<Facet> facets;

  bool contains(const Point4& p) const;
};

/// Exact hull after projecting to the first three coordinates (injective on the
/// degree hyperplane). Throws DegenerateDimension below affine dimension 3.
NewtonPolytope convex_hull(const std::vector<Point4>& points);

/// Lattice points on the union of the edges: sum of (gcd - 1) over edges plus the vertex count.
long edge_lattice_count(const NewtonPolytope& p);

}  // namespace k3lat
