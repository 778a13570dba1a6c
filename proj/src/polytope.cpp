#include "k3lat/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace k3lat {

std::vector<Point4> enumerate_points(const std::array<long, 4>& q, long n) {
  for (long x : q)
    if (x < 1) throw Error(ErrorCode::DataFormatError, "integral weights must be positive");
  if (n < 0) throw Error(ErrorCode::EmptySupport, "negative degree");
  std::vector<Point4> out;
  for (long a = 0; a * q[0] <= n; ++a)
    for (long b = 0; a * q[0] + b * q[1] <= n; ++b)
      for (long c = 0; a * q[0] + b * q[1] + c * q[2] <= n; ++c) {
        const long rest = n - a * q[0] - b * q[1] - c * q[2];
        if (rest % q[3] == 0) out.push_back({a, b, c, rest / q[3]});
      }
  if (out.empty()) throw Error(ErrorCode::EmptySupport, "no monomials of degree " + std::to_string(n));
  return out;
}

std::vector<Point4> enumerate_points(const WeightSystem& w) { return enumerate_points(w.integral(), w.level()); }

namespace {

using Vec3 = std::array<long, 3>;

Vec3 project(const Point4& p) { return {p[0], p[1], p[2]}; }
Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
long dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

bool is_zero(const Vec3& v) { return v[0] == 0 && v[1] == 0 && v[2] == 0; }

Vec3 primitive(Vec3 v) {
  const long g = std::gcd(std::gcd(std::abs(v[0]), std::abs(v[1])), std::abs(v[2]));
  for (auto& x : v) x /= g;
  return v;
}

std::size_t rank3(const std::vector<Vec3>& rows) {
  // rank of up to a handful of integer 3-vectors via cross/dot products
  std::vector<Vec3> nz;
  for (const auto& r : rows)
    if (!is_zero(r)) nz.push_back(r);
  if (nz.empty()) return 0;
  bool two = false;
  for (std::size_t i = 0; i < nz.size(); ++i)
    for (std::size_t j = i + 1; j < nz.size(); ++j) {
      const Vec3 c = cross(nz[i], nz[j]);
      if (is_zero(c)) continue;
      two = true;
      for (std::size_t k = 0; k < nz.size(); ++k)
        if (dot(c, nz[k]) != 0) return 3;
    }
  return two ? 2 : 1;
}

}  // namespace

bool NewtonPolytope::contains(const Point4& p) const {
  const Vec3 x = project(p);
  return std::all_of(facets.begin(), facets.end(), [&](const Facet& f) { return dot(f.normal, x) <= f.offset; });
}

NewtonPolytope convex_hull(const std::vector<Point4>& input) {
  NewtonPolytope out;
  out.points = input;
  std::sort(out.points.begin(), out.points.end());
  out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
  const std::size_t n = out.points.size();
  if (n == 0) throw Error(ErrorCode::EmptySupport, "no points");

  std::vector<Vec3> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = project(out.points[i]);

  std::vector<Vec3> diffs;
  for (std::size_t i = 1; i < n; ++i) diffs.push_back(sub(p[i], p[0]));
  if (rank3(diffs) < 3) throw Error(ErrorCode::DegenerateDimension, "points do not span a 3-dimensional polytope");

  // every supporting plane through three non-collinear points, deduplicated
  std::set<std::pair<Vec3, long>> planes;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec3 nrm = cross(sub(p[j], p[i]), sub(p[k], p[i]));
        if (is_zero(nrm)) continue;
        nrm = primitive(nrm);
        const long c = dot(nrm, p[i]);
        bool above = false;
        bool below = false;
        for (std::size_t m = 0; m < n && !(above && below); ++m) {
          const long s = dot(nrm, p[m]);
          above |= s > c;
          below |= s < c;
        }
        if (above && below) continue;
        if (above) planes.insert({{-nrm[0], -nrm[1], -nrm[2]}, -c});
        else planes.insert({nrm, c});
      }
  for (const auto& [nrm, c] : planes) out.facets.push_back({nrm, c});

  // incidence of points with facets
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t f = 0; f < out.facets.size(); ++f)
    for (std::size_t i = 0; i < n; ++i)
      if (dot(out.facets[f].normal, p[i]) == out.facets[f].offset) incident[i].push_back(f);

  std::vector<std::size_t> vertex_index;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vec3> normals;
    for (auto f : incident[i]) normals.push_back(out.facets[f].normal);
    if (rank3(normals) == 3) {
      vertex_index.push_back(i);
      out.vertices.push_back(out.points[i]);
    }
  }

  for (std::size_t a = 0; a < vertex_index.size(); ++a)
    for (std::size_t b = a + 1; b < vertex_index.size(); ++b) {
      const auto& fa = incident[vertex_index[a]];
      const auto& fb = incident[vertex_index[b]];
      std::vector<std::size_t> common;
      std::set_intersection(fa.begin(), fa.end(), fb.begin(), fb.end(), std::back_inserter(common));
      if (common.size() >= 2) out.edges.emplace_back(a, b);
    }
  return out;
}

long edge_lattice_count(const NewtonPolytope& poly) {
  long count = static_cast<long>(poly.vertices.size());
  for (auto [a, b] : poly.edges) {
    long g = 0;
    for (std::size_t i = 0; i < 4; ++i) g = std::gcd(g, std::abs(poly.vertices[a][i] - poly.vertices[b][i]));
    count += g - 1;
  }
  return count;
}

}  // namespace k3lat
