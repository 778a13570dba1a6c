#include "k3lat/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>

namespace k3lat {

GramLattice::GramLattice(IntMatrix gram, std::vector<std::string> labels)
    : gram_(std::move(gram)), labels_(std::move(labels)) {
  if (!gram_.is_square()) throw Error(ErrorCode::DimensionMismatch, "Gram matrix must be square");
  if (!labels_.empty() && labels_.size() != gram_.rows())
    throw Error(ErrorCode::DimensionMismatch, "one label per basis vector");
  if (!gram_.is_symmetric()) throw Error(ErrorCode::NotSymmetric, "Gram matrix is not symmetric");
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    if (gram_(i, i) % 2 != 0)
      throw Error(ErrorCode::OddDiagonal, "diagonal entry " + gram_(i, i).get_str() + " is odd");
  if (gram_.rows() > 0 && det(gram_) == 0) throw Error(ErrorCode::DegenerateMatrix, "Gram matrix is singular");
}

Integer GramLattice::product(const std::vector<Integer>& x, const std::vector<Integer>& y) const {
  if (x.size() != rank() || y.size() != rank())
    throw Error(ErrorCode::DimensionMismatch, "vector length differs from lattice rank");
  Integer s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j) s += x[i] * gram_(i, j) * y[j];
  }
  return s;
}

namespace {

GramLattice from_graph(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) g(i, i) = -2;
  for (auto [a, b] : edges) {
    g(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1)) = 1;
    g(static_cast<std::size_t>(b - 1), static_cast<std::size_t>(a - 1)) = 1;
  }
  return GramLattice(std::move(g));
}

std::vector<std::pair<int, int>> chain(int from, int to) {
  std::vector<std::pair<int, int>> e;
  for (int i = from; i < to; ++i) e.emplace_back(i, i + 1);
  return e;
}

}  // namespace

GramLattice root_lattice(RootFamily family, int n) {
  switch (family) {
    case RootFamily::A:
      if (n < 1) throw Error(ErrorCode::BadRank, "A_n needs n >= 1");
      return from_graph(static_cast<std::size_t>(n), chain(1, n));
    case RootFamily::D: {
      if (n < 4) throw Error(ErrorCode::BadRank, "D_n needs n >= 4");
      auto e = chain(1, n - 1);
      e.emplace_back(n - 2, n);
      return from_graph(static_cast<std::size_t>(n), e);
    }
    case RootFamily::E: {
      if (n < 6 || n > 8) throw Error(ErrorCode::BadRank, "E_n needs n in {6, 7, 8}");
      std::vector<std::pair<int, int>> e;
      for (auto [a, b] : bourbaki_labeling().edges)
        if (a <= n && b <= n) e.emplace_back(a, b);
      return from_graph(static_cast<std::size_t>(n), e);
    }
  }
  throw Error(ErrorCode::BadRank, "unknown root family");
}

GramLattice hyperbolic_U(const Integer& k) {
  if (k < 1) throw Error(ErrorCode::BadRank, "U(k) needs k >= 1");
  IntMatrix g(2, 2);
  g(0, 1) = k;
  g(1, 0) = k;
  return GramLattice(std::move(g));
}

GramLattice rank_one(const Integer& k) {
  if (k == 0) throw Error(ErrorCode::DegenerateMatrix, "<0> is degenerate");
  if (k % 2 != 0) throw Error(ErrorCode::OddDiagonal, "<" + k.get_str() + "> is not even");
  IntMatrix g(1, 1);
  g(0, 0) = k;
  return GramLattice(std::move(g));
}

GramLattice direct_sum(const GramLattice& a, const GramLattice& b) {
  std::vector<std::string> labels;
  if (!a.basis_labels().empty() && !b.basis_labels().empty()) {
    labels = a.basis_labels();
    labels.insert(labels.end(), b.basis_labels().begin(), b.basis_labels().end());
  }
  return GramLattice(block_sum(a.gram(), b.gram()), std::move(labels));
}

GramLattice twist(const GramLattice& l, const Integer& k) {
  if (k < 1) throw Error(ErrorCode::BadRank, "twist needs k >= 1");
  IntMatrix g = l.gram();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= k;
  return GramLattice(std::move(g), l.basis_labels());
}

GramLattice tshape(int p, int q, int r) {
  if (p < 2 || q < 2 || r < 2) throw Error(ErrorCode::BadRank, "T(p,q,r) needs p, q, r >= 2");
  // node 1 is the centre; each arm hangs off it
  std::vector<std::pair<int, int>> e;
  int next = 2;
  for (int arm : {p, q, r}) {
    int prev = 1;
    for (int i = 0; i < arm - 1; ++i) {
      e.emplace_back(prev, next);
      prev = next++;
    }
  }
  return from_graph(static_cast<std::size_t>(next - 1), e);
}

// --- E8 labelings and ambient spaces ------------------------------------------------------

const std::vector<E8Labeling>& standard_labelings() {
  static const std::vector<E8Labeling> all = [] {
    std::vector<E8Labeling> v;
    v.push_back({"bourbaki", {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}}});
    auto c = chain(2, 8);
    c.emplace_back(1, 4);
    v.push_back({"e1-branch", c});
    c = chain(1, 7);
    c.emplace_back(5, 8);
    v.push_back({"e8-branch", c});
    return v;
  }();
  return all;
}

const E8Labeling& bourbaki_labeling() { return standard_labelings().front(); }

const E8Labeling& labeling_by_name(std::string_view name) {
  for (const auto& l : standard_labelings())
    if (l.name == name) return l;
  throw Error(ErrorCode::DataFormatError, "unknown E8 labeling '" + std::string(name) + "'");
}

GramLattice e8_with_labeling(const E8Labeling& labeling) { return from_graph(8, labeling.edges); }

IntMatrix AmbientSpace::gram() const {
  if (u_count < 0 || e8_count < 0) throw Error(ErrorCode::BadRank, "negative summand count");
  IntMatrix g;
  const IntMatrix u = hyperbolic_U(1).gram();
  const IntMatrix e8 = e8_with_labeling(labeling).gram();
  for (int i = 0; i < u_count; ++i) g = block_sum(g, u);
  for (int i = 0; i < e8_count; ++i) g = block_sum(g, e8);
  return g;
}

GramLattice sublattice(const AmbientSpace& ambient, const std::vector<std::vector<Integer>>& generators) {
  const std::size_t n = ambient.dimension();
  if (generators.empty()) throw Error(ErrorCode::DependentGenerators, "no generators");
  for (const auto& v : generators)
    if (v.size() != n)
      throw Error(ErrorCode::DimensionMismatch,
                  "generator has " + std::to_string(v.size()) + " coordinates, ambient has " + std::to_string(n));
  const IntMatrix b = IntMatrix::from_rows(generators);
  if (rank(b) < generators.size()) throw Error(ErrorCode::DependentGenerators, "generators are linearly dependent");
  IntMatrix g = b * ambient.gram() * b.transpose();
  if (det(g) == 0) throw Error(ErrorCode::DegenerateGram, "sublattice Gram matrix is singular");
  return GramLattice(std::move(g));
}

LatticeInvariants invariants(const GramLattice& l) {
  LatticeInvariants inv;
  inv.rank = l.rank();
  if (l.rank() == 0) {
    inv.det = 1;
    inv.delta = 1;
    return inv;
  }
  inv.signature = inertia(l.gram());
  inv.det = det(l.gram());
  inv.delta = inv.det;
  return inv;
}

FiniteQuadraticForm discriminant_form(const GramLattice& l) {
  if (l.rank() == 0) return {};
  return FiniteQuadraticForm::from_presentation(l.gram(), inverse(to_rational(l.gram())));
}

// --- isotropy -----------------------------------------------------------------------------

std::string_view to_string(IsotropyResult::Verdict v) {
  switch (v) {
    case IsotropyResult::Verdict::Isotropic: return "Isotropic";
    case IsotropyResult::Verdict::Anisotropic: return "Anisotropic";
    case IsotropyResult::Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

bool is_square(const Integer& n, Integer& root) {
  if (n < 0) return false;
  root = sqrt(n);
  return root * root == n;
}

std::vector<Integer> normalized(std::vector<Integer> v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g != 0)
    for (auto& x : v) x /= g;
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

/// Searches primitive vectors by growing sup-norm, then support size, then position,
/// with the first nonzero coordinate positive. Stops after `budget` evaluations.
std::optional<std::vector<Integer>> search_isotropic(const GramLattice& l, long bound, std::uint64_t budget,
                                                    bool& exhausted) {
  const std::size_t n = l.rank();
  std::vector<std::int64_t> g(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!l.gram()(i, j).fits_slong_p()) throw Error(ErrorCode::CapExceeded, "Gram entries too large for search");
      g[i * n + j] = l.gram()(i, j).get_si();
    }

  std::uint64_t evaluations = 0;
  exhausted = true;
  std::vector<std::size_t> support;
  std::vector<std::int64_t> values;
  std::optional<std::vector<Integer>> found;

  auto norm = [&]() {
    __int128 s = 0;
    for (std::size_t a = 0; a < support.size(); ++a)
      for (std::size_t b = 0; b < support.size(); ++b)
        s += static_cast<__int128>(values[a]) * values[b] * g[support[a] * n + support[b]];
    return s;
  };

  for (long r = 1; r <= bound && !found; ++r) {
    for (std::size_t s = 1; s <= n && !found; ++s) {
      // positions: combinations of s out of n
      std::vector<std::size_t> pos(s);
      std::iota(pos.begin(), pos.end(), 0);
      for (;;) {
        support = pos;
        values.assign(s, 0);
        // odometer over nonzero values in [-r, r], first value positive
        std::function<bool(std::size_t, bool)> rec = [&](std::size_t i, bool hit_r) -> bool {
          if (i == s) {
            if (!hit_r) return false;
            std::int64_t gg = 0;
            for (auto v : values) gg = std::gcd(gg, v);
            if (gg != 1) return false;
            if (++evaluations > budget) {
              exhausted = false;
              return true;
            }
            if (norm() == 0) {
              std::vector<Integer> w(n, 0);
              for (std::size_t a = 0; a < s; ++a) w[support[a]] = static_cast<long>(values[a]);
              found = w;
              return true;
            }
            return false;
          }
          // magnitudes ascending, positive before negative
          for (long m = 1; m <= r; ++m)
            for (long v : {m, -m}) {
              if (i == 0 && v < 0) continue;
              values[i] = v;
              if (rec(i + 1, hit_r || m == r)) return true;
            }
          return false;
        };
        if (rec(0, false)) break;
        // next combination
        std::size_t k = s;
        while (k > 0 && pos[k - 1] == n - s + k - 1) --k;
        if (k == 0) break;
        ++pos[k - 1];
        for (std::size_t j = k; j < s; ++j) pos[j] = pos[j - 1] + 1;
      }
      if (!exhausted) return std::nullopt;
    }
  }
  return found;
}

}  // namespace

IsotropyResult find_isotropic(const GramLattice& l, long bound) {
  if (bound < 1) throw Error(ErrorCode::DataFormatError, "isotropy bound must be positive");
  IsotropyResult out;
  out.bound = bound;
  const std::size_t n = l.rank();
  const Inertia in = n == 0 ? Inertia{} : inertia(l.gram());
  if (in.positive == 0 || in.negative == 0) {
    out.verdict = IsotropyResult::Verdict::Anisotropic;
    out.certificate = "definite";
    return out;
  }

  if (n == 2) {
    const Integer& a = l.gram()(0, 0);
    const Integer& b = l.gram()(0, 1);
    const Integer& c = l.gram()(1, 1);
    Integer s;
    out.certificate = "binary-discriminant";
    if (!is_square(b * b - a * c, s)) {
      out.verdict = IsotropyResult::Verdict::Anisotropic;
      return out;
    }
    out.verdict = IsotropyResult::Verdict::Isotropic;
    if (a == 0)
      out.witness = std::vector<Integer>{1, 0};
    else
      out.witness = normalized({-b + s, a});
    return out;
  }

  bool exhausted = true;
  if (n >= 5) {
    out.verdict = IsotropyResult::Verdict::Isotropic;
    out.certificate = "theorem-rank>=5";
    out.witness = search_isotropic(l, bound, 2'000'000, exhausted);
    return out;
  }

  out.certificate = "search";
  out.witness = search_isotropic(l, bound, UINT64_MAX, exhausted);
  out.verdict = out.witness ? IsotropyResult::Verdict::Isotropic : IsotropyResult::Verdict::Unknown;
  return out;
}

}  // namespace k3lat
