#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace oracle {

Integer leibniz_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Integer total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Integer term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

std::pair<std::size_t, std::size_t> jacobi_sign_counts(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j).get_d();
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-24) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(at(p, q)) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2 * at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::size_t pos = 0;
  std::size_t neg = 0;
  for (std::size_t i = 0; i < n; ++i) (at(i, i) > 0 ? pos : neg)++;
  return {pos, neg};
}

namespace {

std::vector<std::vector<Rational>> rational_inverse(const IntMatrix& g) {
  const std::size_t n = g.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = g(i, j);
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (a[piv][c] == 0) ++piv;
    std::swap(a[piv], a[c]);
    const Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = a[i][n + j];
  return out;
}

Rational ratio(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational frac(const Rational& x, long m) {
  const Rational scaled = x / m;
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return x - Rational(q * m);
}

}  // namespace

std::map<Rational, std::size_t> dual_quotient_values(const IntMatrix& gram) {
  const std::size_t n = gram.rows();
  const auto inv = rational_inverse(gram);
  const long d = std::abs(leibniz_det(gram).get_si());
  std::set<std::vector<Rational>> seen;
  std::map<Rational, std::size_t> hist;
  std::vector<long> y(n, 0);
  for (;;) {
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) x[i] += inv[i][j] * y[j];
      x[i] = frac(x[i], 1);
    }
    if (seen.insert(x).second) {
      Rational q = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q += Rational(y[i]) * inv[i][j] * y[j];
      ++hist[frac(q, 2)];
    }
    std::size_t k = 0;
    while (k < n && ++y[k] == d) y[k++] = 0;
    if (k == n) break;
  }
  return hist;
}

std::map<Rational, std::size_t> form_values(const k3lat::FiniteQuadraticForm& q) {
  const auto& d = q.invariant_factors();
  std::map<Rational, std::size_t> hist;
  std::vector<Integer> x(d.size(), 0);
  for (;;) {
    ++hist[q.q(x)];
    std::size_t k = 0;
    while (k < d.size() && ++x[k] == d[k]) x[k++] = 0;
    if (k == d.size()) break;
  }
  return hist;
}

std::map<Rational, Integer> brieskorn_pham_series(const std::vector<long>& a) {
  std::map<Rational, Integer> series{{Rational(0), Integer(1)}};
  for (const long ai : a) {
    std::map<Rational, Integer> next;
    for (const auto& [e, c] : series)
      for (long b = 1; b <= ai - 1; ++b) next[e + ratio(b, ai)] += c;
    series = std::move(next);
  }
  return series;
}

long brieskorn_pham_c2(const std::vector<long>& a) {
  long count = 0;
  std::vector<long> b(a.size(), 0);
  for (;;) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += ratio(b[i], a[i]);
    if (s == 1) ++count;
    std::size_t k = 0;
    while (k < a.size() && ++b[k] > a[k] - 2) b[k++] = 0;
    if (k == a.size()) break;
  }
  return count;
}

std::size_t points_on_segment(const std::vector<k3lat::Point4>& points, const k3lat::Point4& u,
                              const k3lat::Point4& v) {
  std::size_t count = 0;
  for (const auto& p : points) {
    // p = u + t (v - u) with 0 <= t <= 1, tested coordinatewise by cross ratios
    bool on = true;
    bool have_t = false;
    long num = 0;
    long den = 1;
    for (int i = 0; i < 4 && on; ++i) {
      const long dv = v[i] - u[i];
      const long dp = p[i] - u[i];
      if (dv == 0) {
        on = dp == 0;
      } else if (!have_t) {
        num = dp;
        den = dv;
        have_t = true;
      } else if (num * dv != dp * den) {
        on = false;
      }
    }
    if (!on || !have_t) continue;
    const Rational t = ratio(num, den);
    if (t >= 0 && t <= 1) ++count;
  }
  return count;
}

}  // namespace oracle
