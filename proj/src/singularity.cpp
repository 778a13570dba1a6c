#include "k3lat/singularity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>

namespace k3lat {

// --- weight systems ---------------------------------------------------------------------

WeightSystem::WeightSystem(const std::array<Rational, 4>& weights) : w_(weights) {
  Integer n = 1;
  for (auto& w : w_) {
    w.canonicalize();
    if (w <= 0 || w >= 1) throw Error(ErrorCode::DataFormatError, "weight " + k3lat::to_string(w) + " not in (0, 1)");
    n = lcm(n, w.get_den());
  }
  if (!n.fits_slong_p()) throw Error(ErrorCode::DataFormatError, "weight level too large");
  level_ = n.get_si();
  for (std::size_t i = 0; i < 4; ++i) q_[i] = Rational(w_[i] * Rational(n)).get_num().get_si();
}

namespace {

long parse_long(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  const std::size_t start = pos;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
  const std::size_t digits = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == digits) throw ParseError(start, "expected an integer");
  if (pos - start > 18) throw ParseError(start, "integer too long");
  const long v = std::stol(std::string(text.substr(start, pos - start)));
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  return v;
}

}  // namespace

WeightSystem WeightSystem::parse(std::string_view text) {
  std::size_t pos = 0;
  std::vector<Rational> values;
  std::vector<long> ints;
  bool integral = false;
  for (;;) {
    const long a = parse_long(text, pos);
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      const long b = parse_long(text, pos);
      values.push_back(make_rational(a, b));
    } else {
      ints.push_back(a);
      integral = true;
    }
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    break;
  }
  if (integral) {
    if (!values.empty()) throw ParseError(0, "mixed rational and integral weights");
    if (pos >= text.size() || text[pos] != '@') throw ParseError(pos, "integral weights need '@N'");
    ++pos;
    const long n = parse_long(text, pos);
    if (n <= 0) throw Error(ErrorCode::DataFormatError, "level must be positive");
    for (long q : ints) values.push_back(make_rational(q, n));
  }
  if (pos != text.size()) throw ParseError(pos, "unexpected trailing input in weight system");
  if (values.size() != 4) throw ParseError(0, "expected four weights, got " + std::to_string(values.size()));
  return WeightSystem({values[0], values[1], values[2], values[3]});
}

long WeightSystem::degree_sum() const { return std::accumulate(q_.begin(), q_.end(), 0L); }

WeightSystem::WellFormedness WeightSystem::well_formedness() const {
  WellFormedness wf;
  wf.gcd_all = std::gcd(std::gcd(q_[0], q_[1]), std::gcd(q_[2], q_[3])) == 1;
  wf.gcd_triples = true;
  for (std::size_t skip = 0; skip < 4; ++skip) {
    long g = 0;
    for (std::size_t i = 0; i < 4; ++i)
      if (i != skip) g = std::gcd(g, q_[i]);
    if (g != 1) wf.gcd_triples = false;
  }
  wf.sorted = std::is_sorted(q_.begin(), q_.end());
  return wf;
}

std::string WeightSystem::to_string() const {
  std::string out;
  for (const auto& w : w_) {
    if (!out.empty()) out += ",";
    out += k3lat::to_string(w);
  }
  return out;
}

// --- Puiseux polynomials ------------------------------------------------------------------

void PuiseuxPolynomial::add(long numerator, const Integer& c) {
  if (c == 0) return;
  Integer& slot = c_[numerator];
  slot += c;
  if (slot == 0) c_.erase(numerator);
}

Integer PuiseuxPolynomial::coefficient(const Rational& exponent) const {
  const Rational scaled = exponent * Rational(level_);
  if (scaled.get_den() != 1) return 0;
  const auto it = c_.find(scaled.get_num().get_si());
  return it == c_.end() ? Integer(0) : it->second;
}

Integer PuiseuxPolynomial::total() const {
  Integer s = 0;
  for (const auto& [e, c] : c_) s += c;
  return s;
}

Rational PuiseuxPolynomial::min_exponent() const {
  if (c_.empty()) return 0;
  return make_rational(c_.begin()->first, level_);
}

Rational PuiseuxPolynomial::max_exponent() const {
  if (c_.empty()) return 0;
  return make_rational(c_.rbegin()->first, level_);
}

bool PuiseuxPolynomial::is_symmetric(const Rational& s) const {
  for (const auto& [e, c] : c_)
    if (coefficient(s - make_rational(e, level_)) != c) return false;
  return true;
}

std::vector<std::pair<Rational, Integer>> PuiseuxPolynomial::terms() const {
  std::vector<std::pair<Rational, Integer>> out;
  for (const auto& [e, c] : c_) out.emplace_back(make_rational(e, level_), c);
  return out;
}

std::string PuiseuxPolynomial::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (const auto& [alpha, c] : terms()) {
    std::string term;
    const Integer mag = abs(c);
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    if (alpha == 0) {
      term = mag.get_str();
    } else {
      if (mag != 1) term = mag.get_str() + " ";
      term += "t";
      if (alpha != 1) term += "^" + (alpha.get_den() == 1 ? alpha.get_str() : "(" + alpha.get_str() + ")");
    }
    out += term;
  }
  return out;
}

// --- Poincare series -----------------------------------------------------------------------

namespace {

using Poly = std::vector<Integer>;  // increasing degree

Poly multiply(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Exact division by a polynomial whose leading coefficient is +-1; throws on a remainder.
Poly divide_exact(Poly num, Poly den) {
  trim(num);
  trim(den);
  if (den.empty()) throw Error(ErrorCode::InexactDivision, "division by zero polynomial");
  const Integer lead = den.back();
  if (abs(lead) != 1) throw Error(ErrorCode::InexactDivision, "divisor is not monic");
  if (num.size() < den.size()) {
    if (!num.empty()) throw Error(ErrorCode::InexactDivision, "nonzero remainder");
    return {};
  }
  Poly q(num.size() - den.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Integer c = num[k + den.size() - 1] * lead;  // lead = +-1 is its own inverse
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
  }
  for (const auto& r : num)
    if (r != 0) throw Error(ErrorCode::InexactDivision, "nonzero remainder");
  return q;
}

}  // namespace

PuiseuxPolynomial poincare_series(const WeightSystem& w) {
  const long n = w.level();
  // s = t^(1/N); numerator prod (s^q - s^N), denominator prod (1 - s^q)
  Poly num{1};
  for (long q : w.integral()) {
    Poly f(static_cast<std::size_t>(std::max(q, n)) + 1, 0);
    f[static_cast<std::size_t>(q)] += 1;
    f[static_cast<std::size_t>(n)] -= 1;
    num = multiply(num, f);
  }
  for (long q : w.integral()) {
    Poly d(static_cast<std::size_t>(q) + 1, 0);
    d[0] = 1;
    d[static_cast<std::size_t>(q)] = -1;
    num = divide_exact(num, d);
  }
  PuiseuxPolynomial out(n);
  for (std::size_t e = 0; e < num.size(); ++e) out.add(static_cast<long>(e), num[e]);
  return out;
}

Integer milnor_number(const WeightSystem& w) {
  Rational mu = 1;
  for (const auto& x : w.weights()) mu *= Rational(1) / x - 1;
  mu.canonicalize();
  if (mu.get_den() != 1) throw Error(ErrorCode::NonIntegralMu, "Milnor number " + to_string(mu) + " is not an integer");
  return mu.get_num();
}

// --- real Seifert form ----------------------------------------------------------------------

std::string_view to_string(SeifertBlock::Kind kind) {
  switch (kind) {
    case SeifertBlock::Kind::Rotation: return "Rotation";
    case SeifertBlock::Kind::PlusOne: return "PlusOne";
    case SeifertBlock::Kind::MinusOne: return "MinusOne";
  }
  return "Rotation";
}

std::size_t SeifertBlockForm::rank() const {
  std::size_t r = 0;
  for (const auto& b : blocks)
    r += (b.kind == SeifertBlock::Kind::Rotation ? 2 : 1) * b.multiplicity.get_ui();
  return r;
}

int SeifertBlockForm::det() const {
  int d = 1;
  for (const auto& b : blocks)
    if (b.kind == SeifertBlock::Kind::MinusOne && b.multiplicity % 2 != 0) d = -d;
  return d;
}

std::vector<double> SeifertBlockForm::dense() const {
  const std::size_t r = rank();
  std::vector<double> m(r * r, 0.0);
  std::size_t at = 0;
  for (const auto& b : blocks) {
    const double angle = std::numbers::pi * b.alpha.get_d();
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    for (unsigned long i = 0; i < b.multiplicity.get_ui(); ++i) {
      switch (b.kind) {
        case SeifertBlock::Kind::PlusOne: m[at * r + at] = 1; ++at; break;
        case SeifertBlock::Kind::MinusOne: m[at * r + at] = -1; ++at; break;
        case SeifertBlock::Kind::Rotation:
          if (n % 2 != 0) {
            m[at * r + at] = c;
            m[at * r + at + 1] = -s;
            m[(at + 1) * r + at] = s;
            m[(at + 1) * r + at + 1] = c;
          } else {
            m[at * r + at] = s;
            m[at * r + at + 1] = c;
            m[(at + 1) * r + at] = -c;
            m[(at + 1) * r + at + 1] = s;
          }
          at += 2;
          break;
      }
    }
  }
  return m;
}

SeifertBlockForm real_seifert(const PuiseuxPolynomial& series, int n) {
  SeifertBlockForm out;
  out.n = n;
  const Rational middle = make_rational(n + 1, 2);
  for (const auto& [alpha, c] : series.terms()) {
    if (alpha > middle) break;
    SeifertBlock b{alpha, c, SeifertBlock::Kind::Rotation};
    if (alpha == middle) {
      const int r = ((n % 4) + 4) % 4;
      const bool plus = n % 2 != 0 ? r == 3 : r == 0;
      b.kind = plus ? SeifertBlock::Kind::PlusOne : SeifertBlock::Kind::MinusOne;
    }
    out.blocks.push_back(std::move(b));
  }
  return out;
}

SeifertBlockForm real_seifert(const WeightSystem& w, int n) { return real_seifert(poincare_series(w), n); }

EigenDims eigen_dims(const SeifertBlockForm& s) {
  EigenDims d;
  for (const auto& b : s.blocks) {
    const std::size_t m = b.multiplicity.get_ui();
    switch (b.kind) {
      case SeifertBlock::Kind::PlusOne: d.plus_one += m; break;
      case SeifertBlock::Kind::MinusOne: d.minus_one += m; break;
      case SeifertBlock::Kind::Rotation: {
        // angle class of alpha modulo 2
        const Rational r = mod_positive(b.alpha, 2);
        if (s.n % 2 != 0) {
          if (r == 0) d.plus_one += 2 * m;
          else if (r == 1) d.minus_one += 2 * m;
        } else {
          if (r == make_rational(1, 2)) d.plus_one += 2 * m;
          else if (r == make_rational(3, 2)) d.minus_one += 2 * m;
        }
        break;
      }
    }
  }
  return d;
}

namespace {

using Dense = std::vector<double>;

Dense dense_mul(const Dense& a, const Dense& b, std::size_t n) {
  Dense r(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double x = a[i * n + k];
      if (x == 0) continue;
      for (std::size_t j = 0; j < n; ++j) r[i * n + j] += x * b[k * n + j];
    }
  return r;
}

Dense dense_transpose(const Dense& a, std::size_t n) {
  Dense t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[j * n + i] = a[i * n + j];
  return t;
}

/// Gauss-Jordan with partial pivoting; returns the determinant and writes the inverse.
double dense_inverse(Dense a, std::size_t n, Dense& inv) {
  inv.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1;
  double det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (a[piv * n + col] == 0) return 0;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a[piv * n + j], a[col * n + j]);
        std::swap(inv[piv * n + j], inv[col * n + j]);
      }
      det = -det;
    }
    const double p = a[col * n + col];
    det *= p;
    for (std::size_t j = 0; j < n; ++j) {
      a[col * n + j] /= p;
      inv[col * n + j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r * n + col];
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a[r * n + j] -= f * a[col * n + j];
        inv[r * n + j] -= f * inv[col * n + j];
      }
    }
  }
  return det;
}

double max_diff(const Dense& a, const Dense& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

SeifertIdentityReport check_seifert_identities(const SeifertBlockForm& s, double tolerance) {
  SeifertIdentityReport rep;
  const std::size_t r = s.rank();
  if (r == 0) {
    rep.det = 1;
    rep.passed = true;
    return rep;
  }
  const double sign = s.n % 2 == 0 ? 1.0 : -1.0;
  const Dense l = s.dense();
  const Dense lt = dense_transpose(l, r);
  Dense linv;
  rep.det = dense_inverse(l, r, linv);

  Dense inter(r * r);
  for (std::size_t i = 0; i < r * r; ++i) inter[i] = -l[i] - sign * lt[i];
  Dense inter_signed = inter;
  for (auto& x : inter_signed) x *= sign;
  rep.intersection_symmetry_residual = max_diff(dense_transpose(inter, r), inter_signed);

  Dense t = dense_mul(linv, lt, r);
  for (auto& x : t) x *= sign;
  rep.monodromy_isometry_residual = max_diff(dense_mul(dense_mul(dense_transpose(t, r), inter, r), t, r), inter);
  Dense lt_signed = lt;
  for (auto& x : lt_signed) x *= sign;
  rep.monodromy_relation_residual = max_diff(dense_mul(l, t, r), lt_signed);

  rep.passed = std::abs(std::abs(rep.det) - 1) <= tolerance && rep.intersection_symmetry_residual <= tolerance &&
               rep.monodromy_isometry_residual <= tolerance && rep.monodromy_relation_residual <= tolerance;
  return rep;
}

// --- characteristic polynomial ----------------------------------------------------------------

std::vector<Integer> cyclotomic(long d) {
  if (d < 1) throw Error(ErrorCode::DataFormatError, "cyclotomic index must be positive");
  Poly p(static_cast<std::size_t>(d) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(d)] = 1;
  for (long e = 1; e < d; ++e)
    if (d % e == 0) p = divide_exact(p, cyclotomic(e));
  return p;
}

CharPoly monodromy_char_poly(const PuiseuxPolynomial& series) {
  const long n = series.level();
  CharPoly out;
  out.eigen_multiplicities.assign(static_cast<std::size_t>(n), 0);
  for (const auto& [e, c] : series.coefficients()) out.eigen_multiplicities[static_cast<std::size_t>(((e % n) + n) % n)] += c;

  Poly poly{1};
  for (long d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    const long g = n / d;
    std::optional<Integer> m;
    for (long j = 0; j < n; ++j) {
      if (std::gcd(j, n) != g) continue;
      const Integer& mj = out.eigen_multiplicities[static_cast<std::size_t>(j)];
      if (!m) m = mj;
      else if (*m != mj)
        throw Error(ErrorCode::NonGaloisStable, "eigenvalue multiplicities differ on primitive " + std::to_string(d) +
                                                    "-th roots of unity");
    }
    if (!m || *m == 0) continue;
    out.factors.push_back({d, *m});
    const Poly phi = cyclotomic(d);
    for (Integer k = 0; k < *m; ++k) poly = multiply(poly, phi);
  }
  out.coefficients = std::move(poly);
  return out;
}

CharPoly monodromy_char_poly(const WeightSystem& w) { return monodromy_char_poly(poincare_series(w)); }

C2Report verify_c2_identity(const WeightSystem& w, long rho, long l_edges) {
  C2Report r;
  r.c2 = poincare_series(w).coefficient(2);
  r.l_minus_3 = l_edges - 3;
  r.twenty_minus_rho = 20 - rho;
  r.c2_matches_edges = r.c2 == r.l_minus_3;
  r.edges_match_rho = r.l_minus_3 == r.twenty_minus_rho;
  return r;
}

}  // namespace k3lat
