#include "k3lat/discform.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

namespace k3lat {

// --- specs and the expression grammar -------------------------------------------

std::string FundamentalFormSpec::to_string() const {
  switch (kind) {
    case Kind::W:
      return "w(" + std::to_string(p) + "," + std::to_string(k) + "," + std::to_string(eps) + ")";
    case Kind::U: return "u(" + std::to_string(k) + ")";
    case Kind::V: return "v(" + std::to_string(k) + ")";
  }
  return {};
}

std::string to_string(const FormDecomposition& forms) {
  if (forms.empty()) return "triv";
  std::string out;
  for (const auto& f : forms) {
    if (!out.empty()) out += "|";
    out += f.to_string();
  }
  return out;
}

namespace {

class FormParser {
 public:
  explicit FormParser(std::string_view text) : s_(text) {}

  FormDecomposition parse() {
    FormDecomposition out = sum();
    skip();
    if (pos_ != s_.size()) throw ParseError(pos_, "unexpected trailing input in form expression");
    return out;
  }

 private:
  FormDecomposition sum() {
    FormDecomposition out = term();
    for (;;) {
      skip();
      if (!eat('|')) break;
      auto rhs = term();
      out.insert(out.end(), rhs.begin(), rhs.end());
    }
    return out;
  }

  FormDecomposition term() {
    FormDecomposition base = atom();
    skip();
    if (eat('^')) {
      const long n = integer();
      if (n < 0) throw ParseError(pos_, "negative power");
      FormDecomposition out;
      for (long i = 0; i < n; ++i) out.insert(out.end(), base.begin(), base.end());
      return out;
    }
    return base;
  }

  FormDecomposition atom() {
    skip();
    if (eat('(')) {
      auto inner = sum();
      expect(')');
      return inner;
    }
    if (s_.substr(pos_, 4) == "triv") {
      pos_ += 4;
      return {};
    }
    if (pos_ < s_.size() && s_[pos_] == '1' &&
        (pos_ + 1 == s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      return {};
    }
    if (pos_ >= s_.size()) throw ParseError(pos_, "expected a form");
    const char c = s_[pos_++];
    if (c == 'w') {
      expect('(');
      const long p = integer();
      expect(',');
      const long k = integer();
      expect(',');
      const long e = integer();
      expect(')');
      return {FundamentalFormSpec::w(static_cast<int>(p), static_cast<int>(k), static_cast<int>(e))};
    }
    if (c == 'u' || c == 'v') {
      expect('(');
      const long k = integer();
      expect(')');
      return {c == 'u' ? FundamentalFormSpec::u(static_cast<int>(k))
                       : FundamentalFormSpec::v(static_cast<int>(k))};
    }
    throw ParseError(pos_ - 1, std::string("unknown form '") + c + "'");
  }

  long integer() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (digits == pos_) throw ParseError(start, "expected an integer");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw ParseError(pos_, std::string("expected '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Integer power(long base, int exp) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
  return r;
}

int mod8(long x) { return static_cast<int>(((x % 8) + 8) % 8); }

}  // namespace

FormDecomposition parse_form_expr(std::string_view text) { return FormParser(text).parse(); }

// --- FiniteQuadraticForm -----------------------------------------------------------

FiniteQuadraticForm FiniteQuadraticForm::from_presentation(const IntMatrix& relations,
                                                           const RatMatrix& values) {
  if (!relations.is_square() || values.rows() != relations.rows() || !values.is_square())
    throw Error(ErrorCode::DimensionMismatch, "form presentation shapes disagree");
  const std::size_t n = relations.rows();
  FiniteQuadraticForm out;
  if (n == 0) return out;

  const SnfResult snf = smith_normal_form(relations);
  for (const auto& d : snf.d)
    if (d == 0) throw Error(ErrorCode::DegenerateMatrix, "relation matrix is singular");

  // new generator j is column j of left^{-1}
  const RatMatrix left_inv = inverse(to_rational(snf.left));
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < n; ++j)
    if (snf.d[j] > 1) keep.push_back(j);

  RatMatrix basis(n, keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c)
    for (std::size_t i = 0; i < n; ++i) basis(i, c) = left_inv(i, keep[c]);

  const RatMatrix w = basis.transpose() * values * basis;
  out.d_.reserve(keep.size());
  for (std::size_t j : keep) out.d_.push_back(snf.d[j]);
  out.v_ = RatMatrix(keep.size(), keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j)
      out.v_(i, j) = mod_positive(w(i, j), i == j ? Rational(2) : Rational(1));

  for (std::size_t i = 0; i < keep.size(); ++i) {
    const Rational di(out.d_[i]);
    const Rational dq = di * out.v_(i, i);
    const Rational ddq = di * di * out.v_(i, i);
    if (dq.get_den() != 1 || ddq.get_den() != 1 || ddq.get_num() % 2 != 0)
      throw Error(ErrorCode::DataFormatError, "quadratic values are not well defined on the group");
    for (std::size_t j = 0; j < keep.size(); ++j)
      if (Rational(di * out.v_(i, j)).get_den() != 1)
        throw Error(ErrorCode::DataFormatError, "bilinear values are not well defined on the group");
  }
  return out;
}

std::vector<Rational> FiniteQuadraticForm::q_values() const {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < d_.size(); ++i) out.push_back(v_(i, i));
  return out;
}

RatMatrix FiniteQuadraticForm::bilinear() const {
  RatMatrix b = v_;
  for (std::size_t i = 0; i < d_.size(); ++i) b(i, i) = mod_positive(v_(i, i), 1);
  return b;
}

Integer FiniteQuadraticForm::order() const {
  Integer n = 1;
  for (const auto& d : d_) n *= d;
  return n;
}

Rational FiniteQuadraticForm::q(const std::vector<Integer>& x) const {
  if (x.size() != d_.size()) throw Error(ErrorCode::DimensionMismatch, "element has wrong length");
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += Rational(x[i] * x[i]) * v_(i, i);
    for (std::size_t j = i + 1; j < x.size(); ++j) s += Rational(2 * x[i] * x[j]) * v_(i, j);
  }
  return mod_positive(s, 2);
}

Rational FiniteQuadraticForm::b(const std::vector<Integer>& x, const std::vector<Integer>& y) const {
  if (x.size() != d_.size() || y.size() != d_.size())
    throw Error(ErrorCode::DimensionMismatch, "element has wrong length");
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) s += Rational(x[i] * y[j]) * v_(i, j);
  return mod_positive(s, 1);
}

std::size_t length(const FiniteQuadraticForm& q) { return q.length(); }

// --- fundamental forms and sums -------------------------------------------------------

FiniteQuadraticForm make_fundamental(const FundamentalFormSpec& spec) {
  if (spec.k < 1) throw Error(ErrorCode::BadRank, "fundamental form needs k >= 1");
  const long p = spec.p;
  if (spec.kind != FundamentalFormSpec::Kind::W) {
    if (p != 2) throw Error(ErrorCode::BadEpsilon, "u_k and v_k live on 2-groups only");
    const Integer n = power(2, spec.k);
    IntMatrix rel(2, 2);
    rel(0, 0) = n;
    rel(1, 1) = n;
    RatMatrix val(2, 2);
    const Rational off = make_rational(1, n);
    val(0, 1) = off;
    val(1, 0) = off;
    if (spec.kind == FundamentalFormSpec::Kind::V) {
      val(0, 0) = make_rational(2, n);
      val(1, 1) = make_rational(2, n);
    }
    return FiniteQuadraticForm::from_presentation(rel, val);
  }

  if (!is_prime(p)) throw Error(ErrorCode::BadEpsilon, "w_{p,k} needs a prime p, got " + std::to_string(p));
  const Integer n = power(p, spec.k);
  Rational value;
  if (p == 2) {
    if (spec.eps != 1 && spec.eps != -1 && spec.eps != 5 && spec.eps != -5)
      throw Error(ErrorCode::BadEpsilon, "p = 2 needs eps in {1, -1, 5, -5}");
    value = make_rational(spec.eps, n);
  } else {
    if (spec.eps != 1 && spec.eps != -1) throw Error(ErrorCode::BadEpsilon, "odd p needs eps = +-1");
    // smallest positive even a, coprime to p, with Legendre symbol (a/p) = eps
    long a = 2;
    const Integer pz = p;
    for (;; a += 2) {
      if (a % p == 0) continue;
      const Integer az = a;
      if (mpz_legendre(az.get_mpz_t(), pz.get_mpz_t()) == spec.eps) break;
    }
    value = make_rational(a, n);
  }
  IntMatrix rel(1, 1);
  rel(0, 0) = n;
  RatMatrix val(1, 1);
  val(0, 0) = value;
  return FiniteQuadraticForm::from_presentation(rel, val);
}

FiniteQuadraticForm orth_sum(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
  const std::size_t n = a.length() + b.length();
  IntMatrix rel(n, n);
  for (std::size_t i = 0; i < a.length(); ++i) rel(i, i) = a.invariant_factors()[i];
  for (std::size_t i = 0; i < b.length(); ++i) rel(a.length() + i, a.length() + i) = b.invariant_factors()[i];
  return FiniteQuadraticForm::from_presentation(rel, block_sum(a.value_matrix(), b.value_matrix()));
}

FiniteQuadraticForm build_form(const FormDecomposition& forms) {
  if (forms.empty()) return {};
  const std::size_t total = [&] {
    std::size_t t = 0;
    for (const auto& f : forms) t += f.kind == FundamentalFormSpec::Kind::W ? 1 : 2;
    return t;
  }();
  IntMatrix rel(total, total);
  RatMatrix val(total, total);
  std::size_t at = 0;
  for (const auto& f : forms) {
    const FiniteQuadraticForm piece = make_fundamental(f);
    // fundamental forms are already in generator form; embed them verbatim
    for (std::size_t i = 0; i < piece.length(); ++i) {
      rel(at + i, at + i) = piece.invariant_factors()[i];
      for (std::size_t j = 0; j < piece.length(); ++j) val(at + i, at + j) = piece.value_matrix()(i, j);
    }
    at += piece.length();
  }
  return FiniteQuadraticForm::from_presentation(rel, val);
}

// --- signatures -----------------------------------------------------------------------

int signature_formula(const FundamentalFormSpec& spec) {
  switch (spec.kind) {
    case FundamentalFormSpec::Kind::U: return 0;
    case FundamentalFormSpec::Kind::V: return mod8(4L * spec.k);
    case FundamentalFormSpec::Kind::W: break;
  }
  const long k = spec.k;
  if (spec.p == 2) {
    const long omega = (spec.eps == 5 || spec.eps == -5) ? 1 : 0;
    return mod8(spec.eps + 4 * k * omega);
  }
  const long eta = (1 - spec.eps) / 2;
  return mod8(k * k * (1 - spec.p) + 4 * k * eta);
}

int signature_formula(const FormDecomposition& forms) {
  int s = 0;
  for (const auto& f : forms) s += signature_formula(f);
  return mod8(s);
}

namespace {

/// Integer-scaled view of a form for fast enumeration: values times a common denominator.
struct ScaledForm {
  std::int64_t denom = 1;
  std::vector<std::int64_t> orders;
  std::vector<std::int64_t> v;  // row-major m x m
  std::size_t m = 0;

  ScaledForm(const FiniteQuadraticForm& f, const Integer& common) {
    denom = common.get_si();
    m = f.length();
    for (const auto& d : f.invariant_factors()) orders.push_back(d.get_si());
    v.resize(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const Rational scaled = f.value_matrix()(i, j) * Rational(common);
        v[i * m + j] = scaled.get_num().get_si();
      }
  }

  std::int64_t qnum(const std::vector<std::int64_t>& x) const {
    __int128 s = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (x[i] == 0) continue;
      s += static_cast<__int128>(x[i]) * x[i] * v[i * m + i];
      for (std::size_t j = i + 1; j < m; ++j) s += static_cast<__int128>(2) * x[i] * x[j] * v[i * m + j];
    }
    const __int128 mod = 2 * static_cast<__int128>(denom);
    s %= mod;
    if (s < 0) s += mod;
    return static_cast<std::int64_t>(s);
  }

  std::int64_t bnum(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) const {
    __int128 s = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) s += static_cast<__int128>(x[i]) * y[j] * v[i * m + j];
    }
    s %= denom;
    if (s < 0) s += denom;
    return static_cast<std::int64_t>(s);
  }

  std::uint64_t size() const {
    std::uint64_t n = 1;
    for (auto o : orders) n *= static_cast<std::uint64_t>(o);
    return n;
  }

  /// Advance x through the group in mixed radix; false after the last element.
  bool next(std::vector<std::int64_t>& x) const {
    for (std::size_t i = m; i-- > 0;) {
      if (++x[i] < orders[i]) return true;
      x[i] = 0;
    }
    return false;
  }
};

Integer common_denominator(const FiniteQuadraticForm& f) {
  Integer d = 1;
  const auto& v = f.value_matrix();
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = 0; j < v.cols(); ++j) d = lcm(d, v(i, j).get_den());
  return d;
}

void check_cap(const FiniteQuadraticForm& q, std::uint64_t cap) {
  if (q.order() > Integer(static_cast<unsigned long>(cap)))
    throw Error(ErrorCode::CapExceeded, "group order " + q.order().get_str() + " exceeds cap " +
                                            std::to_string(cap));
}

}  // namespace

double GaussSum::magnitude() const { return std::hypot(re, im); }

GaussSum gauss_sum(const FiniteQuadraticForm& q, std::uint64_t cap) {
  check_cap(q, cap);
  GaussSum out;
  if (q.is_trivial()) {
    out.re = 1;
    return out;
  }
  const ScaledForm s(q, common_denominator(q));
  std::vector<std::int64_t> x(s.m, 0);
  // kahan-free accumulation is fine: at most 2^16 unit-modulus terms
  do {
    const double angle = std::numbers::pi * static_cast<double>(s.qnum(x)) / static_cast<double>(s.denom);
    out.re += std::cos(angle);
    out.im += std::sin(angle);
  } while (s.next(x));
  return out;
}

int signature_gauss(const FiniteQuadraticForm& q, std::uint64_t cap) {
  const GaussSum g = gauss_sum(q, cap);
  const double expected = std::sqrt(q.order().get_d());
  if (std::abs(g.magnitude() - expected) > 1e-6 * expected)
    throw Error(ErrorCode::NondegenerateBilinearViolated,
                "|Gauss sum| = " + std::to_string(g.magnitude()) + " but sqrt|G| = " + std::to_string(expected));
  const double eighths = std::atan2(g.im, g.re) / (std::numbers::pi / 4);
  return mod8(std::lround(eighths));
}

// --- isomorphism ----------------------------------------------------------------------

IsoResult iso_test(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b, std::uint64_t cap) {
  IsoResult out;
  if (a.invariant_factors() != b.invariant_factors()) return out;
  check_cap(a, cap);
  if (a.is_trivial()) {
    out.isomorphic = true;
    return out;
  }
  const Integer common = lcm(common_denominator(a), common_denominator(b));
  const ScaledForm sa(a, common);
  const ScaledForm sb(b, common);
  const std::size_t m = sa.m;
  const std::uint64_t n = sb.size();

  // element table of b
  std::vector<std::vector<std::int64_t>> elems;
  std::vector<std::int64_t> qb;
  elems.reserve(n);
  {
    std::vector<std::int64_t> x(m, 0);
    do {
      elems.push_back(x);
      qb.push_back(sb.qnum(x));
    } while (sb.next(x));
  }
  // q-value histograms are an isomorphism invariant
  {
    std::vector<std::int64_t> qa;
    std::vector<std::int64_t> x(m, 0);
    do qa.push_back(sa.qnum(x));
    while (sa.next(x));
    std::vector<std::int64_t> sorted_b = qb;
    std::sort(qa.begin(), qa.end());
    std::sort(sorted_b.begin(), sorted_b.end());
    if (qa != sorted_b) return out;
  }

  std::vector<std::vector<std::int64_t>> unit(m, std::vector<std::int64_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i) unit[i][i] = 1;

  std::vector<std::vector<std::size_t>> candidates(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::int64_t target = sa.qnum(unit[i]);
    const std::int64_t di = sa.orders[i];
    for (std::size_t k = 0; k < n; ++k) {
      if (qb[k] != target) continue;
      bool ok = true;
      for (std::size_t j = 0; j < m && ok; ++j) ok = (di * elems[k][j]) % sb.orders[j] == 0;
      if (ok) candidates[i].push_back(k);
    }
    if (candidates[i].empty()) return out;
  }

  std::vector<std::vector<std::int64_t>> target_b(m, std::vector<std::int64_t>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) target_b[i][j] = sa.bnum(unit[i], unit[j]);

  std::vector<std::size_t> chosen(m);

  auto injective = [&]() {
    std::vector<char> seen(n, 0);
    std::vector<std::int64_t> x(m, 0);
    do {
      std::uint64_t index = 0;
      for (std::size_t j = 0; j < m; ++j) {
        __int128 c = 0;
        for (std::size_t i = 0; i < m; ++i) c += static_cast<__int128>(x[i]) * elems[chosen[i]][j];
        c %= sb.orders[j];
        index = index * static_cast<std::uint64_t>(sb.orders[j]) + static_cast<std::uint64_t>(c);
      }
      if (seen[index]) return false;
      seen[index] = 1;
    } while (sa.next(x));
    return true;
  };

  std::function<bool(std::size_t)> search = [&](std::size_t depth) -> bool {
    if (depth == m) return injective();
    for (std::size_t k : candidates[depth]) {
      bool ok = true;
      for (std::size_t j = 0; j < depth && ok; ++j)
        ok = sb.bnum(elems[k], elems[chosen[j]]) == target_b[depth][j];
      if (!ok) continue;
      chosen[depth] = k;
      if (search(depth + 1)) return true;
    }
    return false;
  };

  if (!search(0)) return out;
  out.isomorphic = true;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Integer> img;
    for (auto c : elems[chosen[i]]) img.emplace_back(static_cast<long>(c));
    out.images.push_back(std::move(img));
  }
  return out;
}

// --- Nikulin criteria ---------------------------------------------------------------------

std::string_view to_string(Uniqueness u) {
  return u == Uniqueness::Unique ? "Unique" : "CriterionInapplicable";
}

namespace {

ConditionCheck signature_condition(long t_plus, long t_minus, int sigma) {
  const int lhs = mod8(t_plus - t_minus);
  return {"signature", lhs == sigma,
          "t+ - t- = " + std::to_string(lhs) + " mod 8, sigma(q) = " + std::to_string(sigma)};
}

}  // namespace

ExistenceReport nikulin_exists(long t_plus, long t_minus, const FiniteQuadraticForm& q) {
  ExistenceReport r;
  r.sigma = signature_gauss(q);
  const long len = static_cast<long>(q.length());
  r.conditions.push_back(signature_condition(t_plus, t_minus, r.sigma));
  r.conditions.push_back({"rank", t_plus >= 0 && t_minus >= 0 && t_plus + t_minus >= len,
                          "t+ + t- = " + std::to_string(t_plus + t_minus) + ", l(G) = " + std::to_string(len)});
  r.exists = std::all_of(r.conditions.begin(), r.conditions.end(), [](const auto& c) { return c.holds; });
  return r;
}

UniquenessReport nikulin_unique(long t_plus, long t_minus, const FiniteQuadraticForm& q) {
  UniquenessReport r;
  r.sigma = signature_gauss(q);
  const long len = static_cast<long>(q.length());
  r.conditions.push_back(signature_condition(t_plus, t_minus, r.sigma));
  r.conditions.push_back({"indefinite", t_plus >= 1 && t_minus >= 1,
                          "t+ = " + std::to_string(t_plus) + ", t- = " + std::to_string(t_minus)});
  r.conditions.push_back({"rank", t_plus + t_minus >= 2 + len,
                          "t+ + t- = " + std::to_string(t_plus + t_minus) + ", 2 + l(G) = " +
                              std::to_string(2 + len)});
  const bool all = std::all_of(r.conditions.begin(), r.conditions.end(), [](const auto& c) { return c.holds; });
  r.verdict = all ? Uniqueness::Unique : Uniqueness::CriterionInapplicable;
  return r;
}

// --- enumeration ----------------------------------------------------------------------------

std::vector<std::pair<Integer, int>> factorize(const Integer& n) {
  std::vector<std::pair<Integer, int>> out;
  Integer rest = abs(n);
  for (Integer p = 2; p * p <= rest; ++p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (rest > 1) out.emplace_back(rest, 1);
  return out;
}

std::vector<Integer> invariant_factors_of(const std::vector<Integer>& cyclic_orders) {
  IntMatrix rel(cyclic_orders.size(), cyclic_orders.size());
  for (std::size_t i = 0; i < cyclic_orders.size(); ++i) rel(i, i) = cyclic_orders[i];
  std::vector<Integer> out;
  for (const auto& d : smith_normal_form(rel).d)
    if (d != 1) out.push_back(d);
  return out;
}

namespace {

void partitions(int n, int max_part, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(current);
    return;
  }
  for (int part = std::min(n, max_part); part >= 1; --part) {
    current.push_back(part);
    partitions(n - part, part, current, out);
    current.pop_back();
  }
}

/// Multisets of the given size drawn from choices (non-decreasing index sequences).
void multisets(const std::vector<int>& choices, std::size_t size, std::size_t from, std::vector<int>& current,
               std::vector<std::vector<int>>& out) {
  if (current.size() == size) {
    out.push_back(current);
    return;
  }
  for (std::size_t i = from; i < choices.size(); ++i) {
    current.push_back(choices[i]);
    multisets(choices, size, i, current, out);
    current.pop_back();
  }
}

/// Every decomposition into fundamental forms of one p-primary group with the given cyclic exponents.
std::vector<FormDecomposition> primary_decompositions(int p, const std::vector<int>& parts) {
  std::map<int, int, std::greater<>> mult;
  for (int k : parts) ++mult[k];
  std::vector<FormDecomposition> acc{{}};
  for (const auto& [k, count] : mult) {
    std::vector<FormDecomposition> options;
    const std::vector<int> eps_choices = p != 2 ? std::vector<int>{1, -1}
                                         : k == 1 ? std::vector<int>{1, -1}
                                                  : std::vector<int>{1, -1, 5, -5};
    for (int pairs = 0; p == 2 ? 2 * pairs <= count : pairs == 0; ++pairs) {
      for (int n_u = pairs; n_u >= 0; --n_u) {
        const int n_v = pairs - n_u;
        std::vector<std::vector<int>> eps_sets;
        std::vector<int> cur;
        multisets(eps_choices, static_cast<std::size_t>(count - 2 * pairs), 0, cur, eps_sets);
        for (const auto& eps : eps_sets) {
          FormDecomposition d;
          for (int i = 0; i < n_u; ++i) d.push_back(FundamentalFormSpec::u(k));
          for (int i = 0; i < n_v; ++i) d.push_back(FundamentalFormSpec::v(k));
          for (int e : eps) d.push_back(FundamentalFormSpec::w(p, k, e));
          options.push_back(std::move(d));
        }
      }
    }
    std::vector<FormDecomposition> next;
    for (const auto& a : acc)
      for (const auto& o : options) {
        FormDecomposition d = a;
        d.insert(d.end(), o.begin(), o.end());
        next.push_back(std::move(d));
      }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

std::vector<EnumeratedForm> enumerate_forms(int rho, const Integer& delta) {
  if (delta < 1) throw Error(ErrorCode::DataFormatError, "enumeration needs a positive order");
  const int wanted = mod8(2 - rho);

  // per prime: list of (decomposition, number of cyclic factors)
  std::vector<std::vector<std::pair<FormDecomposition, int>>> per_prime;
  for (const auto& [pz, e] : factorize(delta)) {
    const int p = static_cast<int>(pz.get_si());
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(e, e, cur, parts);
    std::vector<std::pair<FormDecomposition, int>> options;
    for (const auto& part : parts)
      for (auto& d : primary_decompositions(p, part)) options.emplace_back(std::move(d), static_cast<int>(part.size()));
    per_prime.push_back(std::move(options));
  }

  std::vector<std::pair<FormDecomposition, int>> combos{{{}, 0}};
  for (const auto& options : per_prime) {
    std::vector<std::pair<FormDecomposition, int>> next;
    for (const auto& [a, la] : combos)
      for (const auto& [o, lo] : options) {
        FormDecomposition d = a;
        d.insert(d.end(), o.begin(), o.end());
        next.emplace_back(std::move(d), std::max(la, lo));
      }
    combos = std::move(next);
  }

  std::vector<EnumeratedForm> out;
  for (const auto& [decomp, len] : combos) {
    if (len > rho) continue;
    if (signature_formula(decomp) != wanted) continue;
    FiniteQuadraticForm form = build_form(decomp);
    const bool seen = std::any_of(out.begin(), out.end(), [&](const EnumeratedForm& e) {
      return iso_test(e.form, form, std::max<std::uint64_t>(kIsoCap, form.order().get_ui())).isomorphic;
    });
    if (!seen) out.push_back({decomp, std::move(form), wanted});
  }
  return out;
}

}  // namespace k3lat

namespace k3lat {

std::optional<FormDecomposition> decompose(const FiniteQuadraticForm& q, std::uint64_t cap) {
  if (q.is_trivial()) return FormDecomposition{};
  const Integer order = q.order();
  if (!order.fits_ulong_p() || order.get_ui() > cap) throw Error(ErrorCode::CapExceeded, "group too large to decompose");
  const int sigma = signature_gauss(q, std::max<std::uint64_t>(cap, kGaussSumCap));

  std::vector<FormDecomposition> combos{{}};
  for (const auto& [pz, e] : factorize(order)) {
    (void)e;
    std::vector<int> parts;
    for (const auto& d : q.invariant_factors()) {
      Integer rest = d;
      int k = 0;
      while (rest % pz == 0) {
        rest /= pz;
        ++k;
      }
      if (k > 0) parts.push_back(k);
    }
    std::sort(parts.rbegin(), parts.rend());
    std::vector<FormDecomposition> next;
    for (const auto& a : combos)
      for (const auto& o : primary_decompositions(static_cast<int>(pz.get_si()), parts)) {
        FormDecomposition d = a;
        d.insert(d.end(), o.begin(), o.end());
        next.push_back(std::move(d));
      }
    combos = std::move(next);
  }
  for (const auto& d : combos) {
    if (signature_formula(d) != sigma) continue;
    if (iso_test(build_form(d), q, cap).isomorphic) return d;
  }
  return std::nullopt;
}

}  // namespace k3lat
