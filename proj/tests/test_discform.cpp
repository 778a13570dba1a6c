#include "doctest.h"

#include <set>

#include "k3lat/discform.hpp"
#include "k3lat/lattice.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace k3lat;

namespace {

FiniteQuadraticForm form(const char* text) { return build_form(parse_form_expr(text)); }

bool iso(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) { return iso_test(a, b).isomorphic; }

// The witness must be a bijective homomorphism preserving q and b on generators.
bool witness_valid(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b, const IsoResult& r) {
  const auto& d = a.invariant_factors();
  if (r.images.size() != d.size()) return false;
  std::vector<std::vector<Integer>> basis(d.size(), std::vector<Integer>(d.size(), 0));
  for (std::size_t i = 0; i < d.size(); ++i) basis[i][i] = 1;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (a.q(basis[i]) != b.q(r.images[i])) return false;
    for (std::size_t j = 0; j < d.size(); ++j)
      if (a.b(basis[i], basis[j]) != b.b(r.images[i], r.images[j])) return false;
    std::vector<Integer> scaled = r.images[i];
    for (std::size_t k = 0; k < scaled.size(); ++k) scaled[k] = scaled[k] * d[i] % b.invariant_factors()[k];
    for (const auto& x : scaled)
      if (x != 0) return false;
  }
  // injective, hence bijective since the orders agree
  std::set<std::vector<Integer>> images;
  std::vector<Integer> x(d.size(), 0);
  for (;;) {
    std::vector<Integer> y(b.invariant_factors().size(), 0);
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t k = 0; k < y.size(); ++k) y[k] += x[i] * r.images[i][k];
    for (std::size_t k = 0; k < y.size(); ++k) {
      y[k] %= b.invariant_factors()[k];
      if (y[k] < 0) y[k] += b.invariant_factors()[k];
    }
    if (!images.insert(y).second) return false;
    std::size_t k = 0;
    while (k < d.size() && ++x[k] == d[k]) x[k++] = 0;
    if (k == d.size()) break;
  }
  return a.order() == b.order();
}

}  // namespace

TEST_CASE("fundamental forms") {
  const auto w = make_fundamental(FundamentalFormSpec::w(2, 1, -1));
  CHECK(w.invariant_factors() == std::vector<Integer>{2});
  CHECK(w.q_values() == std::vector<Rational>{Rational(3, 2)});

  const auto v1 = make_fundamental(FundamentalFormSpec::v(1));
  CHECK(v1.invariant_factors() == std::vector<Integer>{2, 2});
  CHECK(v1.q_values() == std::vector<Rational>{1, 1});
  CHECK(v1.bilinear()(0, 1) == Rational(1, 2));

  const auto w31 = make_fundamental(FundamentalFormSpec::w(3, 1, 1));
  CHECK(w31.q_values() == std::vector<Rational>{Rational(4, 3)});
  CHECK(iso(w31, discriminant_form(root_lattice(RootFamily::A, 2))));
  CHECK(iso(make_fundamental(FundamentalFormSpec::w(3, 1, -1)), discriminant_form(root_lattice(RootFamily::E, 6))));

  CHECK_THROWS_AS(make_fundamental(FundamentalFormSpec::w(2, 1, 3)), Error);
  CHECK_THROWS_AS(make_fundamental(FundamentalFormSpec::w(3, 1, 5)), Error);
  CHECK_THROWS_AS(make_fundamental(FundamentalFormSpec::w(4, 1, 1)), Error);
}

TEST_CASE("form expressions") {
  CHECK(to_string(parse_form_expr("w(2,1,1) | w(3,1,-1)")) == "w(2,1,1)|w(3,1,-1)");
  CHECK(parse_form_expr("w(2,1,1)^3").size() == 3);
  CHECK(parse_form_expr("triv").empty());
  try {
    parse_form_expr("w(2,1");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}

TEST_CASE("orthogonal sums") {
  const auto q = form("w(5,1,-1)");
  CHECK(iso(orth_sum(FiniteQuadraticForm(), q), q));
  const auto a5 = discriminant_form(root_lattice(RootFamily::A, 5));
  const auto s = orth_sum(make_fundamental(FundamentalFormSpec::w(2, 1, 1)),
                          make_fundamental(FundamentalFormSpec::w(3, 1, -1)));
  CHECK(s.invariant_factors() == std::vector<Integer>{6});
  CHECK(iso(s, a5));
}

TEST_CASE("signature formula on printed values") {
  CHECK(signature_formula(FundamentalFormSpec::w(2, 2, 5)) == 5);
  CHECK(signature_formula(FundamentalFormSpec::w(19, 1, -1)) == 2);
  for (int k = 1; k <= 4; ++k) CHECK(signature_formula(FundamentalFormSpec::u(k)) == 0);
  CHECK(signature_formula(FundamentalFormSpec::w(5, 1, -1)) == 0);
}

TEST_CASE("Gauss signature") {
  CHECK(signature_gauss(discriminant_form(root_lattice(RootFamily::A, 2))) == 6);
  CHECK(signature_gauss(FiniteQuadraticForm()) == 0);
  CHECK(signature_gauss(discriminant_form(root_lattice(RootFamily::D, 4))) == 4);
  CHECK_THROWS_AS(signature_gauss(form("w(3,11,1)")), Error);
}

TEST_CASE("both signature paths on fundamental forms up to order 64") {
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61})
    for (int k = 1; k <= 6; ++k) {
      long order = 1;
      for (int i = 0; i < k; ++i) order *= p;
      if (order > 64) break;
      std::vector<FundamentalFormSpec> specs;
      const std::vector<int> eps = p == 2 ? std::vector<int>{1, -1, 5, -5} : std::vector<int>{1, -1};
      for (int e : eps) specs.push_back(FundamentalFormSpec::w(p, k, e));
      if (p == 2) {
        specs.push_back(FundamentalFormSpec::u(k));
        specs.push_back(FundamentalFormSpec::v(k));
      }
      for (const auto& s : specs) {
        INFO(s.to_string());
        CHECK(signature_formula(s) == signature_gauss(make_fundamental(s)));
      }
    }
}

TEST_CASE("signature is additive on random pairs") {
  const std::vector<FundamentalFormSpec> pool = {
      FundamentalFormSpec::w(2, 1, 1), FundamentalFormSpec::w(2, 2, -5), FundamentalFormSpec::w(2, 3, 5),
      FundamentalFormSpec::w(3, 1, 1), FundamentalFormSpec::w(3, 2, -1), FundamentalFormSpec::w(5, 1, -1),
      FundamentalFormSpec::w(7, 1, 1), FundamentalFormSpec::u(1),        FundamentalFormSpec::v(2)};
  for (const auto& a : pool)
    for (const auto& b : pool) {
      const auto sum = orth_sum(make_fundamental(a), make_fundamental(b));
      CHECK(signature_gauss(sum) == (signature_formula(a) + signature_formula(b)) % 8);
    }
}

TEST_CASE("length") {
  CHECK(length(FiniteQuadraticForm()) == 0);
  CHECK(length(form("w(2,1,1)^3 | w(2,1,-1)^2")) == 5);
  CHECK(length(form("w(3,1,1) | w(3,3,-1)")) == 2);
}

TEST_CASE("isomorphism test") {
  CHECK(iso(discriminant_form(root_lattice(RootFamily::D, 8)), form("u(1)")));
  CHECK_FALSE(iso(form("w(2,1,1)"), form("w(2,1,-1)")));
  CHECK_FALSE(iso(form("u(1)"), form("w(2,1,1) | w(2,1,1)")));
  CHECK(iso(form("w(2,2,1) | w(2,2,-5)"), form("w(2,2,-1) | w(2,2,5)")));
  CHECK_THROWS_AS(iso_test(form("w(3,7,1)"), form("w(3,7,1)")), Error);

  const auto a = form("w(2,1,1) | w(2,1,-1) | w(3,1,1)");
  const auto b = discriminant_form(direct_sum(root_lattice(RootFamily::E, 7), direct_sum(root_lattice(RootFamily::A, 1), root_lattice(RootFamily::A, 2))));
  const auto r = iso_test(a, b);
  REQUIRE(r.isomorphic);
  CHECK(witness_valid(a, b, r));
}

TEST_CASE("iso test is reflexive and symmetric on the table corpus") {
  const auto& f = props::fixture();
  std::vector<FiniteQuadraticForm> forms;
  for (const auto& e : f.entries)
    if (e.form) forms.push_back(build_form(*e.form));
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const auto self = iso_test(forms[i], forms[i]);
    CHECK(self.isomorphic);
    CHECK(witness_valid(forms[i], forms[i], self));
    const auto& other = forms[(i * 7 + 3) % forms.size()];
    if (forms[i].order() != other.order()) continue;
    const auto ab = iso_test(forms[i], other);
    const auto ba = iso_test(other, forms[i]);
    CHECK(ab.isomorphic == ba.isomorphic);
    if (ab.isomorphic) {
      CHECK(witness_valid(forms[i], other, ab));
      CHECK(witness_valid(other, forms[i], ba));
    }
  }
}

TEST_CASE("Nikulin existence") {
  CHECK(nikulin_exists(1, 17, FiniteQuadraticForm()).exists);
  for (const char* f : {"w(2,1,1)^2", "w(2,1,1) | w(2,1,-1)", "w(2,1,-1)^2", "u(1)", "v(1)"}) {
    const auto r = nikulin_exists(1, 2, form(f));
    CHECK_FALSE(r.exists);
    CHECK_FALSE(r.conditions[0].holds);
  }
  const auto empty = nikulin_exists(0, 0, form("w(2,1,1)"));
  CHECK_FALSE(empty.exists);
}

TEST_CASE("Nikulin uniqueness") {
  CHECK(nikulin_unique(1, 9, FiniteQuadraticForm()).verdict == Uniqueness::Unique);
  CHECK(nikulin_unique(1, 1, form("w(5,1,-1)")).verdict == Uniqueness::CriterionInapplicable);
  const auto a6 = discriminant_form(root_lattice(RootFamily::A, 6));
  CHECK(nikulin_unique(1, 15, a6).verdict == Uniqueness::Unique);
  CHECK(nikulin_unique(1, 0, form("w(2,2,1)")).verdict == Uniqueness::CriterionInapplicable);
}

TEST_CASE("form enumeration") {
  const auto c34 = enumerate_forms(3, 4);
  REQUIRE(c34.size() == 1);
  CHECK(iso(c34[0].form, form("w(2,2,-1)")));

  const auto c616 = enumerate_forms(6, 16);
  REQUIRE(c616.size() == 3);
  std::size_t hits = 0;
  for (const char* f : {"u(1) | v(1)", "w(2,2,1) | w(2,2,-5)", "w(2,2,-1) | w(2,2,5)"})
    for (const auto& c : c616)
      if (iso(c.form, form(f))) ++hits;
  // the last two printed forms are one class
  CHECK(hits == 3);

  CHECK(enumerate_forms(1, 1).empty());
  const auto c21 = enumerate_forms(2, 1);
  REQUIRE(c21.size() == 1);
  CHECK(c21[0].form.is_trivial());
}

TEST_CASE("decompose recovers table forms") {
  for (const char* f : {"w(2,1,1) | w(3,1,-1)", "v(2)", "w(2,3,-5) | w(7,1,-1)", "u(1) | w(3,1,1)"}) {
    const auto q = form(f);
    const auto d = decompose(q);
    REQUIRE(d);
    CHECK(iso(build_form(*d), q));
  }
}

TEST_CASE("group helpers") {
  CHECK(invariant_factors_of({2, 3}) == std::vector<Integer>{6});
  CHECK(invariant_factors_of({4, 2, 3}) == std::vector<Integer>{2, 12});
  CHECK(factorize(108) == std::vector<std::pair<Integer, int>>{{2, 2}, {3, 3}});
}

TEST_CASE("Gauss sum magnitude on every table form") {
  const auto& f = props::fixture();
  const auto r = props::gauss_magnitude(f.entries, f.signatures, f.ctx);
  INFO(r.summary());
  CHECK(r.passed());
}
