#include "doctest.h"

#include "k3lat/singularity.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace k3lat;

namespace {

Rational r(long n, long d) { return make_rational(n, d); }

const WeightSystem& egk3() {
  static const WeightSystem w = WeightSystem::parse("1/3,1/4,1/4,1/6");
  return w;
}

}  // namespace

TEST_CASE("weight system parsing") {
  const auto w = WeightSystem::parse("4,3,3,2@12");
  CHECK(w.weights() == egk3().weights());
  CHECK(w.level() == 12);
  CHECK(w.integral() == std::array<long, 4>{4, 3, 3, 2});
  CHECK(w.degree_sum() == 12);
  CHECK(w.well_formedness().gcd_all);
  CHECK(w.well_formedness().gcd_triples);
  CHECK_FALSE(w.well_formedness().sorted);
  CHECK(WeightSystem::parse("2,3,3,4@12").well_formedness().ok());
  CHECK_THROWS_AS(WeightSystem::parse("1/0,1/4,1/4,1/6"), Error);
  CHECK_THROWS_AS(WeightSystem::parse("1/3,1/4,1/4"), Error);
  CHECK_THROWS_AS(WeightSystem::parse("1,1/4,1/4,1/6"), Error);
}

TEST_CASE("Poincare series of the quartic example weights") {
  const auto p = poincare_series(egk3());
  CHECK(p.coefficient(2) == 8);
  CHECK(p.coefficient(r(3, 2)) == 5);
  CHECK(p.coefficient(1) == 1);
  CHECK(p.min_exponent() == 1);
  CHECK(p.max_exponent() == 3);
  CHECK(p.is_symmetric(4));
  const auto expect = oracle::brieskorn_pham_series({3, 4, 4, 6});
  REQUIRE(p.terms().size() == expect.size());
  for (const auto& [e, c] : p.terms()) CHECK(expect.at(e) == c);
}

TEST_CASE("Poincare series rejects non-polynomial quotients") {
  try {
    poincare_series(WeightSystem::parse("2/5,2/5,1/3,1/3"));
    FAIL("expected InexactDivision");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InexactDivision);
  }
}

TEST_CASE("Milnor number") {
  CHECK(milnor_number(egk3()) == 90);
  const auto quartic = WeightSystem::parse("1/4,1/4,1/4,1/4");
  CHECK(milnor_number(quartic) == 81);
  CHECK(poincare_series(egk3()).total() == 90);
  CHECK(poincare_series(quartic).total() == 81);
  try {
    milnor_number(WeightSystem::parse("2/5,2/5,2/5,2/5"));
    FAIL("expected NonIntegralMu");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonIntegralMu);
  }
}

TEST_CASE("real Seifert form of the example") {
  const auto s = real_seifert(egk3());
  CHECK(s.rank() == 90);
  CHECK(s.det() == 1);
  std::size_t plus = 0;
  for (const auto& b : s.blocks) {
    if (b.kind == SeifertBlock::Kind::PlusOne) plus += b.multiplicity.get_ui();
    if (b.alpha == r(3, 2)) {
      CHECK(b.kind == SeifertBlock::Kind::Rotation);
      CHECK(b.multiplicity == 5);
    }
  }
  CHECK(plus == 8);
  CHECK(eigen_dims(s) == EigenDims{8, 2});
  CHECK(eigen_dims(SeifertBlockForm{}) == EigenDims{0, 0});
  CHECK(check_seifert_identities(s).passed);
}

TEST_CASE("Seifert blocks follow the parity rules") {
  PuiseuxPolynomial p(2);
  p.add(2, 1);
  p.add(3, 2);
  p.add(4, 3);
  // n odd: centre (n+1)/2
  CHECK(real_seifert(p, 3).blocks.back().kind == SeifertBlock::Kind::PlusOne);
  CHECK(real_seifert(p, 1).blocks.back().kind == SeifertBlock::Kind::MinusOne);
  PuiseuxPolynomial q(2);
  q.add(3, 4);
  CHECK(real_seifert(q, 2).blocks.back().kind == SeifertBlock::Kind::MinusOne);
  PuiseuxPolynomial q4(2);
  q4.add(5, 4);
  CHECK(real_seifert(q4, 4).blocks.back().kind == SeifertBlock::Kind::PlusOne);
  for (int n : {1, 2, 3, 4, 5}) CHECK(check_seifert_identities(real_seifert(p, n)).passed);
}

TEST_CASE("eigenspace dimensions track c1 and c2") {
  for (const char* w : {"1/4,1/4,1/4,1/4", "1/6,1/6,1/6,1/2", "1/3,1/3,1/6,1/6", "1/2,1/4,1/8,1/8"}) {
    const auto ws = WeightSystem::parse(w);
    const auto p = poincare_series(ws);
    const auto e = eigen_dims(real_seifert(ws));
    CHECK(e.plus_one == p.coefficient(2).get_ui());
    CHECK(e.minus_one == 2 * p.coefficient(1).get_ui());
  }
}

TEST_CASE("monodromy characteristic polynomial") {
  const auto c = monodromy_char_poly(egk3());
  CHECK(c.degree() == 90);
  CHECK(c.eigen_multiplicities[0] == 10);
  for (const auto& f : c.factors) CHECK(f.exponent >= 0);
  CHECK(cyclotomic(1) == std::vector<Integer>{-1, 1});
  CHECK(cyclotomic(6) == std::vector<Integer>{1, -1, 1});
  CHECK(cyclotomic(12) == std::vector<Integer>{1, 0, -1, 0, 1});
  // roots of unity: the polynomial is self-reciprocal up to sign
  const auto& k = c.coefficients;
  bool palindromic = true;
  bool antipalindromic = true;
  for (std::size_t i = 0; i < k.size(); ++i) {
    palindromic = palindromic && k[i] == k[k.size() - 1 - i];
    antipalindromic = antipalindromic && k[i] == -k[k.size() - 1 - i];
  }
  CHECK((palindromic || antipalindromic));
}

TEST_CASE("c2 identity") {
  const auto ex = verify_c2_identity(egk3(), 12, 11);
  CHECK(ex.passed());
  CHECK(ex.c2 == 8);
  CHECK(verify_c2_identity(WeightSystem::parse("1/4,1/4,1/4,1/4"), 1, 22).passed());
  CHECK(verify_c2_identity(WeightSystem::parse("1/6,1/6,1/6,1/2"), 1, 22).passed());
  const auto bad = verify_c2_identity(egk3(), 11, 11);
  CHECK_FALSE(bad.passed());
  CHECK(bad.c2_matches_edges);
}

TEST_CASE("c2 agrees with the monomial count for Brieskorn-Pham K3 weights") {
  const std::vector<std::vector<long>> k3 = {{4, 4, 4, 4},  {3, 3, 6, 6},  {2, 6, 6, 6},  {2, 4, 8, 8},
                                             {2, 5, 5, 10}, {2, 3, 12, 12}, {3, 4, 4, 6},  {2, 4, 6, 12},
                                             {2, 3, 10, 15}, {2, 3, 9, 18}, {2, 3, 8, 24}, {2, 4, 5, 20},
                                             {2, 3, 7, 42}, {3, 3, 4, 12}};
  for (const auto& a : k3) {
    std::array<Rational, 4> w;
    for (std::size_t i = 0; i < 4; ++i) w[i] = r(1, a[i]);
    const auto p = poincare_series(WeightSystem(w));
    CHECK(p.coefficient(2) == oracle::brieskorn_pham_c2(a));
    CHECK(p.is_symmetric(4));
  }
}

TEST_CASE("Poincare symmetry property") {
  const auto res = props::poincare_symmetry(0xb1e5, 200);
  INFO(res.summary());
  CHECK(res.passed());
}
