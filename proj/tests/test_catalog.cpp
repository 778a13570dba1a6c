#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "k3lat/catalog.hpp"
#include "k3lat/verify.hpp"
#include "properties.hpp"

using namespace k3lat;

namespace {

GramLattice eval(const char* text) { return evaluate(parse_lattice_expr(text), props::fixture().ctx); }

std::size_t parse_error_at(const char* text) {
  try {
    parse_lattice_expr(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  FAIL("no parse error for " << text);
  return 0;
}

const TableEntry& row(const std::string& table, const std::string& lattice) {
  const auto& es = props::fixture().entries;
  const auto it = std::find_if(es.begin(), es.end(),
                               [&](const TableEntry& e) { return e.table_id == table && e.lattice_text == lattice; });
  REQUIRE(it != es.end());
  return *it;
}

}  // namespace

TEST_CASE("lattice expressions") {
  const auto l = eval("U + E8 + A(1)");
  CHECK(l.rank() == 11);
  CHECK(abs(invariants(l).det) == 2);
  const auto t = eval("T(2,5,5) + E8");
  CHECK(t.rank() == 18);
  CHECK(abs(invariants(t).det) == 5);
  CHECK(eval("2*U").gram() == hyperbolic_U(2).gram());
  CHECK(eval("U(2)").gram() == hyperbolic_U(2).gram());
  CHECK(eval("A1^3").rank() == 3);
  CHECK(eval("<-4>").gram() == IntMatrix{{-4}});
  CHECK(eval("[[2,1],[1,-2]]").gram() == IntMatrix{{2, 1}, {1, -2}});
  CHECK(eval("sub(U; u1+u2; 2u1-u2)").gram() == IntMatrix{{2, 1}, {1, -4}});
  CHECK(eval("sub(U E8; 1,1,0,0,0,0,0,0,0,0; u1+e4)").gram() == IntMatrix{{2, 1}, {1, -2}});
  CHECK(eval("(U + A2)^2").rank() == 8);
  const auto expr = parse_lattice_expr("U + <-4> + A3 + D5");
  CHECK(parse_lattice_expr(expr.to_string()).to_string() == expr.to_string());
}

TEST_CASE("lattice expression errors") {
  CHECK(parse_error_at("U(") == 2);
  CHECK(parse_error_at("U + ") == 4);
  CHECK(parse_error_at("Q") == 0);
  CHECK_THROWS_AS(evaluate(parse_lattice_expr("S{w(5,1,-1)}")), Error);
  CHECK_THROWS_AS(eval("<3>"), Error);
}

TEST_CASE("ambient vectors") {
  CHECK(parse_ambient_vector("u1+3u2-e4", 1, 1) == std::vector<Integer>{1, 3, 0, 0, 0, -1, 0, 0, 0, 0});
  CHECK(parse_ambient_vector("u3", 2, 0) == std::vector<Integer>{0, 0, 1, 0});
  CHECK(parse_ambient_vector("1,2", 1, 0) == std::vector<Integer>{1, 2});
  CHECK_THROWS_AS(parse_ambient_vector("e9", 1, 1), Error);
  CHECK_THROWS_AS(parse_ambient_vector("1,2,3", 1, 0), Error);
}

TEST_CASE("tables load") {
  const auto& f = props::fixture();
  std::map<std::string, std::size_t> counts;
  for (const auto& e : f.entries) ++counts[e.table_id];
  CHECK(counts["alattices"] == 11);
  CHECK(counts["delattices"] == 11);
  CHECK(counts["hyperbolic"] == 4);
  CHECK(counts["rho1"] == 2);
  CHECK(counts["delta1"] == 3);
  CHECK(counts["prime"] == 18);
  CHECK(counts["reclassify"] == 152);
  CHECK(f.signatures.size() == 28);
  CHECK(f.propdefn.size() == 16);
}

TEST_CASE("malformed table rows") {
  const auto dir = std::filesystem::temp_directory_path() / "k3lat_catalog_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "bad.tsv";
  {
    std::ofstream out(path);
    out << "prime\t3\tx\t2\tw(2,1,-1)\tU + A1\t-\tok\tas printed\n";
  }
  try {
    load_table(path);
    FAIL("expected DataFormatError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DataFormatError);
    CHECK(std::string(e.what()).find("bad.tsv:1") != std::string::npos);
  }
  {
    std::ofstream out(path);
    out << "prime\t3\t2\t2\tw(2,1,-1)\tU + A1\n";
  }
  CHECK_THROWS_AS(load_table(path), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("verify_entry on table rows") {
  const auto& ctx = props::fixture().ctx;
  const auto prime = verify_entry(row("prime", "U + A6 + E8"), ctx);
  CHECK(prime.passed());
  CHECK(prime.find("nikulin-unique")->passed);

  const auto d9 = verify_entry(row("delattices", "D(9)"), ctx);
  CHECK(d9.passed());
  CHECK(d9.invariants->det == -4);

  const auto r34 = verify_entry(row("reclassify", "U + <-4>"), ctx);
  CHECK(r34.passed());

  const auto u3 = verify_entry(row("hyperbolic", "U(3)"), ctx);
  CHECK(u3.disputed);
  CHECK_FALSE(u3.find("group")->passed);
  CHECK(u3.find("form")->passed);
}

TEST_CASE("uniqueness expectations follow the proof split") {
  CHECK(expected_uniqueness(3, build_form(parse_form_expr("w(2,1,-1)"))) == Uniqueness::Unique);
  CHECK(expected_uniqueness(2, build_form(parse_form_expr("w(5,1,-1)"))) == Uniqueness::CriterionInapplicable);
  CHECK(expected_uniqueness(2, FiniteQuadraticForm()) == Uniqueness::Unique);
  CHECK(expected_uniqueness(1, build_form(parse_form_expr("w(2,2,1)"))) == Uniqueness::CriterionInapplicable);
}

TEST_CASE("representation lattices") {
  const auto& f = props::fixture();
  const auto find = [&](const char* target) {
    const auto want = parse_form_expr(target);
    return *std::find_if(f.propdefn.begin(), f.propdefn.end(), [&](const PropDefnEntry& e) { return e.target == want; });
  };
  const auto r51 = verify_propdefn(find("w(5,1,-1)"), standard_labelings());
  for (const auto& o : r51.outcomes) {
    CHECK(o.isomorphic);
    CHECK(o.det == -5);
  }
  const auto r32 = verify_propdefn(find("w(3,2,1)"), standard_labelings());
  CHECK(r32.under("bourbaki")->det == -9);
  CHECK(r32.passes_somewhere());

  const auto r33 = verify_propdefn(find("w(3,3,-1)"), standard_labelings());
  CHECK(r33.disputed);
  CHECK_FALSE(r33.passes_somewhere());
  REQUIRE(r33.corrected);
  CHECK(r33.corrected->isomorphic);

  for (const auto& e : f.propdefn) {
    if (e.disputed) continue;
    CHECK(verify_propdefn(e, {labeling_by_name("e1-branch")}).passes_somewhere());
  }
}

TEST_CASE("weights files") {
  const auto recs = parse_weights("# comment\nno=3 w=1/3,1/4,1/4,1/6 rho=12\n\nw=4,3,3,2@12 delta=7 # tail\n");
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].no == 3);
  CHECK(recs[0].rho == 12);
  CHECK_FALSE(recs[1].no);
  CHECK(recs[1].delta == Integer(7));
  CHECK(recs[1].line == 4);
  for (const char* bad : {"no=1 w=1/0,1/4,1/4,1/6", "no=1", "no=x w=1/3,1/4,1/4,1/6", "w=1/3,1/4,1/4,1/6 colour=red",
                          "w=1/3,1/4,1/4,1/6 rho"}) {
    try {
      parse_weights(bad);
      FAIL("accepted " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DataFormatError);
    }
  }
}

TEST_CASE("formula summary skips records without rho") {
  const auto recs = parse_weights("w=1/3,1/4,1/4,1/6 rho=12\nw=1/4,1/4,1/4,1/4\nw=1/4,1/4,1/4,1/4 rho=2\n");
  const auto s = verify_formula(recs, 2);
  CHECK(s.passed == 1);
  CHECK(s.skipped == 1);
  CHECK(s.failed == 1);
  CHECK(s.items[0].l_edges == 11);
}

TEST_CASE("signature table templates") {
  const auto& f = props::fixture();
  for (const auto& s : f.signatures)
    for (int k = 1; k <= 5; ++k)
      for (const auto& q : s.forms(k)) CHECK(signature_formula(q) == s.sigma(k));
}

TEST_CASE("parallel_for covers every index and rethrows") {
  std::vector<int> hit(500, 0);
  parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] += 1; });
  CHECK(std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                    if (i == 7) throw Error(ErrorCode::CapExceeded, "boom");
                  }),
                  Error);
}
