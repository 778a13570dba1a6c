#pragma once

// Lattice expression language.
//
//   expr    := term ('+' term)*
//   term    := [int '*'] atom ['^' int]
//   atom    := 'U' ['(' int ')'] | '<' int '>' | ('A'|'D'|'E') ('(' int ')' | int)
//            | 'T(' int ',' int ',' int ')' | 'sub(' ambient (';' vector)+ ')'
//            | '[[' ints '],[' ints ']...]' | 'S{' form '}' | '(' expr ')'
//   ambient := ('U' | 'E8') ['^' int] ...       e.g. "U E8", "U^2 E8^2", "E8"
//   vector  := comma-separated integers, or a combination such as "u1+3u2-e4"
//
// `k*L` is the twist L(k); `L^n` is the n-fold orthogonal sum.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "k3lat/discform.hpp"
#include "k3lat/lattice.hpp"

namespace k3lat {

struct LatticeExpr {
  enum class Kind { U, RankOne, Root, TShape, Sub, Gram, Named, Sum, Twist, Power };

  Kind kind = Kind::Sum;
  Integer k = 1;  // U(k), <k>, twist factor, power
  RootFamily family = RootFamily::A;
  int n = 0;
  std::array<int, 3> pqr{};
  int u_count = 0;
  int e8_count = 0;
  std::vector<std::vector<Integer>> vectors;
  IntMatrix gram;
  FormDecomposition form;
  std::vector<LatticeExpr> children;

  std::string to_string() const;
};

/// Throws ParseError carrying the byte offset of the failure.
LatticeExpr parse_lattice_expr(std::string_view text);

/// Parses one generator in an ambient with the given numbers of U and E8 copies.
/// Indices in combinations run across copies: u3 is the first vector of the second U.
std::vector<Integer> parse_ambient_vector(std::string_view text, int u_count, int e8_count);

struct EvalContext {
  /// Labeling used for the E8 summands of `sub(...)` ambients.
  E8Labeling labeling = bourbaki_labeling();
  /// Resolves `S{form}` to a concrete lattice; unset means such references are errors.
  std::function<GramLattice(const FormDecomposition&)> named;
};

GramLattice evaluate(const LatticeExpr& expr, const EvalContext& ctx = {});

}  // namespace k3lat
