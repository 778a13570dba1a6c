#pragma once

// Finite quadratic forms q : G -> Q/2Z with bilinear form b : G x G -> Q/Z.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "k3lat/exact.hpp"

namespace k3lat {

/// One of the generating forms w^eps_{p,k}, u_k, v_k.
struct FundamentalFormSpec {
  enum class Kind { W, U, V };

  Kind kind = Kind::W;
  int p = 2;
  int k = 1;
  int eps = 1;

  static FundamentalFormSpec w(int p, int k, int eps) { return {Kind::W, p, k, eps}; }
  static FundamentalFormSpec u(int k) { return {Kind::U, 2, k, 1}; }
  static FundamentalFormSpec v(int k) { return {Kind::V, 2, k, 1}; }

  std::string to_string() const;
  friend bool operator==(const FundamentalFormSpec&, const FundamentalFormSpec&) = default;
};

/// A formal orthogonal sum of fundamental forms; empty means the trivial form.
using FormDecomposition = std::vector<FundamentalFormSpec>;

std::string to_string(const FormDecomposition& forms);

/// Grammar: `w(p,k,e)`, `u(k)`, `v(k)`, `triv`, `q1 | q2`, and `q^n` for n-fold sums.
FormDecomposition parse_form_expr(std::string_view text);

class FiniteQuadraticForm {
 public:
  /// The form on the trivial group.
  FiniteQuadraticForm() = default;

  /// Normalizes the group Z^n / relations * Z^n with q(x) = x^T values x mod 2
  /// and b(x, y) = x^T values y mod 1 to an invariant-factor presentation.
  static FiniteQuadraticForm from_presentation(const IntMatrix& relations, const RatMatrix& values);

  const std::vector<Integer>& invariant_factors() const noexcept { return d_; }
  /// Diagonal q(g_i) in [0, 2), off-diagonal b(g_i, g_j) in [0, 1).
  const RatMatrix& value_matrix() const noexcept { return v_; }
  std::vector<Rational> q_values() const;
  /// b(g_i, g_j) in [0, 1), including the diagonal.
  RatMatrix bilinear() const;

  Integer order() const;
  std::size_t length() const noexcept { return d_.size(); }
  bool is_trivial() const noexcept { return d_.empty(); }

  /// q(x) in [0, 2) for an element given by generator coefficients.
  Rational q(const std::vector<Integer>& x) const;
  /// b(x, y) in [0, 1).
  Rational b(const std::vector<Integer>& x, const std::vector<Integer>& y) const;

 private:
  std::vector<Integer> d_;
  RatMatrix v_;
};

FiniteQuadraticForm make_fundamental(const FundamentalFormSpec& spec);
FiniteQuadraticForm orth_sum(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);
FiniteQuadraticForm build_form(const FormDecomposition& forms);

/// Signature mod 8 from the closed formulas for each summand.
int signature_formula(const FundamentalFormSpec& spec);
int signature_formula(const FormDecomposition& forms);

inline constexpr std::uint64_t kGaussSumCap = 1u << 16;
inline constexpr std::uint64_t kIsoCap = 1024;

/// Signature mod 8 from the phase of the Gauss sum over all group elements.
int signature_gauss(const FiniteQuadraticForm& q, std::uint64_t cap = kGaussSumCap);

/// Complex Gauss sum sum_x exp(pi i q(x)) (diagnostics only).
struct GaussSum {
  double re = 0;
  double im = 0;
  double magnitude() const;
};
GaussSum gauss_sum(const FiniteQuadraticForm& q, std::uint64_t cap = kGaussSumCap);

std::size_t length(const FiniteQuadraticForm& q);

struct IsoResult {
  bool isomorphic = false;
  /// Images of the generators of the first form, as coordinates in the second.
  std::vector<std::vector<Integer>> images;
};

IsoResult iso_test(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b,
                   std::uint64_t cap = kIsoCap);

struct ConditionCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct ExistenceReport {
  bool exists = false;
  int sigma = 0;
  std::vector<ConditionCheck> conditions;
};

enum class Uniqueness { Unique, CriterionInapplicable };
std::string_view to_string(Uniqueness u);

struct UniquenessReport {
  Uniqueness verdict = Uniqueness::CriterionInapplicable;
  int sigma = 0;
  std::vector<ConditionCheck> conditions;
};

ExistenceReport nikulin_exists(long t_plus, long t_minus, const FiniteQuadraticForm& q);
UniquenessReport nikulin_unique(long t_plus, long t_minus, const FiniteQuadraticForm& q);

struct EnumeratedForm {
  FormDecomposition decomposition;
  FiniteQuadraticForm form;
  int sigma = 0;
};

/// All isomorphism classes of forms on groups of order delta with
/// signature 2 - rho mod 8 and length at most rho.
std::vector<EnumeratedForm> enumerate_forms(int rho, const Integer& delta);

/// A decomposition into fundamental forms isomorphic to q, found by search over the
/// decompositions compatible with its invariant factors; nullopt if none matches.
std::optional<FormDecomposition> decompose(const FiniteQuadraticForm& q, std::uint64_t cap = kIsoCap);

/// Invariant factors of an abelian group given by arbitrary cyclic orders.
std::vector<Integer> invariant_factors_of(const std::vector<Integer>& cyclic_orders);

/// Prime factorization by trial division; pairs (p, exponent) in increasing p.
std::vector<std::pair<Integer, int>> factorize(const Integer& n);

}  // namespace k3lat
