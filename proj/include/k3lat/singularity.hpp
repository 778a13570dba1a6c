#pragma once

// Invariants of quasi-homogeneous isolated hypersurface singularities in four variables.

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "k3lat/exact.hpp"

namespace k3lat {

class WeightSystem {
 public:
  /// Each weight must lie strictly between 0 and 1.
  explicit WeightSystem(const std::array<Rational, 4>& weights);

  /// Accepts `1/3,1/4,1/4,1/6` or the integral form `4,3,3,2@12`.
  static WeightSystem parse(std::string_view text);

  const std::array<Rational, 4>& weights() const noexcept { return w_; }
  /// N = lcm of the weight denominators.
  long level() const noexcept { return level_; }
  /// q_i = N * w_i.
  const std::array<long, 4>& integral() const noexcept { return q_; }
  long degree_sum() const;

  struct WellFormedness {
    bool gcd_all = false;
    bool gcd_triples = false;
    bool sorted = false;
    bool ok() const { return gcd_all && gcd_triples && sorted; }
  };
  WellFormedness well_formedness() const;

  std::string to_string() const;

 private:
  std::array<Rational, 4> w_;
  long level_ = 1;
  std::array<long, 4> q_{};
};

/// Finitely supported sum of c * t^(e/N).
class PuiseuxPolynomial {
 public:
  PuiseuxPolynomial() = default;
  explicit PuiseuxPolynomial(long level) : level_(level) {}

  long level() const noexcept { return level_; }
  /// Keys are numerators e of the exponent e/N; zero coefficients are never stored.
  const std::map<long, Integer>& coefficients() const noexcept { return c_; }

  void add(long numerator, const Integer& c);
  Integer coefficient(const Rational& exponent) const;
  Integer total() const;
  Rational min_exponent() const;
  Rational max_exponent() const;
  /// c_alpha = c_{s - alpha} for every alpha.
  bool is_symmetric(const Rational& s) const;

  /// Sorted (exponent, coefficient) pairs.
  std::vector<std::pair<Rational, Integer>> terms() const;
  std::string to_string() const;

 private:
  long level_ = 1;
  std::map<long, Integer> c_;
};

PuiseuxPolynomial poincare_series(const WeightSystem& w);

/// prod (1/w_i - 1); throws NonIntegralMu when not an integer.
Integer milnor_number(const WeightSystem& w);

struct SeifertBlock {
  enum class Kind { Rotation, PlusOne, MinusOne };

  Rational alpha;
  Integer multiplicity;
  Kind kind = Kind::Rotation;

  friend bool operator==(const SeifertBlock&, const SeifertBlock&) = default;
};

std::string_view to_string(SeifertBlock::Kind kind);

struct SeifertBlockForm {
  int n = 3;
  std::vector<SeifertBlock> blocks;

  std::size_t rank() const;
  /// Exact: rotation and +1 blocks have det 1, -1 blocks det -1.
  int det() const;
  /// The real block matrix, row-major, rank x rank.
  std::vector<double> dense() const;
};

SeifertBlockForm real_seifert(const PuiseuxPolynomial& series, int n = 3);
SeifertBlockForm real_seifert(const WeightSystem& w, int n = 3);

struct EigenDims {
  std::size_t plus_one = 0;
  std::size_t minus_one = 0;
  friend bool operator==(const EigenDims&, const EigenDims&) = default;
};

/// Eigenvalue +1 / -1 multiplicities read off from the block angles.
EigenDims eigen_dims(const SeifertBlockForm& s);

/// Floating-point checks of |det L| = 1, I = -L - (-1)^n L^t with I^t = (-1)^n I,
/// and T = (-1)^n L^{-1} L^t with T^t I T = I and L T = (-1)^n L^t.
struct SeifertIdentityReport {
  double det = 0;
  double intersection_symmetry_residual = 0;
  double monodromy_isometry_residual = 0;
  double monodromy_relation_residual = 0;
  bool passed = false;
};

SeifertIdentityReport check_seifert_identities(const SeifertBlockForm& s, double tolerance = 1e-9);

struct CyclotomicFactor {
  long d = 1;
  Integer exponent;
  friend bool operator==(const CyclotomicFactor&, const CyclotomicFactor&) = default;
};

struct CharPoly {
  std::vector<CyclotomicFactor> factors;
  /// Coefficients in increasing degree.
  std::vector<Integer> coefficients;
  /// Multiplicity of exp(2 pi i j / N) for j = 0..N-1.
  std::vector<Integer> eigen_multiplicities;

  std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
};

/// Phi_d(x) with integer coefficients in increasing degree.
std::vector<Integer> cyclotomic(long d);

CharPoly monodromy_char_poly(const PuiseuxPolynomial& series);
CharPoly monodromy_char_poly(const WeightSystem& w);

struct C2Report {
  Integer c2;
  long l_minus_3 = 0;
  long twenty_minus_rho = 0;
  bool c2_matches_edges = false;
  bool edges_match_rho = false;
  bool passed() const { return c2_matches_edges && edges_match_rho; }
};

C2Report verify_c2_identity(const WeightSystem& w, long rho, long l_edges);

}  // namespace k3lat
