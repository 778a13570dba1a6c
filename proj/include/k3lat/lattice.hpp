#pragma once

// Even integral lattices given by Gram matrices.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "k3lat/discform.hpp"
#include "k3lat/exact.hpp"

namespace k3lat {

class GramLattice {
 public:
  GramLattice() = default;
  /// Validates symmetry, even diagonal and det != 0.
  explicit GramLattice(IntMatrix gram, std::vector<std::string> labels = {});

  const IntMatrix& gram() const noexcept { return gram_; }
  const std::vector<std::string>& basis_labels() const noexcept { return labels_; }
  std::size_t rank() const noexcept { return gram_.rows(); }

  /// x^T G y.
  Integer product(const std::vector<Integer>& x, const std::vector<Integer>& y) const;

 private:
  IntMatrix gram_;
  std::vector<std::string> labels_;
};

enum class RootFamily { A, D, E };

GramLattice root_lattice(RootFamily family, int n);
GramLattice hyperbolic_U(const Integer& k = 1);
GramLattice rank_one(const Integer& k);
GramLattice direct_sum(const GramLattice& a, const GramLattice& b);
GramLattice twist(const GramLattice& l, const Integer& k);
/// Tree with arms of p-1, q-1, r-1 nodes around a centre.
GramLattice tshape(int p, int q, int r);

/// Node numbering of the E8 Dynkin diagram as a list of edges between labels 1..8.
struct E8Labeling {
  std::string name;
  std::vector<std::pair<int, int>> edges;
};

/// e1-e3-e4-e5-e6-e7-e8 with e2 on e4.
const E8Labeling& bourbaki_labeling();
/// All built-in labelings, Bourbaki first. "e1-branch" is the chain e2-...-e8 with e1 on e4;
/// "e8-branch" is the chain e1-...-e7 with e8 on e5.
const std::vector<E8Labeling>& standard_labelings();
/// Looks up a labeling by name; throws DataFormatError when unknown.
const E8Labeling& labeling_by_name(std::string_view name);

GramLattice e8_with_labeling(const E8Labeling& labeling);

/// U^a + E8^b with coordinates (u1, u2) per U copy followed by e1..e8 per E8 copy.
struct AmbientSpace {
  int u_count = 1;
  int e8_count = 1;
  E8Labeling labeling = bourbaki_labeling();

  std::size_t dimension() const { return 2 * static_cast<std::size_t>(u_count) + 8 * static_cast<std::size_t>(e8_count); }
  IntMatrix gram() const;
};

GramLattice sublattice(const AmbientSpace& ambient, const std::vector<std::vector<Integer>>& generators);

struct LatticeInvariants {
  std::size_t rank = 0;
  Inertia signature;
  Integer det;
  /// Signed; equal to det.
  Integer delta;
};

LatticeInvariants invariants(const GramLattice& l);

FiniteQuadraticForm discriminant_form(const GramLattice& l);

struct IsotropyResult {
  enum class Verdict { Isotropic, Anisotropic, Unknown };

  Verdict verdict = Verdict::Unknown;
  /// Primitive vector of norm zero; may be absent for the rank >= 5 theorem shortcut.
  std::optional<std::vector<Integer>> witness;
  /// Why the verdict holds: "search", "theorem-rank>=5", "definite", "binary-discriminant".
  std::string certificate;
  long bound = 0;
};

std::string_view to_string(IsotropyResult::Verdict v);

inline constexpr long kDefaultIsotropyBound = 10;

IsotropyResult find_isotropic(const GramLattice& l, long bound = kDefaultIsotropyBound);

}  // namespace k3lat
