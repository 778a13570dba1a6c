#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "k3lat/catalog.hpp"
#include "k3lat/expr.hpp"

namespace props {

struct PropertyResult {
  std::string name;
  std::size_t instances = 0;
  std::vector<std::string> failures;

  bool passed() const { return instances >= 100 && failures.empty(); }
  std::string summary() const;
};

PropertyResult snf_reconstruction(std::uint64_t seed, std::size_t count);
PropertyResult inertia_congruence(std::uint64_t seed, std::size_t count);
/// disc(L + M) against disc(L) | disc(M) for every table lattice L and a rotating small M.
PropertyResult discform_additivity(const std::vector<k3lat::TableEntry>& entries, const k3lat::EvalContext& ctx);
/// |Gauss sum| = sqrt|G| over the printed forms, the table lattices' discriminant forms
/// and the signature table at k = 1..5.
PropertyResult gauss_magnitude(const std::vector<k3lat::TableEntry>& entries,
                               const std::vector<k3lat::SignatureEntry>& signatures, const k3lat::EvalContext& ctx);
/// Random Brieskorn-Pham exponents: symmetry about 4, agreement with the monomial basis, sum = mu.
PropertyResult poincare_symmetry(std::uint64_t seed, std::size_t count);
/// Every edge of every hull for small integral weights: gcd count against points on the segment,
/// and edge_lattice_count against the union of those points.
PropertyResult edge_count_agreement(long max_level);

struct Fixture {
  std::vector<k3lat::TableEntry> entries;
  std::vector<k3lat::SignatureEntry> signatures;
  std::vector<k3lat::PropDefnEntry> propdefn;
  k3lat::EvalContext ctx;
};

/// Tables and resolver from the default data directory, loaded once.
const Fixture& fixture();

}  // namespace props
