#pragma once

// Verification drivers over the catalog: table rows, representation lattices,
// reclassification blocks, the c2 identity and isotropy.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "k3lat/catalog.hpp"
#include "k3lat/lattice.hpp"

namespace k3lat {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Tables whose discriminant numbers are compared with sign.
bool signed_delta_table(const std::string& table_id);
/// Tables of lattices of signature (1, rho - 1) attached to weight systems.
bool hyperbolic_family_table(const std::string& table_id);

/// Uniqueness verdict the proof split asks for: rho >= 3 Unique; rho = 1 inapplicable;
/// rho = 2 settled by explicit computation, where the criterion applies only to a trivial group.
Uniqueness expected_uniqueness(int rho, const FiniteQuadraticForm& q);

struct EntryReport {
  std::string label;
  std::string table_id;
  int rho = 0;
  Integer delta;
  bool disputed = false;
  std::vector<Check> checks;
  std::optional<LatticeInvariants> invariants;
  std::vector<Integer> disc_group;
  std::string note;

  bool passed() const;
  const Check* find(const std::string& name) const;
};

EntryReport verify_entry(const TableEntry& e, const EvalContext& ctx);

struct LabelingOutcome {
  std::string labeling;
  bool constructed = false;
  std::string error;
  Integer det;
  std::vector<Integer> group;
  bool isomorphic = false;
};

struct PropDefnReport {
  std::string target;
  std::size_t line = 0;
  bool disputed = false;
  std::vector<LabelingOutcome> outcomes;
  /// The corrected reading under the entry's own labeling, when the data carries one.
  std::optional<LabelingOutcome> corrected;

  const LabelingOutcome* under(const std::string& labeling) const;
  bool passes_somewhere() const;
};

PropDefnReport verify_propdefn(const PropDefnEntry& e, const std::vector<E8Labeling>& labelings);

struct ReclassifyBlock {
  int rho = 0;
  Integer delta;
  /// Printed rows of the block.
  std::vector<const TableEntry*> rows;
  /// Classes found by enumeration, as canonical decompositions.
  std::vector<std::string> enumerated;
  /// Enumerated classes not matched by any printed form.
  std::vector<std::string> missing;
  /// Printed forms not isomorphic to any enumerated class.
  std::vector<std::string> extra;
  /// Pairs of printed rows (by index in rows) with isomorphic forms.
  std::vector<std::pair<std::size_t, std::size_t>> duplicates;

  bool exact() const { return missing.empty() && extra.empty(); }
};

/// Groups the reclassification rows by (rho, delta) in order of appearance.
std::vector<ReclassifyBlock> verify_reclassify(const std::vector<TableEntry>& entries, unsigned jobs = 1);

struct FormulaItem {
  const WeightRecord* record = nullptr;
  std::optional<C2Report> report;
  long l_edges = 0;
  std::string error;
};

struct FormulaSummary {
  std::vector<FormulaItem> items;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
};

/// c2 = l(edges) - 3 = 20 - rho for every record carrying a rho claim.
FormulaSummary verify_formula(const std::vector<WeightRecord>& records, unsigned jobs = 1);

struct EllipticItem {
  std::string label;
  int rho = 0;
  bool skipped = false;
  IsotropyResult result;
  IsotropyResult::Verdict expected = IsotropyResult::Verdict::Isotropic;
  bool passed = false;
  std::string error;
};

/// Isotropy of every lattice in the rank-one, unimodular, prime and reclassification tables.
std::vector<EllipticItem> verify_elliptic(const std::vector<TableEntry>& entries, const EvalContext& ctx,
                                          long bound = kDefaultIsotropyBound, unsigned jobs = 1);

/// Runs fn(i) for i in [0, n) on up to jobs threads; results are the caller's to order.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace k3lat
