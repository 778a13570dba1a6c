#pragma once

// Table data, generator lists and weight-system records loaded from text files.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "k3lat/discform.hpp"
#include "k3lat/expr.hpp"
#include "k3lat/singularity.hpp"

namespace k3lat {

/// Table files in load order; the file for id X is tables/X.tsv.
const std::vector<std::string>& lattice_table_ids();

/// One row of a lattice table:
/// `table_id rho delta group form lattice nos status as_printed [note]`, tab separated.
/// group is a comma list of cyclic orders, "1" for the trivial group, "*" when not printed;
/// form is "-" when the row prints a group in place of a form; status is ok or disputed.
struct TableEntry {
  std::string table_id;
  int rho = 0;
  Integer delta;
  std::optional<std::vector<Integer>> group;
  std::optional<FormDecomposition> form;
  std::string form_text;
  LatticeExpr lattice;
  std::string lattice_text;
  std::vector<int> nos;
  bool disputed = false;
  std::string as_printed;
  std::string note;
  std::size_t line = 0;

  /// "table:line lattice" for reports.
  std::string label() const;
};

std::vector<TableEntry> load_table(const std::filesystem::path& path);
/// Loads every id of lattice_table_ids() found under dir/tables.
std::vector<TableEntry> load_all_tables(const std::filesystem::path& data_dir);

/// A row of the signature table; forms may contain the parameter k as `k`, `2k` or `2k+1`.
struct SignatureEntry {
  std::vector<std::string> form_templates;
  std::string sigma_template;
  std::string as_printed;
  bool parametric() const;
  /// Substitutes k; throws DataFormatError on a malformed template.
  std::vector<FormDecomposition> forms(int k) const;
  int sigma(int k) const;
};

std::vector<SignatureEntry> load_signature_table(const std::filesystem::path& path);

/// `target ambient labeling generators as_printed status [corrected]`.
struct PropDefnEntry {
  FormDecomposition target;
  std::string target_text;
  int u_count = 0;
  int e8_count = 0;
  /// Name of the E8 labeling the generators are written against, "-" when the ambient has no E8.
  std::string labeling;
  std::vector<std::vector<Integer>> generators;
  std::string as_printed;
  bool disputed = false;
  std::optional<std::vector<std::vector<Integer>>> corrected;
  std::size_t line = 0;

  AmbientSpace ambient(const E8Labeling& l) const;
  /// Generators used when the lattice is referenced elsewhere: the corrected reading if any.
  const std::vector<std::vector<Integer>>& effective_generators() const;
};

std::vector<PropDefnEntry> load_propdefn(const std::filesystem::path& path);

/// Resolver for `S{form}` references backed by the PropDefn list. Each entry is
/// evaluated with its own labeling column.
std::function<GramLattice(const FormDecomposition&)> propdefn_resolver(std::vector<PropDefnEntry> entries);

/// `no=<int> w=s/t,s/t,s/t,s/t [rho=<int>] [delta=<int>]`, `#` starts a comment.
struct WeightRecord {
  std::optional<int> no;
  WeightSystem weights;
  std::optional<int> rho;
  std::optional<Integer> delta;
  std::size_t line = 0;
};

std::vector<WeightRecord> parse_weights(std::string_view text);
std::vector<WeightRecord> load_weights(const std::filesystem::path& path);

/// Data directory: K3LAT_DATA_DIR if set, else the compiled-in default.
std::filesystem::path default_data_dir();

}  // namespace k3lat
