#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "k3lat/catalog.hpp"
#include "k3lat/polytope.hpp"
#include "k3lat/verify.hpp"

using json = nlohmann::ordered_json;
using namespace k3lat;

namespace {

constexpr std::uint64_t kSignatureTableCap = 1u << 21;

struct Options {
  long bound = kDefaultIsotropyBound;
  std::string labeling;
  std::string data;
  std::string table;
  bool pretty = false;
  unsigned jobs = 1;
};

json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json integers_json(const std::vector<Integer>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(integer_json(x));
  return a;
}

std::string rational_string(const Rational& r) { return r.get_str(); }

// --pretty rendering: scalars inline, arrays of flat objects as aligned tables.

std::string scalar_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + scalar_text(j[i]);
    return s + "]";
  }
  if (j.is_object()) {
    std::string s = "{";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      s += (first ? "" : ", ") + it.key() + ": " + scalar_text(it.value());
      first = false;
    }
    return s + "}";
  }
  return j.dump();
}

bool flat_object(const json& j) {
  if (!j.is_object()) return false;
  for (const auto& v : j) {
    if (v.is_object()) return false;
    if (v.is_array() && std::any_of(v.begin(), v.end(), [](const json& x) { return x.is_structured(); })) return false;
  }
  return true;
}

void render(std::ostream& os, const json& j, const std::string& indent) {
  if (!j.is_object()) {
    os << indent << scalar_text(j) << "\n";
    return;
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    if (v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), flat_object)) {
      os << indent << it.key() << ":\n";
      std::vector<std::string> cols;
      for (const auto& row : v)
        for (auto c = row.begin(); c != row.end(); ++c)
          if (std::find(cols.begin(), cols.end(), c.key()) == cols.end()) cols.push_back(c.key());
      std::vector<std::size_t> width(cols.size());
      for (std::size_t c = 0; c < cols.size(); ++c) width[c] = cols[c].size();
      std::vector<std::vector<std::string>> cells;
      for (const auto& row : v) {
        std::vector<std::string> line;
        for (std::size_t c = 0; c < cols.size(); ++c) {
          line.push_back(row.contains(cols[c]) ? scalar_text(row[cols[c]]) : "");
          width[c] = std::max(width[c], line.back().size());
        }
        cells.push_back(std::move(line));
      }
      auto emit = [&](const std::vector<std::string>& line) {
        os << indent << "  ";
        for (std::size_t c = 0; c < line.size(); ++c)
          os << line[c] << std::string(width[c] - line[c].size() + (c + 1 < line.size() ? 2 : 0), ' ');
        os << "\n";
      };
      emit(cols);
      for (const auto& line : cells) emit(line);
    } else if (v.is_object() || (v.is_array() && std::any_of(v.begin(), v.end(), [](const json& x) {
                                   return x.is_structured();
                                 }))) {
      os << indent << it.key() << ":\n";
      if (v.is_object()) {
        render(os, v, indent + "  ");
      } else {
        for (const auto& x : v) {
          render(os, x, indent + "  ");
          os << indent << "  --\n";
        }
      }
    } else {
      os << indent << it.key() << ": " << scalar_text(v) << "\n";
    }
  }
}

void emit(const json& j, const Options& o) {
  if (o.pretty) render(std::cout, j, "");
  else std::cout << j.dump() << "\n";
}

const E8Labeling& chosen_labeling(const Options& o) {
  return o.labeling.empty() || o.labeling == "all" ? bourbaki_labeling() : labeling_by_name(o.labeling);
}

EvalContext context(const Options& o) {
  EvalContext ctx;
  ctx.labeling = chosen_labeling(o);
  const auto path = default_data_dir() / "propdefn.tsv";
  if (std::filesystem::exists(path)) ctx.named = propdefn_resolver(load_propdefn(path));
  return ctx;
}

json signature_json(const Inertia& s) { return json::array({s.positive, s.negative}); }

json checks_json(const std::vector<ConditionCheck>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back({{"name", c.name}, {"holds", c.holds}, {"detail", c.detail}});
  return a;
}

// lattice

int cmd_lattice_info(const std::string& expr, const Options& o) {
  const GramLattice l = evaluate(parse_lattice_expr(expr), context(o));
  const LatticeInvariants inv = invariants(l);
  const FiniteQuadraticForm q = discriminant_form(l);
  json out;
  out["rank"] = inv.rank;
  out["signature"] = signature_json(inv.signature);
  out["det"] = integer_json(inv.det);
  out["disc_group"] = integers_json(q.invariant_factors());
  std::optional<FormDecomposition> d;
  try {
    d = decompose(q, std::max<std::uint64_t>(kIsoCap, q.order().fits_ulong_p() ? q.order().get_ui() : 0));
  } catch (const Error&) {
  }
  out["disc_form"] = d ? json(to_string(*d)) : json(nullptr);
  emit(out, o);
  return 0;
}

int cmd_lattice_isotropic(const std::string& expr, const Options& o) {
  const GramLattice l = evaluate(parse_lattice_expr(expr), context(o));
  const IsotropyResult r = find_isotropic(l, o.bound);
  json out;
  out["verdict"] = std::string(to_string(r.verdict));
  out["witness"] = r.witness ? integers_json(*r.witness) : json(nullptr);
  if (r.witness) out["witness_norm"] = integer_json(l.product(*r.witness, *r.witness));
  out["certificate"] = r.certificate;
  out["bound"] = r.bound;
  emit(out, o);
  return 0;
}

// qform

int cmd_qform_sig(const std::string& text, const Options& o) {
  const FormDecomposition d = parse_form_expr(text);
  const FiniteQuadraticForm q = build_form(d);
  const int formula = signature_formula(d);
  const int gauss = signature_gauss(q);
  const GaussSum g = gauss_sum(q);
  json out;
  out["form"] = to_string(d);
  out["order"] = integer_json(q.order());
  out["group"] = integers_json(q.invariant_factors());
  out["sigma_formula"] = formula;
  out["sigma_gauss"] = gauss;
  out["agree"] = formula == gauss;
  out["gauss_sum_diagnostic"] = {{"re", g.re}, {"im", g.im}, {"magnitude", g.magnitude()}};
  emit(out, o);
  return formula == gauss ? 0 : 1;
}

int cmd_qform_iso(const std::string& a, const std::string& b, const Options& o) {
  const FiniteQuadraticForm qa = build_form(parse_form_expr(a));
  const FiniteQuadraticForm qb = build_form(parse_form_expr(b));
  const Integer order = qa.order();
  const IsoResult r =
      iso_test(qa, qb, std::max<std::uint64_t>(kIsoCap, order.fits_ulong_p() ? order.get_ui() : 0));
  json out;
  out["isomorphic"] = r.isomorphic;
  if (r.isomorphic) {
    json imgs = json::array();
    for (const auto& v : r.images) imgs.push_back(integers_json(v));
    out["images"] = imgs;
  }
  emit(out, o);
  return 0;
}

int cmd_qform_enumerate(int rho, const std::string& delta, const Options& o) {
  const auto classes = enumerate_forms(rho, Integer(delta));
  json out;
  out["rho"] = rho;
  out["delta"] = integer_json(Integer(delta));
  out["sigma"] = ((2 - rho) % 8 + 8) % 8;
  json list = json::array();
  for (const auto& c : classes)
    list.push_back({{"form", to_string(c.decomposition)}, {"group", integers_json(c.form.invariant_factors())}});
  out["classes"] = list;
  emit(out, o);
  return 0;
}

int cmd_nikulin(const std::string& form, long t_plus, long t_minus, const Options& o) {
  const FiniteQuadraticForm q = build_form(parse_form_expr(form));
  const ExistenceReport ex = nikulin_exists(t_plus, t_minus, q);
  const UniquenessReport un = nikulin_unique(t_plus, t_minus, q);
  json out;
  out["signature"] = json::array({t_plus, t_minus});
  out["sigma"] = ex.sigma;
  out["length"] = q.length();
  out["exists"] = ex.exists;
  out["existence_conditions"] = checks_json(ex.conditions);
  out["uniqueness"] = std::string(to_string(un.verdict));
  out["uniqueness_conditions"] = checks_json(un.conditions);
  emit(out, o);
  return 0;
}

// sing

json weights_json(const WeightSystem& w) {
  json a = json::array();
  for (const auto& x : w.weights()) a.push_back(rational_string(x));
  return a;
}

int cmd_sing_poincare(const std::string& text, const Options& o) {
  const WeightSystem w = WeightSystem::parse(text);
  const PuiseuxPolynomial p = poincare_series(w);
  json out;
  out["weights"] = weights_json(w);
  out["level"] = w.level();
  out["mu"] = integer_json(milnor_number(w));
  json series = json::object();
  for (const auto& [e, c] : p.terms()) series[rational_string(e)] = integer_json(c);
  out["series"] = series;
  out["text"] = p.to_string();
  out["symmetric"] = p.is_symmetric(Rational(4));
  emit(out, o);
  return 0;
}

int cmd_sing_seifert(const std::string& text, const Options& o) {
  const WeightSystem w = WeightSystem::parse(text);
  const SeifertBlockForm s = real_seifert(w);
  const EigenDims e = eigen_dims(s);
  const SeifertIdentityReport id = check_seifert_identities(s);
  json blocks = json::array();
  for (const auto& b : s.blocks)
    blocks.push_back({{"kind", std::string(to_string(b.kind))},
                      {"alpha", rational_string(b.alpha)},
                      {"multiplicity", integer_json(b.multiplicity)}});
  json out;
  out["weights"] = weights_json(w);
  out["rank"] = s.rank();
  out["det"] = s.det();
  out["blocks"] = blocks;
  out["eigen_dims"] = json::array({e.plus_one, e.minus_one});
  out["identities"] = {{"det", id.det},
                       {"intersection_symmetry_residual", id.intersection_symmetry_residual},
                       {"monodromy_isometry_residual", id.monodromy_isometry_residual},
                       {"monodromy_relation_residual", id.monodromy_relation_residual},
                       {"passed", id.passed}};
  emit(out, o);
  return id.passed ? 0 : 1;
}

int cmd_sing_charpoly(const std::string& text, const Options& o) {
  const WeightSystem w = WeightSystem::parse(text);
  const CharPoly c = monodromy_char_poly(w);
  json factors = json::array();
  for (const auto& f : c.factors) factors.push_back({{"d", f.d}, {"exponent", integer_json(f.exponent)}});
  json out;
  out["weights"] = weights_json(w);
  out["degree"] = c.degree();
  out["factors"] = factors;
  out["coefficients"] = integers_json(c.coefficients);
  emit(out, o);
  return 0;
}

int cmd_sing_newton(const std::string& text, const Options& o) {
  const WeightSystem w = WeightSystem::parse(text);
  const NewtonPolytope p = convex_hull(enumerate_points(w));
  json vertices = json::array();
  for (const auto& v : p.vertices) vertices.push_back(v);
  json edges = json::array();
  for (const auto& [a, b] : p.edges) edges.push_back(json::array({a, b}));
  json out;
  out["weights"] = weights_json(w);
  out["integral"] = w.integral();
  out["level"] = w.level();
  out["points"] = p.points.size();
  out["vertices"] = vertices;
  out["edges"] = edges;
  out["facets"] = p.facets.size();
  out["l_edges"] = edge_lattice_count(p);
  emit(out, o);
  return 0;
}

// verify

json entry_json(const EntryReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  json out;
  out["label"] = r.label;
  out["rho"] = r.rho;
  out["delta"] = integer_json(r.delta);
  out["passed"] = r.passed();
  out["disputed"] = r.disputed;
  out["checks"] = checks;
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

int cmd_verify_tables(const Options& o) {
  const auto dir = default_data_dir();
  const bool all = o.table.empty() || o.table == "all";
  const auto& ids = lattice_table_ids();
  if (!all && o.table != "quadraticf" && std::find(ids.begin(), ids.end(), o.table) == ids.end())
    throw Error(ErrorCode::DataFormatError, "unknown table '" + o.table + "'");

  json out;
  std::size_t failures = 0;

  if (all || o.table == "quadraticf") {
    json rows = json::array();
    for (const auto& e : load_signature_table(dir / "tables" / "quadraticf.tsv")) {
      bool ok = true;
      json ks = json::array();
      for (int k = 1; k <= (e.parametric() ? 5 : 1); ++k) {
        for (const auto& d : e.forms(k)) {
          const int f = signature_formula(d);
          const int g = signature_gauss(build_form(d), kSignatureTableCap);
          const bool pass = f == e.sigma(k) && g == e.sigma(k);
          ok = ok && pass;
          ks.push_back({{"form", to_string(d)}, {"expected", e.sigma(k)}, {"formula", f}, {"gauss", g}});
        }
      }
      if (!ok) ++failures;
      rows.push_back({{"printed", e.as_printed}, {"passed", ok}, {"instances", ks}});
    }
    out["quadraticf"] = rows;
  }

  std::vector<TableEntry> entries;
  for (const auto& id : ids)
    if (all || o.table == id) {
      auto rows = load_table(dir / "tables" / (id + ".tsv"));
      entries.insert(entries.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
    }
  const EvalContext ctx = context(o);
  std::vector<EntryReport> reports(entries.size());
  parallel_for(entries.size(), o.jobs, [&](std::size_t i) { reports[i] = verify_entry(entries[i], ctx); });

  std::map<std::string, json> by_table;
  std::size_t passed = 0;
  std::size_t disputed_failed = 0;
  for (const auto& r : reports) {
    if (!by_table.count(r.table_id)) by_table[r.table_id] = json::array();
    by_table[r.table_id].push_back(entry_json(r));
    if (r.passed()) ++passed;
    else if (r.disputed) ++disputed_failed;
    else ++failures;
  }
  for (const auto& id : ids)
    if (by_table.count(id)) out[id] = by_table[id];

  if (all || o.table == "reclassify") {
    json blocks = json::array();
    for (const auto& b : verify_reclassify(entries, o.jobs))
      blocks.push_back({{"rho", b.rho},
                        {"delta", integer_json(b.delta)},
                        {"printed", b.rows.size()},
                        {"enumerated", b.enumerated},
                        {"missing", b.missing},
                        {"extra", b.extra},
                        {"duplicates", b.duplicates.size()},
                        {"exact", b.exact()}});
    out["reclassify_blocks"] = blocks;
  }

  out["summary"] = {{"rows", reports.size()},
                    {"passed", passed},
                    {"failed", failures},
                    {"disputed_failed", disputed_failed}};
  emit(out, o);
  return failures == 0 ? 0 : 1;
}

int cmd_verify_propdefn(const Options& o) {
  const auto entries = load_propdefn(default_data_dir() / "propdefn.tsv");
  std::vector<E8Labeling> labelings;
  if (o.labeling.empty() || o.labeling == "all") labelings = standard_labelings();
  else labelings.push_back(labeling_by_name(o.labeling));

  std::vector<PropDefnReport> reports(entries.size());
  parallel_for(entries.size(), o.jobs, [&](std::size_t i) { reports[i] = verify_propdefn(entries[i], labelings); });

  auto outcome_json = [](const LabelingOutcome& x) {
    json j;
    j["labeling"] = x.labeling;
    j["isomorphic"] = x.isomorphic;
    if (x.constructed) {
      j["det"] = integer_json(x.det);
      j["group"] = integers_json(x.group);
    } else {
      j["error"] = x.error;
    }
    return j;
  };

  json rows = json::array();
  std::size_t failures = 0;
  for (const auto& r : reports) {
    json outcomes = json::array();
    for (const auto& x : r.outcomes) outcomes.push_back(outcome_json(x));
    json row;
    row["target"] = r.target;
    row["line"] = r.line;
    row["disputed"] = r.disputed;
    row["passed"] = r.passes_somewhere();
    row["outcomes"] = outcomes;
    if (r.corrected) row["corrected"] = outcome_json(*r.corrected);
    if (!r.passes_somewhere() && !r.disputed) ++failures;
    rows.push_back(row);
  }
  json out;
  out["entries"] = rows;
  json names = json::array();
  for (const auto& l : labelings) names.push_back(l.name);
  out["labelings"] = names;
  out["summary"] = {{"entries", reports.size()}, {"failed", failures}};
  emit(out, o);
  return failures == 0 ? 0 : 1;
}

std::vector<WeightRecord> builtin_weight_records() {
  return parse_weights(
      "w=1/3,1/4,1/4,1/6 rho=12\n"
      "w=1/4,1/4,1/4,1/4 rho=1\n"
      "w=1/6,1/6,1/6,1/2 rho=1\n");
}

int cmd_verify_c2(const Options& o) {
  const auto records = o.data.empty() ? builtin_weight_records() : load_weights(o.data);
  const FormulaSummary s = verify_formula(records, o.jobs);
  json items = json::array();
  for (const auto& item : s.items) {
    json j;
    j["no"] = item.record->no ? json(*item.record->no) : json(nullptr);
    j["weights"] = item.record->weights.to_string();
    j["rho"] = item.record->rho ? json(*item.record->rho) : json(nullptr);
    if (!item.record->rho) {
      j["status"] = "skipped";
    } else if (item.report) {
      j["c2"] = integer_json(item.report->c2);
      j["l_edges"] = item.l_edges;
      j["l_minus_3"] = item.report->l_minus_3;
      j["twenty_minus_rho"] = item.report->twenty_minus_rho;
      j["status"] = item.report->passed() ? "pass" : "fail";
    } else {
      j["status"] = "fail";
      j["error"] = item.error;
    }
    items.push_back(j);
  }
  json out;
  out["source"] = o.data.empty() ? "builtin" : o.data;
  out["records"] = items;
  out["summary"] = {{"passed", s.passed}, {"failed", s.failed}, {"skipped", s.skipped}};
  emit(out, o);
  return s.failed == 0 ? 0 : 1;
}

int cmd_verify_elliptic(const Options& o) {
  const auto entries = load_all_tables(default_data_dir());
  const auto items = verify_elliptic(entries, context(o), o.bound, o.jobs);
  json rows = json::array();
  std::size_t failures = 0;
  for (const auto& it : items) {
    json j;
    j["label"] = it.label;
    j["rho"] = it.rho;
    if (it.skipped) {
      j["status"] = "skipped";
    } else {
      j["expected"] = std::string(to_string(it.expected));
      j["verdict"] = it.error.empty() ? json(std::string(to_string(it.result.verdict))) : json(nullptr);
      j["certificate"] = it.result.certificate;
      j["witness"] = it.result.witness ? integers_json(*it.result.witness) : json(nullptr);
      j["status"] = it.passed ? "pass" : "fail";
      if (!it.error.empty()) j["error"] = it.error;
    }
    if (!it.passed) ++failures;
    rows.push_back(j);
  }
  json out;
  out["lattices"] = rows;
  out["summary"] = {{"checked", items.size()}, {"failed", failures}};
  emit(out, o);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice and singularity invariants with table verification", "k3lat"};
  app.require_subcommand(1);
  Options o;
  if (const char* j = std::getenv("K3LAT_JOBS"); j && *j) o.jobs = static_cast<unsigned>(std::max(1, std::atoi(j)));

  auto add_common = [&](CLI::App* c) {
    c->add_option("--bound", o.bound, "Coordinate bound for isotropic vector search")->envname("K3LAT_BOUND");
    c->add_option("--labeling", o.labeling, "E8 node labeling, or 'all'")->envname("K3LAT_LABELING");
    c->add_option("--data", o.data, "Weight-system data file")->envname("K3LAT_DATA");
    c->add_option("--table", o.table, "Restrict verification to one table")->envname("K3LAT_TABLE");
    c->add_flag("--pretty", o.pretty, "Aligned text instead of JSON")->envname("K3LAT_PRETTY");
    c->add_option("--jobs", o.jobs, "Worker threads for verification")->envname("K3LAT_JOBS");
  };

  std::string a1, a2;
  long n1 = 0, n2 = 0;
  int rho = 0;
  std::string delta;
  std::function<int()> action;

  auto* lattice = app.add_subcommand("lattice", "Even lattices from expressions")->require_subcommand(1);
  auto* l_info = lattice->add_subcommand("info", "Rank, signature, determinant, discriminant form");
  l_info->add_option("expr", a1)->required();
  add_common(l_info);
  l_info->callback([&] { action = [&] { return cmd_lattice_info(a1, o); }; });
  auto* l_iso = lattice->add_subcommand("isotropic", "Search for a primitive vector of norm zero");
  l_iso->add_option("expr", a1)->required();
  add_common(l_iso);
  l_iso->callback([&] { action = [&] { return cmd_lattice_isotropic(a1, o); }; });

  auto* qform = app.add_subcommand("qform", "Finite quadratic forms")->require_subcommand(1);
  auto* q_sig = qform->add_subcommand("sig", "Signature mod 8 by formula and by Gauss sum");
  q_sig->add_option("form", a1)->required();
  add_common(q_sig);
  q_sig->callback([&] { action = [&] { return cmd_qform_sig(a1, o); }; });
  auto* q_iso = qform->add_subcommand("iso", "Isomorphism test");
  q_iso->add_option("a", a1)->required();
  q_iso->add_option("b", a2)->required();
  add_common(q_iso);
  q_iso->callback([&] { action = [&] { return cmd_qform_iso(a1, a2, o); }; });
  auto* q_enum = qform->add_subcommand("enumerate", "Forms of signature 2 - rho on groups of order delta");
  q_enum->add_option("rho", rho)->required();
  q_enum->add_option("delta", delta)->required();
  add_common(q_enum);
  q_enum->callback([&] { action = [&] { return cmd_qform_enumerate(rho, delta, o); }; });

  auto* nikulin = app.add_subcommand("nikulin", "Existence and uniqueness criteria")->require_subcommand(1);
  auto* n_check = nikulin->add_subcommand("check", "Evaluate both criteria for (t+, t-, q)");
  n_check->add_option("form", a1)->required();
  n_check->add_option("t_plus", n1)->required();
  n_check->add_option("t_minus", n2)->required();
  add_common(n_check);
  n_check->callback([&] { action = [&] { return cmd_nikulin(a1, n1, n2, o); }; });

  auto* sing = app.add_subcommand("sing", "Quasi-homogeneous singularities")->require_subcommand(1);
  auto add_sing = [&](const char* name, const char* help, int (*fn)(const std::string&, const Options&)) {
    auto* c = sing->add_subcommand(name, help);
    c->add_option("weights", a1, "s/t,s/t,s/t,s/t or q1,q2,q3,q4@N")->required();
    add_common(c);
    c->callback([&, fn] { action = [&, fn] { return fn(a1, o); }; });
  };
  add_sing("poincare", "Poincare series of the Milnor algebra", cmd_sing_poincare);
  add_sing("seifert", "Real Seifert form blocks", cmd_sing_seifert);
  add_sing("charpoly", "Monodromy characteristic polynomial", cmd_sing_charpoly);
  add_sing("newton", "Newton polytope and edge lattice points", cmd_sing_newton);

  auto* verify = app.add_subcommand("verify", "Verify the data tables")->require_subcommand(1);
  auto add_verify = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    auto* c = verify->add_subcommand(name, help);
    add_common(c);
    c->callback([&, fn] { action = [&, fn] { return fn(o); }; });
  };
  add_verify("tables", "Every table row", cmd_verify_tables);
  add_verify("propdefn", "Representation lattices under E8 labelings", cmd_verify_propdefn);
  add_verify("c2", "c2 = l(edges) - 3 = 20 - rho", cmd_verify_c2);
  add_verify("elliptic", "Isotropy of the hyperbolic table lattices", cmd_verify_elliptic);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (o.jobs == 0) o.jobs = std::max(1u, std::thread::hardware_concurrency());

  try {
    return action ? action() : 2;
  } catch (const Error& e) {
    std::cerr << "k3lat: " << e.what() << "\n";
    return 2;
  }
}
