#include "k3lat/verify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "k3lat/polytope.hpp"

namespace k3lat {

namespace {

std::string join(const std::vector<Integer>& v) {
  if (v.empty()) return "1";
  std::string out;
  for (const auto& x : v) out += (out.empty() ? "" : ",") + x.get_str();
  return out;
}

bool iso(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
  const Integer order = a.order();
  const std::uint64_t cap = std::max<std::uint64_t>(kIsoCap, order.fits_ulong_p() ? order.get_ui() : 0);
  return iso_test(a, b, cap).isomorphic;
}

Inertia expected_signature(const TableEntry& e) {
  if (e.table_id == "alattices" || e.table_id == "delattices") return {0, static_cast<std::size_t>(e.rho)};
  return {1, static_cast<std::size_t>(e.rho - 1)};
}

}  // namespace

bool signed_delta_table(const std::string& id) {
  return id == "alattices" || id == "delattices" || id == "hyperbolic" || id == "lpqr";
}

bool hyperbolic_family_table(const std::string& id) {
  return id == "rho1" || id == "delta1" || id == "prime" || id == "reclassify";
}

Uniqueness expected_uniqueness(int rho, const FiniteQuadraticForm& q) {
  if (rho >= 3) return Uniqueness::Unique;
  if (rho == 2 && q.is_trivial()) return Uniqueness::Unique;
  return Uniqueness::CriterionInapplicable;
}

bool EntryReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* EntryReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

EntryReport verify_entry(const TableEntry& e, const EvalContext& ctx) {
  EntryReport r;
  r.label = e.label();
  r.table_id = e.table_id;
  r.rho = e.rho;
  r.delta = e.delta;
  r.disputed = e.disputed;
  r.note = e.note;

  GramLattice lattice;
  try {
    lattice = evaluate(e.lattice, ctx);
  } catch (const Error& err) {
    r.checks.push_back({"construct", false, err.what()});
    return r;
  }
  const LatticeInvariants inv = invariants(lattice);
  r.invariants = inv;
  const FiniteQuadraticForm disc = discriminant_form(lattice);
  r.disc_group = disc.invariant_factors();

  r.checks.push_back({"rank", inv.rank == static_cast<std::size_t>(e.rho),
                      std::to_string(inv.rank) + " vs " + std::to_string(e.rho)});

  const bool signed_cmp = signed_delta_table(e.table_id);
  const bool det_ok = signed_cmp ? inv.det == e.delta : abs(inv.det) == abs(e.delta);
  r.checks.push_back({signed_cmp ? "det" : "|det|", det_ok, inv.det.get_str() + " vs " + e.delta.get_str()});

  const Inertia want = expected_signature(e);
  r.checks.push_back({"signature", inv.signature == want,
                      "(" + std::to_string(inv.signature.positive) + "," + std::to_string(inv.signature.negative) +
                          ") vs (" + std::to_string(want.positive) + "," + std::to_string(want.negative) + ")"});

  if (e.group) {
    const auto printed = invariant_factors_of(*e.group);
    r.checks.push_back({"group", printed == disc.invariant_factors(),
                        join(disc.invariant_factors()) + " vs " + join(printed)});
  }

  std::optional<FiniteQuadraticForm> target;
  if (e.form) {
    try {
      target = build_form(*e.form);
      r.checks.push_back({"form", iso(disc, *target), to_string(*e.form)});
    } catch (const Error& err) {
      r.checks.push_back({"form", false, err.what()});
    }
  }

  const auto& q = target ? *target : disc;
  const auto t_plus = static_cast<long>(want.positive);
  const auto t_minus = static_cast<long>(want.negative);
  const ExistenceReport ex = nikulin_exists(t_plus, t_minus, q);
  r.checks.push_back({"nikulin-exists", ex.exists, "sigma " + std::to_string(ex.sigma)});
  const UniquenessReport un = nikulin_unique(t_plus, t_minus, q);
  if (hyperbolic_family_table(e.table_id)) {
    const Uniqueness expect = expected_uniqueness(e.rho, q);
    r.checks.push_back({"nikulin-unique", un.verdict == expect,
                        std::string(to_string(un.verdict)) + " (expected " + std::string(to_string(expect)) + ")"});
  } else {
    r.checks.push_back({"nikulin-unique", true, std::string(to_string(un.verdict)) + " (informational)"});
  }
  return r;
}

const LabelingOutcome* PropDefnReport::under(const std::string& labeling) const {
  for (const auto& o : outcomes)
    if (o.labeling == labeling) return &o;
  return nullptr;
}

bool PropDefnReport::passes_somewhere() const {
  return std::any_of(outcomes.begin(), outcomes.end(), [](const LabelingOutcome& o) { return o.isomorphic; });
}

namespace {

LabelingOutcome evaluate_generators(const PropDefnEntry& e, const E8Labeling& l,
                                    const std::vector<std::vector<Integer>>& gens) {
  LabelingOutcome o;
  o.labeling = l.name;
  try {
    const GramLattice s = sublattice(e.ambient(l), gens);
    o.constructed = true;
    o.det = invariants(s).det;
    const FiniteQuadraticForm disc = discriminant_form(s);
    o.group = disc.invariant_factors();
    o.isomorphic = iso(disc, build_form(e.target));
  } catch (const Error& err) {
    o.error = err.what();
  }
  return o;
}

}  // namespace

PropDefnReport verify_propdefn(const PropDefnEntry& e, const std::vector<E8Labeling>& labelings) {
  PropDefnReport r;
  r.target = e.target_text;
  r.line = e.line;
  r.disputed = e.disputed;
  for (const auto& l : labelings) r.outcomes.push_back(evaluate_generators(e, l, e.generators));
  if (e.corrected) {
    const E8Labeling& l = e.labeling == "-" ? bourbaki_labeling() : labeling_by_name(e.labeling);
    r.corrected = evaluate_generators(e, l, *e.corrected);
  }
  return r;
}

std::vector<ReclassifyBlock> verify_reclassify(const std::vector<TableEntry>& entries, unsigned jobs) {
  std::vector<ReclassifyBlock> blocks;
  for (const auto& e : entries) {
    if (e.table_id != "reclassify") continue;
    if (blocks.empty() || blocks.back().rho != e.rho || blocks.back().delta != e.delta) {
      ReclassifyBlock b;
      b.rho = e.rho;
      b.delta = e.delta;
      blocks.push_back(std::move(b));
    }
    blocks.back().rows.push_back(&e);
  }

  parallel_for(blocks.size(), jobs, [&](std::size_t bi) {
    ReclassifyBlock& b = blocks[bi];
    const auto classes = enumerate_forms(b.rho, b.delta);
    for (const auto& c : classes) b.enumerated.push_back(to_string(c.decomposition));

    std::vector<std::optional<FiniteQuadraticForm>> printed;
    for (const auto* row : b.rows) printed.push_back(row->form ? std::optional(build_form(*row->form)) : std::nullopt);

    std::vector<bool> matched(classes.size(), false);
    for (std::size_t i = 0; i < printed.size(); ++i) {
      if (!printed[i]) continue;
      bool found = false;
      for (std::size_t c = 0; c < classes.size(); ++c) {
        if (!iso(*printed[i], classes[c].form)) continue;
        matched[c] = true;
        found = true;
        break;
      }
      if (!found) b.extra.push_back(b.rows[i]->form_text);
      for (std::size_t j = 0; j < i; ++j)
        if (printed[j] && iso(*printed[i], *printed[j])) b.duplicates.emplace_back(j, i);
    }
    for (std::size_t c = 0; c < classes.size(); ++c)
      if (!matched[c]) b.missing.push_back(b.enumerated[c]);
  });
  return blocks;
}

FormulaSummary verify_formula(const std::vector<WeightRecord>& records, unsigned jobs) {
  FormulaSummary s;
  s.items.resize(records.size());
  parallel_for(records.size(), jobs, [&](std::size_t i) {
    FormulaItem& item = s.items[i];
    item.record = &records[i];
    if (!records[i].rho) return;
    try {
      const NewtonPolytope poly = convex_hull(enumerate_points(records[i].weights));
      item.l_edges = edge_lattice_count(poly);
      item.report = verify_c2_identity(records[i].weights, *records[i].rho, item.l_edges);
    } catch (const Error& err) {
      item.error = err.what();
    }
  });
  for (const auto& item : s.items) {
    if (!item.record->rho) ++s.skipped;
    else if (item.report && item.report->passed()) ++s.passed;
    else ++s.failed;
  }
  return s;
}

std::vector<EllipticItem> verify_elliptic(const std::vector<TableEntry>& entries, const EvalContext& ctx, long bound,
                                          unsigned jobs) {
  std::vector<const TableEntry*> rows;
  for (const auto& e : entries)
    if (hyperbolic_family_table(e.table_id)) rows.push_back(&e);
  std::vector<EllipticItem> out(rows.size());
  parallel_for(rows.size(), jobs, [&](std::size_t i) {
    const TableEntry& e = *rows[i];
    EllipticItem& item = out[i];
    item.label = e.label();
    item.rho = e.rho;
    if (e.rho == 1) {
      item.skipped = true;
      item.passed = true;
      return;
    }
    item.expected = e.rho == 2 && abs(e.delta) == 5 ? IsotropyResult::Verdict::Anisotropic
                                                    : IsotropyResult::Verdict::Isotropic;
    try {
      item.result = find_isotropic(evaluate(e.lattice, ctx), bound);
      item.passed = item.result.verdict == item.expected;
    } catch (const Error& err) {
      item.error = err.what();
    }
  });
  return out;
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  std::vector<std::thread> pool;
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  for (unsigned t = 0; t < count; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(m);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace k3lat
