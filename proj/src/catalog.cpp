#include "k3lat/catalog.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace k3lat {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t at = s.find(sep, start);
    out.emplace_back(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::DataFormatError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Row {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

std::vector<Row> read_rows(const std::filesystem::path& path, std::size_t min_fields) {
  std::vector<Row> rows;
  const std::string text = read_file(path);
  std::size_t line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    Row r{split(line, '\t'), line_no};
    for (auto& f : r.fields) f = trim(f);
    if (r.fields.size() < min_fields)
      throw Error(ErrorCode::DataFormatError, path.filename().string() + ":" + std::to_string(line_no) + ": expected " +
                                                  std::to_string(min_fields) + " tab-separated fields");
    rows.push_back(std::move(r));
  }
  return rows;
}

[[noreturn]] void bad(const std::filesystem::path& path, std::size_t line, const std::string& what) {
  throw Error(ErrorCode::DataFormatError, path.filename().string() + ":" + std::to_string(line) + ": " + what);
}

long to_long(const std::string& s, const std::filesystem::path& path, std::size_t line) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0') bad(path, line, "not an integer: '" + s + "'");
  return v;
}

Integer to_integer(const std::string& s, const std::filesystem::path& path, std::size_t line) {
  Integer v;
  if (s.empty() || v.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) bad(path, line, "not an integer: '" + s + "'");
  return v;
}

std::vector<std::vector<Integer>> parse_generators(const std::string& text, int u_count, int e8_count,
                                                   const std::filesystem::path& path, std::size_t line) {
  std::vector<std::vector<Integer>> out;
  for (const auto& g : split(text, ';')) {
    try {
      out.push_back(parse_ambient_vector(trim(g), u_count, e8_count));
    } catch (const ParseError& e) {
      bad(path, line, "generator '" + trim(g) + "': " + e.what());
    }
  }
  return out;
}

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (std::size_t at = s.find(from); at != std::string::npos; at = s.find(from, at + to.size()))
    s.replace(at, from.size(), to);
}

std::string substitute_k(std::string s, int k) {
  replace_all(s, "2k+1", std::to_string(2 * k + 1));
  replace_all(s, "4k", std::to_string(4 * k));
  replace_all(s, "2k", std::to_string(2 * k));
  replace_all(s, "k", std::to_string(k));
  return s;
}

}  // namespace

const std::vector<std::string>& lattice_table_ids() {
  static const std::vector<std::string> ids = {"alattices", "delattices", "hyperbolic", "lpqr", "rho1",
                                               "delta1",    "prime",      "reclassify"};
  return ids;
}

std::string TableEntry::label() const { return table_id + ":" + std::to_string(line) + " " + lattice_text; }

std::vector<TableEntry> load_table(const std::filesystem::path& path) {
  std::vector<TableEntry> out;
  for (const auto& r : read_rows(path, 9)) {
    const auto& f = r.fields;
    TableEntry e;
    e.line = r.line;
    e.table_id = f[0];
    e.rho = static_cast<int>(to_long(f[1], path, r.line));
    e.delta = to_integer(f[2], path, r.line);
    if (f[3] != "*") {
      std::vector<Integer> g;
      if (f[3] != "1")
        for (const auto& x : split(f[3], ',')) g.push_back(to_integer(trim(x), path, r.line));
      e.group = std::move(g);
    }
    e.form_text = f[4];
    if (f[4] != "-") {
      try {
        e.form = parse_form_expr(f[4]);
      } catch (const ParseError& err) {
        bad(path, r.line, std::string("form: ") + err.what());
      }
    }
    e.lattice_text = f[5];
    try {
      e.lattice = parse_lattice_expr(f[5]);
    } catch (const ParseError& err) {
      bad(path, r.line, std::string("lattice: ") + err.what());
    }
    if (f[6] != "-")
      for (const auto& x : split(f[6], ',')) e.nos.push_back(static_cast<int>(to_long(trim(x), path, r.line)));
    if (f[7] != "ok" && f[7] != "disputed") bad(path, r.line, "status must be ok or disputed");
    e.disputed = f[7] == "disputed";
    e.as_printed = f[8];
    if (f.size() > 9) e.note = f[9];
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<TableEntry> load_all_tables(const std::filesystem::path& data_dir) {
  std::vector<TableEntry> out;
  for (const auto& id : lattice_table_ids()) {
    const auto path = data_dir / "tables" / (id + ".tsv");
    if (!std::filesystem::exists(path)) continue;
    auto rows = load_table(path);
    out.insert(out.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
  }
  return out;
}

bool SignatureEntry::parametric() const {
  for (const auto& t : form_templates)
    if (t.find('k') != std::string::npos) return true;
  return sigma_template.find('k') != std::string::npos;
}

std::vector<FormDecomposition> SignatureEntry::forms(int k) const {
  std::vector<FormDecomposition> out;
  for (const auto& t : form_templates) {
    try {
      out.push_back(parse_form_expr(substitute_k(t, k)));
    } catch (const ParseError& e) {
      throw Error(ErrorCode::DataFormatError, "bad form template '" + t + "': " + e.what());
    }
  }
  return out;
}

int SignatureEntry::sigma(int k) const {
  const std::string s = substitute_k(sigma_template, k);
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0') throw Error(ErrorCode::DataFormatError, "bad signature '" + sigma_template + "'");
  return static_cast<int>(((v % 8) + 8) % 8);
}

std::vector<SignatureEntry> load_signature_table(const std::filesystem::path& path) {
  std::vector<SignatureEntry> out;
  for (const auto& r : read_rows(path, 3)) {
    SignatureEntry e;
    for (const auto& t : split(r.fields[0], ';')) e.form_templates.push_back(trim(t));
    e.sigma_template = r.fields[1];
    e.as_printed = r.fields[2];
    e.forms(1);
    e.sigma(1);
    out.push_back(std::move(e));
  }
  return out;
}

AmbientSpace PropDefnEntry::ambient(const E8Labeling& l) const {
  AmbientSpace a;
  a.u_count = u_count;
  a.e8_count = e8_count;
  a.labeling = l;
  return a;
}

const std::vector<std::vector<Integer>>& PropDefnEntry::effective_generators() const {
  return corrected ? *corrected : generators;
}

std::vector<PropDefnEntry> load_propdefn(const std::filesystem::path& path) {
  std::vector<PropDefnEntry> out;
  for (const auto& r : read_rows(path, 6)) {
    const auto& f = r.fields;
    PropDefnEntry e;
    e.line = r.line;
    e.target_text = f[0];
    try {
      e.target = parse_form_expr(f[0]);
    } catch (const ParseError& err) {
      bad(path, r.line, std::string("target: ") + err.what());
    }
    for (const auto& tok : split(f[1], ' ')) {
      if (tok == "U") ++e.u_count;
      else if (tok == "E8") ++e.e8_count;
      else if (!tok.empty()) bad(path, r.line, "ambient summands are U and E8");
    }
    e.labeling = f[2];
    if (e.labeling != "-") labeling_by_name(e.labeling);
    e.generators = parse_generators(f[3], e.u_count, e.e8_count, path, r.line);
    e.as_printed = f[4];
    if (f[5] != "ok" && f[5] != "disputed") bad(path, r.line, "status must be ok or disputed");
    e.disputed = f[5] == "disputed";
    if (f.size() > 6 && !f[6].empty()) e.corrected = parse_generators(f[6], e.u_count, e.e8_count, path, r.line);
    out.push_back(std::move(e));
  }
  return out;
}

std::function<GramLattice(const FormDecomposition&)> propdefn_resolver(std::vector<PropDefnEntry> entries) {
  return [entries = std::move(entries)](const FormDecomposition& target) {
    for (const auto& e : entries) {
      if (e.target != target) continue;
      const E8Labeling& l = e.labeling == "-" ? bourbaki_labeling() : labeling_by_name(e.labeling);
      return sublattice(e.ambient(l), e.effective_generators());
    }
    throw Error(ErrorCode::DataFormatError, "no representation lattice for " + to_string(target));
  };
}

std::vector<WeightRecord> parse_weights(std::string_view text) {
  std::vector<WeightRecord> out;
  std::size_t line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto fail = [&](const std::string& what) -> void {
      throw Error(ErrorCode::DataFormatError, "weights line " + std::to_string(line_no) + ": " + what);
    };
    WeightRecord rec{std::nullopt, WeightSystem({Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}),
                     std::nullopt, std::nullopt, line_no};
    bool have_w = false;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) fail("expected key=value, got '" + tok + "'");
      const std::string key = tok.substr(0, eq);
      const std::string value = tok.substr(eq + 1);
      try {
        if (key == "no") {
          rec.no = std::stoi(value);
        } else if (key == "w") {
          rec.weights = WeightSystem::parse(value);
          have_w = true;
        } else if (key == "rho") {
          rec.rho = std::stoi(value);
        } else if (key == "delta") {
          rec.delta = Integer(value);
        } else {
          fail("unknown key '" + key + "'");
        }
      } catch (const Error& e) {
        if (e.code() == ErrorCode::DataFormatError && key != "w") throw;
        fail("bad value for " + key + ": " + e.what());
      } catch (const std::exception&) {
        fail("bad value for " + key + ": '" + value + "'");
      }
    }
    if (!have_w) fail("missing w=");
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<WeightRecord> load_weights(const std::filesystem::path& path) { return parse_weights(read_file(path)); }

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("K3LAT_DATA_DIR"); env && *env) return env;
  return K3LAT_DEFAULT_DATA_DIR;
}

}  // namespace k3lat
