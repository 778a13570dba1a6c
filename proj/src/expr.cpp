#include "k3lat/expr.hpp"

#include <cctype>

namespace k3lat {

namespace {

class LatticeParser {
 public:
  explicit LatticeParser(std::string_view text) : s_(text) {}

  LatticeExpr parse() {
    LatticeExpr e = sum();
    skip();
    if (pos_ != s_.size()) throw ParseError(pos_, "unexpected trailing input in lattice expression");
    return e;
  }

 private:
  LatticeExpr sum() {
    LatticeExpr first = term();
    skip();
    if (!peek('+')) return first;
    LatticeExpr out;
    out.kind = LatticeExpr::Kind::Sum;
    out.children.push_back(std::move(first));
    while (eat('+')) out.children.push_back(term());
    return out;
  }

  LatticeExpr term() {
    skip();
    std::optional<Integer> factor;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      factor = integer();
      expect('*');
    }
    LatticeExpr base = atom();
    skip();
    if (eat('^')) {
      const std::size_t at = pos_;
      const Integer n = integer();
      if (n < 1) throw ParseError(at, "power must be at least 1");
      LatticeExpr p;
      p.kind = LatticeExpr::Kind::Power;
      p.k = n;
      p.children.push_back(std::move(base));
      base = std::move(p);
    }
    if (factor) {
      if (*factor < 1) throw ParseError(pos_, "twist factor must be positive");
      LatticeExpr t;
      t.kind = LatticeExpr::Kind::Twist;
      t.k = *factor;
      t.children.push_back(std::move(base));
      return t;
    }
    return base;
  }

  LatticeExpr atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError(pos_, "expected a lattice");
    LatticeExpr e;
    const std::size_t start = pos_;
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      e = sum();
      expect(')');
      return e;
    }
    if (c == '<') {
      ++pos_;
      e.kind = LatticeExpr::Kind::RankOne;
      e.k = integer();
      expect('>');
      return e;
    }
    if (c == '[') return gram_literal();
    if (s_.substr(pos_, 4) == "sub(") {
      pos_ += 4;
      return sub_expr();
    }
    if (s_.substr(pos_, 2) == "S{") {
      pos_ += 2;
      const std::size_t close = s_.find('}', pos_);
      if (close == std::string_view::npos) throw ParseError(pos_, "unterminated S{...}");
      e.kind = LatticeExpr::Kind::Named;
      try {
        e.form = parse_form_expr(s_.substr(pos_, close - pos_));
      } catch (const ParseError& err) {
        throw ParseError(pos_ + err.position(), "bad form inside S{...}");
      }
      pos_ = close + 1;
      return e;
    }
    ++pos_;
    switch (c) {
      case 'U':
        e.kind = LatticeExpr::Kind::U;
        e.k = 1;
        skip();
        if (eat('(')) {
          e.k = integer();
          expect(')');
        }
        return e;
      case 'A':
      case 'D':
      case 'E': {
        e.kind = LatticeExpr::Kind::Root;
        e.family = c == 'A' ? RootFamily::A : c == 'D' ? RootFamily::D : RootFamily::E;
        if (eat('(')) {
          e.n = static_cast<int>(integer().get_si());
          expect(')');
        } else {
          e.n = static_cast<int>(integer().get_si());
        }
        return e;
      }
      case 'T': {
        e.kind = LatticeExpr::Kind::TShape;
        expect('(');
        for (int i = 0; i < 3; ++i) {
          if (i > 0) expect(',');
          e.pqr[static_cast<std::size_t>(i)] = static_cast<int>(integer().get_si());
        }
        expect(')');
        return e;
      }
      default:
        throw ParseError(start, std::string("unknown lattice '") + c + "'");
    }
  }

  LatticeExpr gram_literal() {
    LatticeExpr e;
    e.kind = LatticeExpr::Kind::Gram;
    expect('[');
    std::vector<std::vector<Integer>> rows;
    do {
      expect('[');
      std::vector<Integer> row;
      do row.push_back(integer());
      while (eat(','));
      expect(']');
      rows.push_back(std::move(row));
    } while (eat(','));
    expect(']');
    for (const auto& r : rows)
      if (r.size() != rows.size()) throw ParseError(pos_, "Gram literal must be square");
    e.gram = IntMatrix::from_rows(rows);
    return e;
  }

  LatticeExpr sub_expr() {
    LatticeExpr e;
    e.kind = LatticeExpr::Kind::Sub;
    // ambient
    for (;;) {
      skip();
      if (peek(';') || peek(')')) break;
      if (eat('+')) continue;
      const std::size_t at = pos_;
      int* slot = nullptr;
      if (s_.substr(pos_, 2) == "E8") {
        pos_ += 2;
        slot = &e.e8_count;
      } else if (s_.substr(pos_, 1) == "U") {
        pos_ += 1;
        slot = &e.u_count;
      } else {
        throw ParseError(at, "ambient summands are U and E8");
      }
      int count = 1;
      if (eat('^')) count = static_cast<int>(integer().get_si());
      *slot += count;
    }
    while (eat(';')) {
      const std::size_t begin = pos_;
      while (pos_ < s_.size() && s_[pos_] != ';' && s_[pos_] != ')') ++pos_;
      try {
        e.vectors.push_back(parse_ambient_vector(s_.substr(begin, pos_ - begin), e.u_count, e.e8_count));
      } catch (const ParseError& err) {
        throw ParseError(begin + err.position(), "bad generator");
      }
    }
    expect(')');
    if (e.vectors.empty()) throw ParseError(pos_, "sub(...) needs at least one generator");
    return e;
  }

  Integer integer() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (digits == pos_) throw ParseError(start, "expected an integer");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) throw ParseError(pos_, std::string("expected '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string join_ints(const std::vector<Integer>& v) {
  std::string out;
  for (const auto& x : v) {
    if (!out.empty()) out += ",";
    out += x.get_str();
  }
  return out;
}

}  // namespace

LatticeExpr parse_lattice_expr(std::string_view text) { return LatticeParser(text).parse(); }

std::vector<Integer> parse_ambient_vector(std::string_view text, int u_count, int e8_count) {
  const std::size_t dim = 2 * static_cast<std::size_t>(u_count) + 8 * static_cast<std::size_t>(e8_count);
  std::vector<Integer> v(dim, 0);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto digits = [&](std::size_t& at) {
    const std::size_t begin = at;
    while (at < text.size() && std::isdigit(static_cast<unsigned char>(text[at]))) ++at;
    return text.substr(begin, at - begin);
  };

  bool symbolic = false;
  for (char c : text)
    if (c == 'u' || c == 'e') symbolic = true;

  if (!symbolic) {
    std::size_t i = 0;
    for (;;) {
      skip();
      const std::size_t start = pos;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
      const auto d = digits(pos);
      if (d.empty()) throw ParseError(start, "expected an integer coordinate");
      if (i >= dim) throw ParseError(start, "too many coordinates for the ambient");
      v[i++] = Integer(std::string(text.substr(start, pos - start)));
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
    if (pos != text.size()) throw ParseError(pos, "unexpected character in vector");
    if (i != dim) throw ParseError(pos, "expected " + std::to_string(dim) + " coordinates");
    return v;
  }

  bool first = true;
  for (;;) {
    skip();
    if (pos >= text.size()) break;
    const std::size_t start = pos;
    long sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      throw ParseError(pos, "expected '+' or '-'");
    }
    Integer coeff = 1;
    const auto d = digits(pos);
    if (!d.empty()) coeff = Integer(std::string(d));
    skip();
    if (pos >= text.size() || (text[pos] != 'u' && text[pos] != 'e')) throw ParseError(pos, "expected u<i> or e<i>");
    const char basis = text[pos++];
    const auto idx_text = digits(pos);
    if (idx_text.empty()) throw ParseError(pos, "missing basis index");
    const long idx = std::stol(std::string(idx_text));
    const long limit = basis == 'u' ? 2L * u_count : 8L * e8_count;
    if (idx < 1 || idx > limit) throw ParseError(start, "basis index out of range for the ambient");
    const std::size_t slot = basis == 'u' ? static_cast<std::size_t>(idx - 1)
                                          : 2 * static_cast<std::size_t>(u_count) + static_cast<std::size_t>(idx - 1);
    v[slot] += sign * coeff;
    first = false;
  }
  if (first) throw ParseError(0, "empty generator");
  return v;
}

std::string LatticeExpr::to_string() const {
  switch (kind) {
    case Kind::U: return k == 1 ? "U" : "U(" + k.get_str() + ")";
    case Kind::RankOne: return "<" + k.get_str() + ">";
    case Kind::Root: {
      const char* f = family == RootFamily::A ? "A" : family == RootFamily::D ? "D" : "E";
      return std::string(f) + "(" + std::to_string(n) + ")";
    }
    case Kind::TShape:
      return "T(" + std::to_string(pqr[0]) + "," + std::to_string(pqr[1]) + "," + std::to_string(pqr[2]) + ")";
    case Kind::Sub: {
      std::string out = "sub(";
      std::string amb;
      if (u_count > 0) amb += "U^" + std::to_string(u_count);
      if (e8_count > 0) amb += (amb.empty() ? "" : " ") + std::string("E8^") + std::to_string(e8_count);
      out += amb;
      for (const auto& v : vectors) out += "; " + join_ints(v);
      return out + ")";
    }
    case Kind::Gram: {
      std::string out = "[";
      for (std::size_t i = 0; i < gram.rows(); ++i) {
        if (i > 0) out += ",";
        std::vector<Integer> row;
        for (std::size_t j = 0; j < gram.cols(); ++j) row.push_back(gram(i, j));
        out += "[" + join_ints(row) + "]";
      }
      return out + "]";
    }
    case Kind::Named: return "S{" + k3lat::to_string(form) + "}";
    case Kind::Sum: {
      std::string out;
      for (const auto& c : children) {
        if (!out.empty()) out += " + ";
        out += c.kind == Kind::Sum ? "(" + c.to_string() + ")" : c.to_string();
      }
      return out;
    }
    case Kind::Twist: {
      const auto& c = children.front();
      const bool wrap = c.kind == Kind::Sum;
      return k.get_str() + "*" + (wrap ? "(" + c.to_string() + ")" : c.to_string());
    }
    case Kind::Power: {
      const auto& c = children.front();
      const bool wrap = c.kind == Kind::Sum || c.kind == Kind::Twist || c.kind == Kind::Power;
      return (wrap ? "(" + c.to_string() + ")" : c.to_string()) + "^" + k.get_str();
    }
  }
  return {};
}

GramLattice evaluate(const LatticeExpr& e, const EvalContext& ctx) {
  switch (e.kind) {
    case LatticeExpr::Kind::U: return hyperbolic_U(e.k);
    case LatticeExpr::Kind::RankOne: return rank_one(e.k);
    case LatticeExpr::Kind::Root: return root_lattice(e.family, e.n);
    case LatticeExpr::Kind::TShape: return tshape(e.pqr[0], e.pqr[1], e.pqr[2]);
    case LatticeExpr::Kind::Sub: {
      AmbientSpace amb;
      amb.u_count = e.u_count;
      amb.e8_count = e.e8_count;
      amb.labeling = ctx.labeling;
      return sublattice(amb, e.vectors);
    }
    case LatticeExpr::Kind::Gram: return GramLattice(e.gram);
    case LatticeExpr::Kind::Named:
      if (!ctx.named) throw Error(ErrorCode::DataFormatError, "no lattice registered for " + e.to_string());
      return ctx.named(e.form);
    case LatticeExpr::Kind::Sum: {
      GramLattice acc;
      for (const auto& c : e.children) acc = direct_sum(acc, evaluate(c, ctx));
      return acc;
    }
    case LatticeExpr::Kind::Twist: return twist(evaluate(e.children.front(), ctx), e.k);
    case LatticeExpr::Kind::Power: {
      const GramLattice base = evaluate(e.children.front(), ctx);
      GramLattice acc;
      for (Integer i = 0; i < e.k; ++i) acc = direct_sum(acc, base);
      return acc;
    }
  }
  throw Error(ErrorCode::DataFormatError, "unknown lattice expression");
}

}  // namespace k3lat
