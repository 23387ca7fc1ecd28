#include "covertorus/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "covertorus/error.hpp"

namespace covertorus {

namespace {

enum class Tok { kIdent, kInt, kPunct, kBad, kEnd };

struct Token {
  Tok kind;
  std::string_view text;
  Span span;
};

const std::set<std::string_view> kKeywords = {"const", "torus", "point", "tuple",
                                              "linear", "cell", "eq"};

bool is_decl_keyword(const Token& t) {
  return t.kind == Tok::kIdent && t.text != "eq" && kKeywords.count(t.text);
}

// Digits after a one-letter prefix, e.g. e12 -> 12.
std::optional<std::uint32_t> suffix_index(std::string_view s, char prefix) {
  if (s.size() < 2 || s[0] != prefix || s.size() > 10) return std::nullopt;
  std::uint64_t v = 0;
  for (char c : s.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  if (v > 0xffffffffu) return std::nullopt;
  return static_cast<std::uint32_t>(v);
}

struct Failed {};

class Parser {
 public:
  Parser(std::string_view text, const Document* context) : text_(text) {
    if (context) doc_ = *context;
    lex();
  }

  ParseResult run() {
    while (peek().kind != Tok::kEnd) {
      std::size_t before = pos_;
      try {
        declaration();
      } catch (const Failed&) {
        if (pos_ == before) take();
        recover();
      }
    }
    ParseResult out;
    out.diagnostics = std::move(diags_);
    if (out.diagnostics.empty()) out.document = std::move(doc_);
    return out;
  }

 private:
  // Lexing.

  void lex() {
    std::size_t i = 0, line = 1, col = 1;
    auto advance = [&](std::size_t n) {
      for (std::size_t j = 0; j < n; ++j) {
        if (text_[i] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
        ++i;
      }
    };
    while (i < text_.size()) {
      char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
        continue;
      }
      if (c == '#') {
        while (i < text_.size() && text_[i] != '\n') advance(1);
        continue;
      }
      Span sp{i, 1, line, col};
      std::size_t j = i;
      Tok kind;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (j < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
          ++j;
        kind = Tok::kIdent;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
        kind = Tok::kInt;
      } else if (std::string_view("=+-*/^(){};,").find(c) != std::string_view::npos) {
        j = i + 1;
        kind = Tok::kPunct;
      } else {
        j = i + 1;
        kind = Tok::kBad;
      }
      sp.length = j - i;
      tokens_.push_back({kind, text_.substr(i, j - i), sp});
      advance(j - i);
    }
    Span end{text_.size(), 0, line, col};
    tokens_.push_back({Tok::kEnd, {}, end});
  }

  // Token access.

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& take() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    last_ = t.span;
    return t;
  }
  bool at(std::string_view punct_or_word) const {
    const Token& t = peek();
    return (t.kind == Tok::kPunct || t.kind == Tok::kIdent) && t.text == punct_or_word;
  }
  bool accept(std::string_view s) {
    if (!at(s)) return false;
    take();
    return true;
  }

  [[noreturn]] void fail(const std::string& msg, const Span& sp) {
    diags_.push_back({Severity::kError, msg, sp});
    throw Failed{};
  }
  [[noreturn]] void fail_here(const std::string& msg) {
    const Token& t = peek();
    if (t.kind == Tok::kBad) fail("unexpected character '" + std::string(t.text) + "'", t.span);
    std::string found = t.kind == Tok::kEnd ? "end of input" : "'" + std::string(t.text) + "'";
    fail(msg + ", found " + found, t.span);
  }
  void expect(std::string_view s) {
    if (!accept(s)) fail_here("expected '" + std::string(s) + "'");
  }

  void recover() {
    // Skip the rest of the broken declaration.
    while (peek().kind != Tok::kEnd && !is_decl_keyword(peek())) take();
  }

  Span from(const Span& start) const {
    Span s = start;
    s.length = last_.offset + last_.length - start.offset;
    return s;
  }

  // Terminals.

  Integer integer() {
    if (peek().kind != Tok::kInt) fail_here("expected an integer");
    return Integer(std::string(take().text));
  }

  Integer signed_integer() {
    bool neg = accept("-");
    Integer z = integer();
    return neg ? Integer(-z) : z;
  }

  Rational rational() {
    Span start = peek().span;
    Integer num = signed_integer();
    if (!accept("/")) return Rational(num);
    Integer den = integer();
    if (den == 0) fail("zero denominator", from(start));
    return make_rational(num, den);
  }

  std::size_t small_count(const std::string& what, std::size_t lo) {
    Span sp = peek().span;
    Integer z = integer();
    if (z < lo || z > 4096) {
      fail(what + " must be between " + std::to_string(lo) + " and 4096", sp);
    }
    return static_cast<std::size_t>(z.get_ui());
  }

  std::string new_name() {
    const Token& t = peek();
    if (t.kind != Tok::kIdent) fail_here("expected a name");
    std::string name(t.text);
    if (kKeywords.count(t.text) || name == "k" || name == "u" || suffix_index(name, 'e')) {
      fail("'" + name + "' is reserved", t.span);
    }
    take();
    return name;
  }

  void require_fresh(const std::string& name, const Span& sp, bool is_cell = false) {
    for (const auto& d : doc_.decls()) {
      if (decl_name(d) != name) continue;
      if (is_cell && std::holds_alternative<CellDecl>(d)) continue;
      fail("'" + name + "' is already declared", sp);
    }
  }

  // Resolves a basis or point name to the vector it denotes.
  CoverPoint atom() {
    const Token& t = peek();
    if (t.kind != Tok::kIdent || kKeywords.count(t.text)) fail_here("expected k, e<i> or a name");
    std::string name(t.text);
    if (name == "k") {
      take();
      return CoverPoint::kappa();
    }
    if (auto i = suffix_index(name, 'e')) {
      if (*i == 0) fail("generic indices start at 1", t.span);
      take();
      return CoverPoint::generic(*i);
    }
    if (const auto* p = doc_.point(name)) {
      take();
      return p->value;
    }
    if (auto c = doc_.registry().find_constant(name)) {
      take();
      return CoverPoint::constant(*c);
    }
    if (auto g = suffix_index(name, 'g')) {
      if (*g == 0 || *g >= BasisRegistry::kNamedConstantBase) {
        fail("constant index out of range", t.span);
      }
      take();
      return CoverPoint::constant(doc_.registry().declare_constant(name));
    }
    fail("undeclared name '" + name + "'", t.span);
  }

  CoverPoint point_term() {
    if (peek().kind == Tok::kInt || at("-")) {
      Span start = peek().span;
      Rational q = rational();
      if (accept("*")) return q * atom();
      if (q == 0) return CoverPoint();
      fail("a coefficient needs '*' and k, e<i> or a name", from(start));
    }
    return atom();
  }

  CoverPoint point_expr() {
    CoverPoint v;
    bool neg = false;
    if (accept("-")) {
      neg = true;
    } else {
      accept("+");
    }
    for (;;) {
      CoverPoint t = point_term();
      v.add_scaled(t, neg ? Rational(-1) : Rational(1));
      if (accept("+")) {
        neg = false;
      } else if (accept("-")) {
        neg = true;
      } else {
        return v;
      }
    }
  }

  CoverPoint const_factor() {
    if (at("u") && peek(1).kind == Tok::kPunct && peek(1).text == "(") {
      take();
      take();
      Rational q = rational();
      expect(")");
      return CoverPoint::kappa(q);
    }
    if (at("k")) fail("write roots of unity as u(q)", peek().span);
    CoverPoint base = atom();
    if (!accept("^")) return base;
    Span caret = last_;
    if (peek().kind != Tok::kInt && !at("-")) fail("expected an exponent after '^'", caret);
    return rational() * base;
  }

  FieldPoint const_expr() {
    CoverPoint v = const_factor();
    while (accept("*")) v += const_factor();
    return exp_point(v);
  }

  std::vector<Integer> monomial(std::size_t n) {
    std::vector<Integer> z(n, Integer(0));
    do {
      const Token& t = peek();
      auto i = t.kind == Tok::kIdent ? suffix_index(t.text, 'x') : std::nullopt;
      if (!i) fail_here("expected a variable x<i>");
      if (*i < 1 || *i > n) {
        fail("variable " + std::string(t.text) + " outside x1..x" + std::to_string(n), t.span);
      }
      take();
      Integer e = 1;
      if (accept("^")) {
        Span caret = last_;
        if (peek().kind != Tok::kInt && !at("-")) fail("expected an exponent after '^'", caret);
        e = signed_integer();
      }
      z[*i - 1] += e;
    } while (accept("*"));
    return z;
  }

  // Declarations.

  void declaration() {
    const Token& kw = peek();
    if (!is_decl_keyword(kw)) fail_here("expected a declaration");
    Span start = kw.span;
    std::string word(take().text);
    Span name_span = peek().span;
    if (word == "const") {
      std::string name = new_name();
      require_fresh(name, name_span);
      if (doc_.registry().find_constant(name)) fail("'" + name + "' is already declared", name_span);
      if (auto g = suffix_index(name, 'g'); g && (*g == 0 || *g >= BasisRegistry::kNamedConstantBase)) {
        fail("constant index out of range", name_span);
      }
      auto index = doc_.registry().declare_constant(name);
      doc_.add(ConstDecl{name, index, from(start)});
    } else if (word == "torus") {
      std::string name = new_name();
      require_fresh(name, name_span);
      expect("n");
      expect("=");
      std::size_t n = small_count("n", 1);
      TorusPresentation t(n);
      while (accept("eq")) {
        auto z = monomial(n);
        expect("=");
        t.add_row(std::move(z), const_expr());
      }
      doc_.add(TorusDecl{name, std::move(t), from(start)});
    } else if (word == "point") {
      std::string name = new_name();
      require_fresh(name, name_span);
      expect("=");
      CoverPoint v = point_expr();
      doc_.add(PointDecl{name, std::move(v), from(start)});
    } else if (word == "tuple") {
      std::string name = new_name();
      require_fresh(name, name_span);
      expect("=");
      expect("(");
      PointTuple t;
      if (!accept(")")) {
        do {
          t.push_back(point_expr());
        } while (accept(","));
        expect(")");
      }
      doc_.add(TupleDecl{name, std::move(t), from(start)});
    } else if (word == "linear") {
      std::string name = new_name();
      require_fresh(name, name_span);
      expect("n");
      expect("=");
      std::size_t n = small_count("n", 1);
      expect("{");
      std::vector<LinearConstraint> rows;
      while (!accept("}")) {
        Span row_start = peek().span;
        std::vector<Rational> q;
        while (!at("=")) {
          if (peek().kind != Tok::kInt && !at("-")) fail_here("expected a coefficient or '='");
          q.push_back(rational());
        }
        if (q.size() != n) {
          fail(std::to_string(q.size()) + " coefficients where n=" + std::to_string(n),
               from(row_start));
        }
        take();
        CoverPoint rhs = point_expr();
        expect(";");
        rows.push_back({std::move(q), std::move(rhs)});
      }
      doc_.add(LinearDecl{name, LinearSet(n, rows), from(start)});
    } else {
      std::string name = new_name();
      require_fresh(name, name_span, true);
      expect("m");
      expect("=");
      Span m_span = peek().span;
      Integer m = integer();
      if (m < 1) fail("m must be positive", m_span);
      Span l_span = peek().span;
      if (peek().kind != Tok::kIdent) fail_here("expected a linear set name");
      std::string lname(take().text);
      const auto* l = doc_.linear(lname);
      if (!l) fail("'" + lname + "' is not a declared linear set", l_span);
      Span t_span = peek().span;
      if (peek().kind != Tok::kIdent) fail_here("expected a torus name");
      std::string tname(take().text);
      const auto* t = doc_.torus(tname);
      if (!t) fail("'" + tname + "' is not a declared torus", t_span);
      if (t->torus.arity() != l->set.arity()) fail("linear set and torus arities differ", from(start));
      if (auto s = doc_.set(name); s && s->arity() != l->set.arity()) {
        fail("cell arity differs from earlier cells of '" + name + "'", from(start));
      }
      doc_.add(CellDecl{name, m, lname, tname, from(start)});
    }
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Span last_;
  Document doc_;
  std::vector<Diagnostic> diags_;
};

std::string join_rationals(const std::vector<Rational>& q) {
  std::string out;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i) out += " ";
    out += q[i].get_str();
  }
  return out;
}

}  // namespace

std::string format_diagnostic(const Diagnostic& d, std::string_view source) {
  return std::string(source) + ":" + std::to_string(d.span.line) + ":" +
         std::to_string(d.span.column) + ": " +
         (d.severity == Severity::kError ? "error" : "warning") + ": " + d.message;
}

std::string_view decl_name(const Decl& d) {
  return std::visit([](const auto& x) -> std::string_view { return x.name; }, d);
}

Span decl_span(const Decl& d) {
  return std::visit([](const auto& x) { return x.span; }, d);
}

bool Document::has(std::string_view name) const {
  return std::any_of(decls_.begin(), decls_.end(),
                     [&](const Decl& d) { return decl_name(d) == name; });
}

namespace {
template <class T>
const T* find_decl(const std::vector<Decl>& decls, std::string_view name) {
  for (const auto& d : decls) {
    if (const auto* x = std::get_if<T>(&d); x && x->name == name) return x;
  }
  return nullptr;
}
}  // namespace

const TorusDecl* Document::torus(std::string_view name) const {
  return find_decl<TorusDecl>(decls_, name);
}
const LinearDecl* Document::linear(std::string_view name) const {
  return find_decl<LinearDecl>(decls_, name);
}
const PointDecl* Document::point(std::string_view name) const {
  return find_decl<PointDecl>(decls_, name);
}

std::optional<PointTuple> Document::tuple(std::string_view name) const {
  if (const auto* t = find_decl<TupleDecl>(decls_, name)) return t->value;
  if (const auto* p = point(name)) return PointTuple{p->value};
  return std::nullopt;
}

std::optional<PQFSet> Document::set(std::string_view name) const {
  std::optional<PQFSet> out;
  for (const auto& d : decls_) {
    const auto* c = std::get_if<CellDecl>(&d);
    if (!c || c->name != name) continue;
    const auto* l = linear(c->linear);
    const auto* t = torus(c->torus);
    if (!l || !t) throw Error(ErrorCode::kInvalidArgument, "cell refers to a missing declaration");
    if (!out) out.emplace(l->set.arity());
    out->add(Cell(c->m, l->set, t->torus));
  }
  return out;
}

void Document::add(Decl d) { decls_.push_back(std::move(d)); }

ParseResult parse(std::string_view text, const Document* context) {
  return Parser(text, context).run();
}

std::string print_monomial(const std::vector<Integer>& exponents) {
  std::string out;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(i + 1);
    if (exponents[i] != 1) out += "^" + exponents[i].get_str();
  }
  return out.empty() ? "x1^0" : out;
}

std::string print_torus(std::string_view name, const TorusPresentation& t,
                        const BasisRegistry* names) {
  std::string out = "torus " + std::string(name) + " n=" + std::to_string(t.arity());
  for (const auto& r : t.rows()) {
    out += "\n  eq " + print_monomial(r.exponents) + " = " + to_string(r.value, names);
  }
  return out;
}

std::string print_linear(std::string_view name, const LinearSet& l, const BasisRegistry* names) {
  std::string out = "linear " + std::string(name) + " n=" + std::to_string(l.arity()) + " {";
  auto rows = l.constraints();
  if (rows.empty()) return out + " }";
  for (const auto& c : rows) {
    out += "\n  " + join_rationals(c.coeffs) + " = " + to_string(c.rhs, names) + " ;";
  }
  return out + "\n}";
}

std::string print_tuple(std::string_view name, const PointTuple& t, const BasisRegistry* names) {
  return "tuple " + std::string(name) + " = " + to_string(t, names);
}

std::string print_point(std::string_view name, const CoverPoint& v, const BasisRegistry* names) {
  return "point " + std::string(name) + " = " + to_string(v, names);
}

std::string print(const Document& doc) {
  const BasisRegistry* names = &doc.registry();
  std::string out;
  for (const auto& d : doc.decls()) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, ConstDecl>) {
            out += "const " + x.name;
          } else if constexpr (std::is_same_v<T, TorusDecl>) {
            out += print_torus(x.name, x.torus, names);
          } else if constexpr (std::is_same_v<T, PointDecl>) {
            out += print_point(x.name, x.value, names);
          } else if constexpr (std::is_same_v<T, TupleDecl>) {
            out += print_tuple(x.name, x.value, names);
          } else if constexpr (std::is_same_v<T, LinearDecl>) {
            out += print_linear(x.name, x.set, names);
          } else {
            out += "cell " + x.name + " m=" + x.m.get_str() + " " + x.linear + " " + x.torus;
          }
        },
        d);
    out += "\n";
  }
  return out;
}

}  // namespace covertorus
