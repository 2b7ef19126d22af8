#include "gorhom/cli.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "gorhom/acceptance.hpp"
#include "gorhom/oracle.hpp"
#include "json.hpp"

namespace gorhom::cli {

using json = nlohmann::ordered_json;

ParseError::ParseError(SourcePos p, const std::string& m)
    : std::runtime_error("line " + std::to_string(p.line) + ", column " + std::to_string(p.column) + ": " + m),
      pos(p),
      message(m) {}

namespace {

// ---------------------------------------------------------------- lexer

enum class Tok { Ident, Int, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;
  std::size_t begin = 0, end = 0;  // byte span in the lexed string
};

bool is_cont(unsigned char c) { return (c & 0xC0) == 0x80; }

// Lexes one line. `column` is the column of text[0].
std::vector<Token> lex(const std::string& text, int line, int column = 1) {
  std::vector<Token> out;
  std::size_t i = 0;
  int col = column;
  auto advance = [&](std::size_t to) {
    for (; i < to; ++i)
      if (!is_cont(static_cast<unsigned char>(text[i]))) ++col;
  };
  auto starts = [&](const char* s) { return text.compare(i, std::char_traits<char>::length(s), s) == 0; };
  while (i < text.size()) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      advance(i + 1);
      continue;
    }
    if (c == '#') break;
    Token t;
    t.pos = {line, col};
    t.begin = i;
    std::size_t j = i;
    if (std::isalpha(c) || c == '_') {
      auto word_char = [&](std::size_t k) {
        const unsigned char d = static_cast<unsigned char>(text[k]);
        if (std::isalnum(d) || d == '_' || d == '\'') return true;
        // gp-w, p-perp
        return d == '-' && k + 1 < text.size() && std::isalpha(static_cast<unsigned char>(text[k + 1]));
      };
      while (j < text.size() && word_char(j)) ++j;
      t.kind = Tok::Ident;
      t.text = text.substr(i, j - i);
    } else if (std::isdigit(c) || (c == '-' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.kind = Tok::Int;
      t.text = text.substr(i, j - i);
    } else if (starts("ℤ")) {
      j = i + std::string("ℤ").size();
      t.kind = Tok::Ident;
      t.text = "Z";
    } else if (starts("⊕")) {
      j = i + std::string("⊕").size();
      t.kind = Tok::Sym;
      t.text = "+";
    } else if (starts("..")) {
      j = i + 2;
      t.kind = Tok::Sym;
      t.text = "..";
    } else if (std::string("[],:=/+").find(static_cast<char>(c)) != std::string::npos) {
      j = i + 1;
      t.kind = Tok::Sym;
      t.text = std::string(1, static_cast<char>(c));
    } else {
      std::size_t k = i + 1;
      while (k < text.size() && is_cont(static_cast<unsigned char>(text[k]))) ++k;
      throw ParseError(t.pos, "unexpected character '" + text.substr(i, k - i) + "'");
    }
    t.end = j;
    advance(j);
    out.push_back(std::move(t));
  }
  Token end;
  end.pos = {line, col};
  end.begin = end.end = text.size();
  out.push_back(end);
  return out;
}

// ---------------------------------------------------------------- parser

// A module together with how raw generator coordinates map onto its diagonal form.
struct ModuleLit {
  FPModule module;
  Matrix to_module;    // module.gens × raw gens
  Matrix from_module;  // raw gens × module.gens
  std::size_t raw_gens() const { return to_module.cols(); }
};

ModuleLit diagonal_lit(const FPModule& m) {
  const Matrix id = Matrix::identity(m.ring(), m.gens());
  return ModuleLit{m, id, id};
}

struct MapLit {
  std::optional<Matrix> matrix;  // nullopt for the zero map "0"
  SourcePos pos;
};

const std::set<std::string> kKeywords = {"coker", "free", "deg", "graded", "zero", "terms", "pieces", "Z",
                                         "ring",  "module", "complex", "amodule", "expect", "not"};

class Parser {
 public:
  Parser(const std::vector<Token>& toks, const Ring& ring, const Document& scope) : t_(toks), ring_(ring), scope_(scope) {}

  const Token& peek(std::size_t k = 0) const { return t_[std::min(i_ + k, t_.size() - 1)]; }
  bool at_end() const { return peek().kind == Tok::End; }
  const Token& next() {
    const Token& t = peek();
    if (t.kind != Tok::End) ++i_;
    return t;
  }
  bool is_sym(const char* s, std::size_t k = 0) const { return peek(k).kind == Tok::Sym && peek(k).text == s; }
  bool is_word(const char* s, std::size_t k = 0) const { return peek(k).kind == Tok::Ident && peek(k).text == s; }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw ParseError(t.pos, what + (t.kind == Tok::End ? " at end of input" : ", found '" + t.text + "'"));
  }
  void sym(const char* s) {
    if (!is_sym(s)) fail(std::string("expected '") + s + "'");
    next();
  }
  void word(const char* s) {
    if (!is_word(s)) fail(std::string("expected '") + s + "'");
    next();
  }
  Int integer() {
    if (peek().kind != Tok::Int) fail("expected an integer");
    return Int(next().text);
  }
  int small_int() {
    const SourcePos p = peek().pos;
    const Int v = integer();
    if (!v.fits_sint_p() || abs(v) > 1000000) throw ParseError(p, "integer out of range");
    return static_cast<int>(v.get_si());
  }
  std::string name() {
    if (peek().kind != Tok::Ident) fail("expected a name");
    if (kKeywords.count(peek().text)) fail("expected a name, not a keyword");
    return next().text;
  }
  void finish() {
    if (!at_end()) fail("unexpected trailing input");
  }

  Matrix matrix() {
    sym("[");
    std::vector<std::vector<Int>> rows;
    if (!is_sym("]")) {
      while (true) {
        sym("[");
        std::vector<Int> row;
        if (!is_sym("]")) {
          row.push_back(integer());
          while (is_sym(",")) {
            next();
            row.push_back(integer());
          }
        }
        if (!rows.empty() && row.size() != rows.front().size()) fail("ragged matrix row");
        sym("]");
        rows.push_back(std::move(row));
        if (!is_sym(",")) break;
        next();
      }
    }
    sym("]");
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    std::vector<Int> entries;
    for (auto& r : rows)
      for (auto& e : r) entries.push_back(std::move(e));
    return Matrix(ring_, rows.size(), cols, std::move(entries));
  }

  bool starts_module() const {
    return is_word("coker") || is_word("free") || is_word("Z") || (peek().kind == Tok::Int && peek().text == "0");
  }

  ModuleLit module() {
    const SourcePos p = peek().pos;
    if (is_word("coker")) {
      next();
      const Matrix rels = matrix();
      const Presentation pr = present(ring_, rels.rows(), rels);
      return ModuleLit{pr.module, pr.to_module, pr.from_module};
    }
    if (is_word("free")) {
      next();
      const int n = small_int();
      if (n < 0) throw ParseError(p, "negative rank");
      return diagonal_lit(FPModule::free(ring_, static_cast<std::size_t>(n)));
    }
    if (peek().kind == Tok::Int) {
      if (peek().text != "0") fail("expected a module");
      next();
      return diagonal_lit(FPModule::zero(ring_));
    }
    if (is_word("Z")) {
      std::vector<Int> orders;
      while (true) {
        const SourcePos q = peek().pos;
        word("Z");
        Int o = ring_.free_order();
        if (is_sym("/")) {
          next();
          o = integer();
          if (o <= 0) throw ParseError(q, "order must be positive");
          if (ring_.is_finite() && mod(ring_.modulus(), o) != 0)
            throw ParseError(q, "Z/" + to_string(o) + " is not a " + ring_.name() + "-module");
        } else if (ring_.is_finite()) {
          throw ParseError(q, "Z is not a " + ring_.name() + "-module");
        }
        if (o != 1) orders.push_back(o);
        if (!is_sym("+")) break;
        next();
      }
      return diagonal_lit(FPModule(ring_, std::move(orders)));
    }
    const std::string n = name();
    const auto it = scope_.names.find(n);
    if (it == scope_.names.end()) throw ParseError(p, "unknown name '" + n + "'");
    if (!std::holds_alternative<FPModule>(it->second)) throw ParseError(p, "'" + n + "' is not a module");
    const FPModule& m = std::get<FPModule>(it->second);
    if (m.ring() != ring_) throw ParseError(p, "'" + n + "' is over " + m.ring().name());
    return diagonal_lit(m);
  }

  // deg hi..lo : maps [terms ...]   (or graded ... pieces ...)
  ChainComplex complex_body(bool graded) {
    const char* terms_kw = graded ? "pieces" : "terms";
    if (is_word("zero")) {
      next();
      return ChainComplex::zero(ring_);
    }
    const SourcePos head = peek().pos;
    const int hi = small_int();
    sym("..");
    const int lo = small_int();
    if (hi < lo) throw ParseError(head, "degree window must run from high to low");
    sym(":");
    std::vector<MapLit> maps;
    if (!at_end() && !is_word(terms_kw)) {
      while (true) {
        MapLit m{std::nullopt, peek().pos};
        if (peek().kind == Tok::Int && peek().text == "0")
          next();
        else
          m.matrix = matrix();
        maps.push_back(std::move(m));
        if (!is_sym(",")) break;
        next();
      }
    }
    if (maps.size() != static_cast<std::size_t>(hi - lo))
      throw ParseError(head, "window " + std::to_string(hi) + ".." + std::to_string(lo) + " needs " + std::to_string(hi - lo) +
                                 " boundary matrices, got " + std::to_string(maps.size()));
    std::optional<std::vector<ModuleLit>> terms;
    SourcePos terms_pos = peek().pos;
    if (is_word(terms_kw)) {
      next();
      terms.emplace();
      terms->push_back(module());
      while (is_sym(",")) {
        next();
        terms->push_back(module());
      }
      if (terms->size() != static_cast<std::size_t>(hi - lo + 1))
        throw ParseError(terms_pos, std::string("expected ") + std::to_string(hi - lo + 1) + " " + terms_kw + ", got " +
                                        std::to_string(terms->size()));
    }
    return build(hi, lo, maps, terms, head);
  }

  // maps[0] is ∂_hi; terms[0] is X_hi.
  ChainComplex build(int hi, int lo, const std::vector<MapLit>& maps, std::optional<std::vector<ModuleLit>> terms,
                     SourcePos head) const {
    const std::size_t count = static_cast<std::size_t>(hi - lo + 1);
    if (!terms) {
      std::vector<std::optional<std::size_t>> rank(count);
      auto pin = [&](std::size_t slot, std::size_t r, const MapLit& m, int n, const char* what) {
        if (rank[slot] && *rank[slot] != r)
          throw ParseError(m.pos, "∂_" + std::to_string(n) + " has " + std::to_string(r) + " " + what + " but degree " +
                                      std::to_string(hi - static_cast<int>(slot)) + " has rank " + std::to_string(*rank[slot]));
        rank[slot] = r;
      };
      for (std::size_t k = 0; k < maps.size(); ++k) {
        if (!maps[k].matrix) continue;
        const int n = hi - static_cast<int>(k);
        pin(k, maps[k].matrix->cols(), maps[k], n, "columns");
        pin(k + 1, maps[k].matrix->rows(), maps[k], n, "rows");
      }
      terms.emplace();
      for (std::size_t k = 0; k < count; ++k) {
        if (!rank[k])
          throw ParseError(head, "cannot infer the rank in degree " + std::to_string(hi - static_cast<int>(k)) +
                                     "; give a terms clause");
        terms->push_back(diagonal_lit(FPModule::free(ring_, *rank[k])));
      }
    }
    std::vector<ModuleHom> d(maps.size());  // d[k] = ∂_{hi-k}
    for (std::size_t k = 0; k < maps.size(); ++k) {
      const int n = hi - static_cast<int>(k);
      const ModuleLit& src = (*terms)[k];
      const ModuleLit& dst = (*terms)[k + 1];
      const MapLit& m = maps[k];
      if (!m.matrix || (m.matrix->empty() && (src.raw_gens() == 0 || dst.raw_gens() == 0))) {
        d[k] = ModuleHom::zero(src.module, dst.module);
        continue;
      }
      if (m.matrix->rows() != dst.raw_gens() || m.matrix->cols() != src.raw_gens())
        throw ParseError(m.pos, "∂_" + std::to_string(n) + " is " + std::to_string(m.matrix->rows()) + "x" +
                                    std::to_string(m.matrix->cols()) + " but should be " + std::to_string(dst.raw_gens()) +
                                    "x" + std::to_string(src.raw_gens()));
      try {
        d[k] = ModuleHom(src.module, dst.module, dst.to_module * *m.matrix * src.from_module);
      } catch (const CheckFailed&) {
        throw ParseError(m.pos, "∂_" + std::to_string(n) + " does not respect the relations of degree " + std::to_string(n));
      }
    }
    for (std::size_t k = 0; k + 1 < d.size(); ++k)
      if (!(d[k + 1] * d[k]).is_zero()) throw ParseError(maps[k].pos, "∂² ≠ 0 at degree " + std::to_string(hi - static_cast<int>(k)));
    std::vector<FPModule> up;
    std::vector<ModuleHom> bd;
    for (std::size_t k = count; k-- > 0;) up.push_back((*terms)[k].module);
    for (std::size_t k = d.size(); k-- > 0;) bd.push_back(d[k]);
    return ChainComplex(ring_, lo, std::move(up), std::move(bd));
  }

  Value value() {
    const SourcePos p = peek().pos;
    if (is_word("deg")) {
      next();
      return complex_body(false);
    }
    if (is_word("zero")) return complex_body(false);
    if (is_word("graded")) {
      next();
      return GradedAModule{complex_body(true)};
    }
    if (starts_module()) return module().module;
    const std::string n = name();
    const auto it = scope_.names.find(n);
    if (it == scope_.names.end()) throw ParseError(p, "unknown name '" + n + "'");
    return it->second;
  }

 private:
  const std::vector<Token>& t_;
  std::size_t i_ = 0;
  const Ring& ring_;
  const Document& scope_;
};

const Ring& value_ring(const Value& v) {
  return std::visit(
      [](const auto& x) -> const Ring& {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, GradedAModule>)
          return x.base();
        else
          return x.ring();
      },
      v);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

// Top-level '=' outside brackets, or npos.
std::size_t split_point(const std::string& s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[') ++depth;
    if (s[i] == ']') --depth;
    if (s[i] == '=' && depth == 0) return i;
  }
  return std::string::npos;
}

int column_of(const std::string& line, std::size_t byte) {
  int col = 1;
  for (std::size_t i = 0; i < byte && i < line.size(); ++i)
    if (!is_cont(static_cast<unsigned char>(line[i]))) ++col;
  return col;
}

Expectation parse_expect(const std::string& line, std::size_t start, int lineno) {
  Expectation e;
  e.pos = {lineno, column_of(line, start)};
  std::string body = line.substr(start);
  if (const auto hash = body.find('#'); hash != std::string::npos && split_point(body) > hash) body = body.substr(0, hash);
  e.source = trim(body);
  const std::size_t eq = split_point(body);
  const std::string left = eq == std::string::npos ? body : body.substr(0, eq);
  if (eq != std::string::npos) e.expected = trim(body.substr(eq + 1));
  const auto toks = lex(left, lineno, e.pos.column);
  std::size_t i = 0;
  if (toks[i].kind == Tok::Ident && toks[i].text == "not") {
    e.negated = true;
    ++i;
  }
  if (toks[i].kind != Tok::Ident) throw ParseError(toks[i].pos, "expected a command or property after 'expect'");
  e.head = toks[i++].text;
  while (toks[i].kind != Tok::End) {
    const std::size_t b = toks[i].begin;
    int depth = 0;
    std::size_t end = toks[i].end;
    do {
      if (toks[i].kind == Tok::Sym && toks[i].text == "[") ++depth;
      if (toks[i].kind == Tok::Sym && toks[i].text == "]") --depth;
      end = toks[i].end;
      ++i;
    } while (depth > 0 && toks[i].kind != Tok::End);
    e.args.push_back(left.substr(b, end - b));
  }
  if (e.negated && e.expected) throw ParseError(e.pos, "'expect not' takes a property, not '= value'");
  return e;
}

}  // namespace

// ---------------------------------------------------------------- parse entry points

Document parse(const std::string& text, const Ring& ring) {
  Document doc;
  doc.ring = ring;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (line.compare(first, 6, "expect") == 0 && (first + 6 == line.size() || std::isspace(static_cast<unsigned char>(line[first + 6])))) {
      doc.expects.push_back(parse_expect(line, first + 6, lineno));
      continue;
    }
    const auto toks = lex(line, lineno);
    Parser p(toks, doc.ring, doc);
    const Token head = p.next();
    if (head.kind != Tok::Ident) throw ParseError(head.pos, "expected 'ring', 'module', 'complex', 'amodule' or 'expect'");
    if (head.text == "ring") {
      if (!doc.names.empty()) throw ParseError(head.pos, "ring must be set before any object");
      const Token& t = p.peek();
      std::string rest = line.substr(t.begin);
      if (const auto hash = rest.find('#'); hash != std::string::npos) rest = rest.substr(0, hash);
      try {
        doc.ring = parse_ring(trim(rest));
      } catch (const std::invalid_argument& e) {
        throw ParseError(t.pos, e.what());
      }
      doc.ring_given = true;
      continue;
    }
    if (head.text != "module" && head.text != "complex" && head.text != "amodule")
      throw ParseError(head.pos, "unknown statement '" + head.text + "'");
    const SourcePos name_pos = p.peek().pos;
    const std::string name = p.name();
    if (doc.names.count(name)) throw ParseError(name_pos, "'" + name + "' is already defined");
    p.sym("=");
    const SourcePos vpos = p.peek().pos;
    Value v;
    if (head.text == "module") {
      v = p.module().module;
    } else {
      v = p.value();
      const bool ok = head.text == "complex" ? std::holds_alternative<ChainComplex>(v) : std::holds_alternative<GradedAModule>(v);
      if (!ok) throw ParseError(vpos, "expected " + std::string(head.text == "complex" ? "a complex (deg ...)" : "a graded module (graded ...)"));
    }
    p.finish();
    doc.names.emplace(name, std::move(v));
  }
  return doc;
}

Value parse_value(const std::string& text, const Document& scope) {
  const auto toks = lex(text, 1);
  Parser p(toks, scope.ring, scope);
  Value v = p.value();
  p.finish();
  return v;
}

Matrix parse_matrix(const std::string& text, const Ring& ring) {
  const auto toks = lex(text, 1);
  const Document none;
  Parser p(toks, ring, none);
  Matrix m = p.matrix();
  p.finish();
  return m;
}

// ---------------------------------------------------------------- printers

std::string literal(const FPModule& m) {
  if (m.is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < m.gens(); ++i) {
    if (i) s += " ⊕ ";
    s += m.order(i) == 0 ? "Z" : "Z/" + to_string(m.order(i));
  }
  return s;
}

namespace {

std::string complex_literal(const ChainComplex& x, const char* kw, const char* terms_kw) {
  if (x.is_zero()) return std::string(kw) == "deg" ? "zero" : std::string(kw) + " zero";
  std::string s = std::string(kw) + " " + std::to_string(x.hi()) + ".." + std::to_string(x.lo()) + " :";
  for (int n = x.hi(); n > x.lo(); --n) {
    const ModuleHom d = x.d(n);
    s += (n == x.hi() ? " " : ", ") + (d.is_zero() ? std::string("0") : d.matrix().to_string());
  }
  s += std::string(" ") + terms_kw;
  for (int n = x.hi(); n >= x.lo(); --n) s += (n == x.hi() ? " " : ", ") + literal(x.term(n));
  return s;
}

}  // namespace

std::string literal(const ChainComplex& x) { return complex_literal(x, "deg", "terms"); }
std::string literal(const GradedAModule& m) { return complex_literal(m.carrier, "graded", "pieces"); }
std::string literal(const Value& v) {
  return std::visit([](const auto& x) { return literal(x); }, v);
}

// ---------------------------------------------------------------- commands

namespace {

json int_json(const Int& v) {
  if (fits_int64(v)) return json(static_cast<std::int64_t>(v.get_si()));
  return json(to_string(v));
}

json module_tree(const FPModule& m) {
  const CanonicalForm c = canonical_form(m);
  json f = json::array();
  for (const Int& d : c.factors) f.push_back(int_json(d));
  return {{"type", "module"}, {"ring", m.ring().name()}, {"literal", literal(m)}, {"canonical", c.to_string()},
          {"factors", f}, {"free_rank", c.free_rank}};
}

json complex_tree(const ChainComplex& x, const char* type = "complex") {
  json terms = json::array(), maps = json::array();
  for (int n = x.hi(); n >= x.lo(); --n) {
    terms.push_back({{"degree", n}, {"module", literal(x.term(n))}, {"canonical", canonical_form(x.term(n)).to_string()}});
    if (n > x.lo()) {
      const Matrix a = x.d(n).matrix();
      json rows = json::array();
      for (std::size_t i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(int_json(a.at(i, j)));
        rows.push_back(row);
      }
      maps.push_back({{"degree", n}, {"matrix", rows}});
    }
  }
  json t = {{"type", type}, {"ring", x.ring().name()}, {"terms", terms}, {"boundaries", maps}};
  if (x.hi() >= x.lo()) {
    t["hi"] = x.hi();
    t["lo"] = x.lo();
  }
  t["literal"] = std::string(type) == "complex" ? literal(x) : literal(GradedAModule{x});
  return t;
}

std::string cf(const FPModule& m) { return canonical_form(m).to_string(); }

struct Ctx {
  const Options& opts;
  const Document& scope;
  const std::vector<std::string>& args;
  const std::string& command;
  Output out;
  json tree = json::object();

  void arity(std::size_t lo, std::size_t hi) const {
    if (args.size() < lo || args.size() > hi) {
      const std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi);
      throw UsageError(command + ": expected " + want + " arguments, got " + std::to_string(args.size()));
    }
  }
  Value value(std::size_t k) const {
    const Value v = parse_value(args.at(k), scope);
    if (value_ring(v) != scope.ring) throw UsageError(command + ": argument " + std::to_string(k + 1) + " is over " + value_ring(v).name());
    return v;
  }
  FPModule module(std::size_t k) const {
    Value v = value(k);
    if (auto* m = std::get_if<FPModule>(&v)) return *m;
    throw UsageError(command + ": argument " + std::to_string(k + 1) + " must be a module");
  }
  ChainComplex complex(std::size_t k) const {
    Value v = value(k);
    if (auto* x = std::get_if<ChainComplex>(&v)) return *x;
    throw UsageError(command + ": argument " + std::to_string(k + 1) + " must be a complex (deg ...)");
  }
  GradedAModule graded(std::size_t k) const {
    Value v = value(k);
    if (auto* x = std::get_if<GradedAModule>(&v)) return *x;
    throw UsageError(command + ": argument " + std::to_string(k + 1) + " must be a graded module (graded ...)");
  }
  long integer(std::size_t k, long lo = -1000, long hi = 1000) const {
    const std::string& s = args.at(k);
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw UsageError(command + ": argument " + std::to_string(k + 1) + " must be an integer");
    if (v < lo || v > hi) throw UsageError(command + ": argument " + std::to_string(k + 1) + " out of range");
    return v;
  }
  unsigned index(std::size_t k) const { return static_cast<unsigned>(integer(k, 0, 64)); }

  void line(const std::string& s) { out.lines.push_back(s); }
  void result_module(const FPModule& m) {
    line(cf(m));
    tree["result"] = module_tree(m);
  }
  void result_complex(const ChainComplex& x) {
    line(literal(x));
    tree["result"] = complex_tree(x);
  }
  void result_graded(const GradedAModule& m) {
    line(literal(m));
    tree["result"] = complex_tree(m.carrier, "graded-module");
  }
};

// ---- oracle cross-checks

std::optional<unsigned> oracle_ring(const Options& o, const std::vector<FPModule>& ms) {
  for (const FPModule& m : ms) {
    if (!m.is_finite()) return std::nullopt;
    if (m.cardinality() > o.bound) return std::nullopt;
  }
  Int k = 1;
  if (ms.front().ring().is_finite()) {
    k = ms.front().ring().modulus();
  } else {
    for (const FPModule& m : ms)
      if (!m.is_zero()) k *= m.exponent();
  }
  if (k > oracle::kMaxRing) return std::nullopt;
  return static_cast<unsigned>(k.get_ui());
}

void oracle_report(Ctx& c, const std::optional<bool>& agrees, const std::string& what) {
  if (!c.opts.oracle) return;
  if (!agrees) {
    c.line("oracle: not applicable (" + what + ")");
    c.tree["oracle"] = "not applicable";
    return;
  }
  c.line(std::string("oracle: ") + (*agrees ? "agrees" : "DISAGREES") + " (" + what + ")");
  c.tree["oracle"] = *agrees ? "agrees" : "disagrees";
  if (!*agrees) c.out.status = 1;
}

std::string gid_line(const GorensteinReport& g) {
  std::string why;
  for (Rule r : g.justification)
    if (r == Rule::QuasiFrobenius || r == Rule::InjectiveNotComputed || r == Rule::Degreewise)
      why += (why.empty() ? "" : ", ") + rule_name(r);
  return "Gid = " + g.gid.to_string() + " (" + why + ")";
}

std::string gfd_line(const GorensteinReport& g) {
  std::string why;
  for (Rule r : g.justification)
    if (r == Rule::QuasiFrobenius || r == Rule::FiniteGlobalDimension || r == Rule::Degreewise)
      why += (why.empty() ? "" : ", ") + rule_name(r);
  return "Gfd = " + g.gfd.to_string() + " (" + why + ")";
}

json report_tree(const GorensteinReport& g) {
  json rules = json::array();
  for (Rule r : g.justification) rules.push_back(rule_name(r));
  return {{"gpd", g.gpd.to_string()}, {"gid", g.gid.to_string()}, {"gfd", g.gfd.to_string()},
          {"pd", dimension_string(g.pd)}, {"w_member", g.w_member}, {"justification", rules}};
}

Subject subject(const Ctx& c, std::size_t k) {
  const Value v = c.value(k);
  if (const auto* m = std::get_if<FPModule>(&v)) return *m;
  if (const auto* x = std::get_if<ChainComplex>(&v)) return *x;
  return std::get<GradedAModule>(v).carrier;
}

CotorsionPair pair_named(const std::string& s) {
  if (s == "gp-w") return CotorsionPair::GP_W;
  if (s == "w-gi") return CotorsionPair::W_GI;
  if (s == "p-perp") return CotorsionPair::Pr_perp;
  if (s == "gf-perp") return CotorsionPair::GFr_perp;
  throw UsageError("witness: pair must be gp-w, w-gi, p-perp or gf-perp");
}

std::string ses_line(const ShortExact& s) {
  return "0 → " + cf(s.alpha.src()) + " → " + cf(s.alpha.dst()) + " → " + cf(s.beta.dst()) + " → 0";
}

void cmd_verify(Ctx& c) {
  c.arity(1, 1);
  if (c.args[0] == "paper-suite") {
    json rows = json::array();
    int failed = 0;
    for (const auto& r : acceptance::run_all(c.opts.seed)) {
      c.line(acceptance::format_line(r));
      rows.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
      failed += !r.passed;
    }
    c.line(std::to_string(acceptance::kCriteria - failed) + "/" + std::to_string(acceptance::kCriteria) + " criteria passed");
    c.tree["criteria"] = rows;
    if (failed) c.out.status = 1;
    return;
  }
  std::ifstream f(c.args[0]);
  if (!f) throw UsageError("verify: cannot read '" + c.args[0] + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  Document doc;
  try {
    doc = parse(buf.str(), c.opts.ring);
  } catch (const ParseError& e) {
    throw UsageError(c.args[0] + ": " + e.what());
  }
  Options o = c.opts;
  o.ring = doc.ring;
  Output r = run_suite(doc, o);
  c.out.lines = std::move(r.lines);
  c.tree = json::parse(r.tree);
  c.out.status = r.status;
}

void dispatch(Ctx& c) {
  const std::string& cmd = c.command;
  const Options& o = c.opts;
  if (cmd == "canon") {
    c.arity(1, 1);
    const Value v = c.value(0);
    if (const auto* m = std::get_if<FPModule>(&v)) {
      c.result_module(*m);
      std::optional<bool> ok;
      if (auto k = oracle_ring(o, {*m})) ok = oracle::canonical_form(oracle::translate(*m, *k), m->ring()) == canonical_form(*m);
      oracle_report(c, ok, "element table");
    } else if (const auto* x = std::get_if<ChainComplex>(&v)) {
      c.result_complex(x->trimmed());
    } else {
      c.result_graded(GradedAModule{std::get<GradedAModule>(v).carrier.trimmed()});
    }
  } else if (cmd == "ext" || cmd == "tor") {
    c.arity(3, 3);
    const unsigned i = c.index(0);
    const FPModule m = c.module(1), n = c.module(2);
    const DerivedModule d = cmd == "ext" ? ext(i, m, n) : tor(i, m, n);
    c.result_module(d.value);
    c.tree["resolution_length"] = d.resolution_length;
    std::optional<bool> ok;
    if (i == 1)
      if (auto k = oracle_ring(o, {m, n})) {
        const auto tm = oracle::translate(m, *k), tn = oracle::translate(n, *k);
        const auto g = cmd == "ext" ? oracle::brute_ext1(tm, tn) : oracle::brute_tor1(tm, tn);
        ok = g.factors == canonical_form(d.value).factors;
      }
    oracle_report(c, ok, i == 1 ? "brute-force extensions" : "only degree 1");
  } else if (cmd == "barext" || cmd == "bartor") {
    c.arity(3, 3);
    const unsigned i = c.index(0);
    const ChainComplex x = c.complex(1), y = c.complex(2);
    c.result_complex((cmd == "barext" ? bar_ext(i, x, y) : bar_tor(i, x, y)).trimmed());
  } else if (cmd == "extch") {
    c.arity(3, 3);
    c.result_module(ext_ch(c.index(0), c.complex(1), c.complex(2)));
  } else if (cmd == "pd") {
    c.arity(1, 1);
    const Subject s = subject(c, 0);
    const Dimension d = std::holds_alternative<FPModule>(s) ? pd(std::get<FPModule>(s)) : pd_complex(std::get<ChainComplex>(s));
    c.line("pd = " + dimension_string(d));
    c.tree["result"] = {{"pd", dimension_string(d)}};
  } else if (cmd == "gpd" || cmd == "gid" || cmd == "gfd") {
    c.arity(1, 1);
    const GorensteinReport g = classify(subject(c, 0));
    c.line(cmd == "gpd" ? g.gpd_line() : cmd == "gid" ? gid_line(g) : gfd_line(g));
    c.tree["result"] = report_tree(g);
  } else if (cmd == "dual") {
    c.arity(1, 2);
    const Value v = c.value(0);
    const std::optional<Int> n = c.args.size() > 1 ? std::optional<Int>(Int(c.integer(1, 1, 1 << 30))) : std::nullopt;
    if (const auto* m = std::get_if<FPModule>(&v))
      c.result_module(n ? character_dual(*m, *n) : character_dual(*m));
    else if (const auto* x = std::get_if<ChainComplex>(&v))
      c.result_complex(n ? pontryagin(*x, *n) : pontryagin(*x));
    else
      throw UsageError("dual: expected a module or a complex");
  } else if (cmd == "tensor") {
    c.arity(2, 2);
    const Value a = c.value(0), b = c.value(1);
    if (std::holds_alternative<FPModule>(a) && std::holds_alternative<FPModule>(b)) {
      const FPModule& m = std::get<FPModule>(a);
      const FPModule& n = std::get<FPModule>(b);
      const FPModule t = tensor_module(m, n);
      c.result_module(t);
      std::optional<bool> ok;
      if (auto k = oracle_ring(o, {m, n})) ok = oracle::tensor_size(oracle::translate(m, *k), oracle::translate(n, *k)) == t.cardinality();
      oracle_report(c, ok, "size via Hom(M, N⁺)");
    } else if (std::holds_alternative<ChainComplex>(a) && std::holds_alternative<ChainComplex>(b)) {
      c.result_complex(tensor(std::get<ChainComplex>(a), std::get<ChainComplex>(b)).trimmed());
    } else {
      throw UsageError("tensor: expected two modules or two complexes");
    }
  } else if (cmd == "bartensor" || cmd == "homprime" || cmd == "barhom") {
    c.arity(2, 2);
    const ChainComplex x = c.complex(0), y = c.complex(1);
    const ChainComplex r = cmd == "bartensor" ? bar_tensor(x, y) : cmd == "homprime" ? hom_prime(x, y) : bar_hom(x, y);
    c.result_complex(r.trimmed());
  } else if (cmd == "susp") {
    c.arity(2, 2);
    c.result_complex(suspension(static_cast<int>(c.integer(0)), c.complex(1)));
  } else if (cmd == "phi") {
    c.arity(1, 1);
    c.result_complex(phi(c.graded(0)));
  } else if (cmd == "psi") {
    c.arity(1, 1);
    c.result_graded(psi(c.complex(0)));
  } else if (cmd == "exta") {
    c.arity(3, 3);
    const unsigned i = c.index(0);
    const GradedAModule m = c.graded(1), n = c.graded(2);
    json shifts = json::array();
    FPModule total = FPModule::zero(m.base());
    for (const auto& [s, e] : ext_a_shifts(i, m, n)) {
      c.line("shift " + std::to_string(s) + ": " + cf(e));
      shifts.push_back({{"shift", s}, {"module", module_tree(e)}});
      total = FPModule::direct_sum(total, e);
    }
    c.line("total: " + cf(total));
    c.tree["result"] = {{"shifts", shifts}, {"total", module_tree(total)}};
  } else if (cmd == "tora") {
    c.arity(3, 3);
    c.result_graded(psi(tor_a(c.index(0), c.graded(1), c.graded(2)).trimmed()));
  } else if (cmd == "wpure") {
    c.arity(2, 2);
    const FPModule m = c.module(0);
    Matrix gens;
    try {
      gens = parse_matrix(c.args[1], m.ring());
    } catch (const ParseError& e) {
      throw UsageError("wpure: generators: " + std::string(e.what()));
    }
    if (gens.rows() != m.gens()) throw UsageError("wpure: generator columns need " + std::to_string(m.gens()) + " rows");
    const InclusionWitness w = make_inclusion(submodule(m, gens).inclusion);
    const bool pure = is_w_pure(w);
    c.line("0 → " + cf(w.incl.src()) + " → " + cf(m) + " → " + cf(w.quotient) + " → 0");
    c.line(std::string("W-pure: ") + (pure ? "yes" : "no"));
    c.tree["result"] = {{"sub", module_tree(w.incl.src())}, {"quotient", module_tree(w.quotient)}, {"w_pure", pure}};
  } else if (cmd == "filtration") {
    if (c.args.empty()) c.arity(1, 1);
    const FPModule m = c.module(0);
    FiltrationSet set = FiltrationSet::all_cyclics();
    if (c.args.size() > 1) {
      std::vector<FPModule> members;
      for (std::size_t k = 1; k < c.args.size(); ++k) members.push_back(c.module(k));
      set = FiltrationSet::of(std::move(members));
    }
    const FiltrationChain ch = build_filtration(m, set);
    const bool ok = verify_filtration(ch, set);
    json q = json::array();
    c.line("length " + std::to_string(ch.length()));
    for (std::size_t k = 0; k < ch.length(); ++k) {
      c.line("M_" + std::to_string(k + 1) + " = " + cf(ch.stages[k].incl.src()) + ", M_" + std::to_string(k + 1) + "/M_" +
             std::to_string(k) + " = " + cf(ch.quotients[k]));
      q.push_back(module_tree(ch.quotients[k]));
    }
    c.line(std::string("verified: ") + (ok ? "yes" : "no"));
    c.tree["result"] = {{"length", ch.length()}, {"quotients", q}, {"verified", ok}};
    if (!ok) c.out.status = 1;
  } else if (cmd == "witness") {
    c.arity(3, 3);
    const CotorsionPair pair = pair_named(c.args[0]);
    Side side;
    if (c.args[1] == "cover")
      side = Side::Cover;
    else if (c.args[1] == "envelope")
      side = Side::Envelope;
    else
      throw UsageError("witness: side must be cover or envelope");
    const ApproximationWitness w = approximation_witness(pair, c.module(2), side, o.r);
    const bool ok = verify_witness(w);
    c.line(ses_line(w.sequence));
    for (const std::string& s : w.certificates) c.line(s);
    c.line(std::string("verified: ") + (ok ? "yes" : "no"));
    c.tree["result"] = {{"sequence", ses_line(w.sequence)}, {"certificates", w.certificates}, {"verified", ok}};
    if (!ok) c.out.status = 1;
  } else if (cmd == "cogen") {
    c.arity(1, 1);
    const std::string& kind = c.args[0];
    json members = json::array();
    if (kind == "T" || kind == "S") {
      const auto set = cogenerating_modules(kind == "T" ? CogenKind::T_syzygy : CogenKind::S_r_injective, o.ring, o.r);
      for (const FPModule& m : set) {
        c.line(cf(m));
        members.push_back(module_tree(m));
      }
      std::vector<FPModule> proj;
      for (std::size_t k = 0; k <= 2; ++k) proj.push_back(FPModule::free(o.ring, k));
      const CogenerationReport rep = verify_cogeneration(set, proj, {});
      c.line(std::string("Ext¹ against projectives of rank ≤ 2 vanishes: ") + (rep.members_orthogonal ? "yes" : "no"));
      if (!rep.members_orthogonal) c.out.status = 1;
    } else if (kind == "X") {
      for (const ChainComplex& x : cogenerating_complexes(o.ring, static_cast<int>(std::min(o.bound, 16u)))) {
        c.line(literal(x));
        members.push_back(complex_tree(x));
      }
    } else {
      throw UsageError("cogen: kind must be T, S or X");
    }
    c.tree["result"] = members;
  } else if (cmd == "verify") {
    cmd_verify(c);
  } else {
    throw UsageError("unknown command '" + cmd + "'");
  }
}

const std::set<std::string> kProperties = {"exact", "projective", "injective", "w", "gp", "gi", "gf", "wpure"};

bool property(const Expectation& e, const Options& o, const Document& doc) {
  Ctx c{o, doc, e.args, e.head, {}, {}};
  auto with_r = [&](std::size_t n) {
    c.arity(n + 1, n + 1);
    return static_cast<unsigned>(c.integer(0, 0, 64));
  };
  if (e.head == "exact") {
    c.arity(1, 1);
    const Subject s = subject(c, 0);
    if (const auto* m = std::get_if<FPModule>(&s)) return m->is_zero();
    return is_exact(std::get<ChainComplex>(s));
  }
  if (e.head == "projective") {
    c.arity(1, 1);
    const Subject s = subject(c, 0);
    if (const auto* m = std::get_if<FPModule>(&s)) return is_projective(*m);
    return is_projective_complex(std::get<ChainComplex>(s));
  }
  if (e.head == "injective") {
    c.arity(1, 1);
    return is_injective_module(c.module(0));
  }
  if (e.head == "w") {
    c.arity(1, 1);
    return w_member(subject(c, 0));
  }
  if (e.head == "gp" || e.head == "gi" || e.head == "gf") {
    const unsigned r = with_r(1);
    const Subject s = subject(c, 1);
    return e.head == "gp" ? gp_r_member(s, r) : e.head == "gi" ? gi_r_member(s, r) : gf_r_member(s, r);
  }
  // wpure M GENS
  c.arity(2, 2);
  const FPModule m = c.module(0);
  return is_w_pure(make_inclusion(submodule(m, parse_matrix(e.args[1], m.ring())).inclusion));
}

std::string join(const std::vector<std::string>& lines) {
  std::string s;
  for (const auto& l : lines) s += (s.empty() ? "" : " | ") + l;
  return s;
}

}  // namespace

Output run_command(const std::string& command, const std::vector<std::string>& args, const Options& opts,
                   const Document& scope) {
  Ctx c{opts, scope, args, command, {}, {}};
  c.tree["command"] = command;
  c.tree["ring"] = scope.ring.name();
  dispatch(c);
  if (!c.tree.contains("command")) c.tree["command"] = command;
  c.tree["status"] = c.out.status;
  c.out.tree = c.tree.dump(2);
  return c.out;
}

Output run_suite(const Document& doc, const Options& opts) {
  Output out;
  json checks = json::array();
  std::size_t passed = 0;
  for (const Expectation& e : doc.expects) {
    bool ok = false;
    std::string got;
    try {
      if (!e.expected) {
        if (!kProperties.count(e.head)) throw UsageError("'" + e.head + "' is not a property; write '= expected'");
        ok = property(e, opts, doc) != e.negated;
        got = ok ? "" : (e.negated ? "holds" : "fails");
      } else {
        const Output r = run_command(e.head, e.args, opts, doc);
        got = join(r.lines);
        ok = got == *e.expected && r.status == 0;
      }
    } catch (const std::exception& ex) {
      got = std::string("error: ") + ex.what();
    }
    passed += ok;
    const std::string at = "line " + std::to_string(e.pos.line);
    out.lines.push_back(std::string(ok ? "ok    " : "FAIL  ") + at + "  " + e.source + (ok ? "" : "  (got " + got + ")"));
    checks.push_back({{"line", e.pos.line}, {"check", e.source}, {"passed", ok}, {"got", got}});
  }
  out.lines.push_back(std::to_string(passed) + "/" + std::to_string(doc.expects.size()) + " checks passed");
  out.status = passed == doc.expects.size() ? 0 : 1;
  out.tree = json{{"command", "verify"}, {"ring", doc.ring.name()}, {"checks", checks}, {"status", out.status}}.dump(2);
  return out;
}

// ---------------------------------------------------------------- program

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"gorhom: exact homological algebra over Z and Z/m"};
  std::string command, ring = "Z", format = "text", load;
  std::vector<std::string> args;
  Options opts;
  app.add_option("command", command,
                 "canon ext tor barext bartor extch pd gpd gid gfd dual tensor bartensor homprime barhom susp phi psi "
                 "exta tora wpure filtration witness cogen verify")
      ->required();
  // the remaining arguments are taken verbatim: CLI11 would split "[[1],[2]]" as a list
  app.allow_extras();
  app.footer("Arguments after the command are literals, names or integers.");
  app.add_option("--ring", ring, "Z or Z/m")->capture_default_str();
  app.add_option("--format", format, "text or tree")->check(CLI::IsMember({"text", "tree"}))->capture_default_str();
  app.add_flag("--oracle", opts.oracle, "cross-check against brute-force enumeration where sizes allow");
  app.add_option("--seed", opts.seed, "seed for randomized suites")->capture_default_str();
  app.add_option("--bound", opts.bound, "oracle size cap; window for cogen X")->capture_default_str();
  app.add_option("-r", opts.r, "index r for witness and cogen S")->capture_default_str();
  app.add_option("--load", load, "file of ring/module/complex definitions");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "gorhom: " << e.what() << "\n";
    return 2;
  }
  args = app.remaining();
  for (const std::string& a : args)
    if (a.size() > 1 && a[0] == '-' && !std::isdigit(static_cast<unsigned char>(a[1]))) {
      err << "gorhom: unknown option " << a << "\n";
      return 2;
    }
  try {
    opts.format = format;
    Document scope;
    try {
      scope.ring = parse_ring(ring);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--ring: ") + e.what());
    }
    if (!load.empty()) {
      std::ifstream f(load);
      if (!f) throw UsageError("cannot read '" + load + "'");
      std::stringstream buf;
      buf << f.rdbuf();
      try {
        scope = parse(buf.str(), scope.ring);
      } catch (const ParseError& e) {
        throw UsageError(load + ": " + e.what());
      }
    }
    opts.ring = scope.ring;
    const Output r = run_command(command, args, opts, scope);
    if (format == "tree")
      out << r.tree << "\n";
    else
      for (const auto& l : r.lines) out << l << "\n";
    return r.status;
  } catch (const UsageError& e) {
    err << "gorhom: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "gorhom: " << e.what() << "\n";
  } catch (const Refused& e) {
    err << "gorhom: refused: " << e.what() << "\n";
  } catch (const CheckFailed& e) {
    err << "gorhom: check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "gorhom: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace gorhom::cli
