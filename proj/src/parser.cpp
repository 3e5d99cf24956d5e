#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "medflow/parser.hpp"

namespace medflow {

namespace {

enum class Tok { Ident, Keyword, Atom, Int, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;  // keywords lower-cased
  int line = 1;
  int col = 1;
};

const std::set<std::string> kKeywords = {
    "program", "returns", "var",    "begin",    "end",      "if",     "then",   "else",
    "declassify", "not",  "and",    "or",       "in",       "dom",    "isempty", "tostring",
    "basicreq", "select", "project", "true",    "false",    "empty",  "low",    "high",
    "bool",     "int"};
const std::set<std::string> kLoops = {"while", "for", "repeat", "loop", "do", "until", "goto"};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      // glued "Attr:name" is a domain atom
      if (j + 1 < src.size() && src[j] == ':' && ident_char(src[j + 1])) {
        std::size_t k = j + 1;
        while (k < src.size() && ident_char(src[k])) ++k;
        t.kind = Tok::Atom;
        t.text = std::string(src.substr(i, k - i));
        advance(k - i);
        out.push_back(t);
        continue;
      }
      std::string word(src.substr(i, j - i));
      std::string lw = lower(word);
      if (kLoops.count(lw)) throw ParseError("unsupported construct '" + word + "' (loops are not part of the language)", line, col);
      if (kKeywords.count(lw)) {
        t.kind = Tok::Keyword;
        t.text = lw;
      } else {
        t.kind = Tok::Ident;
        t.text = word;
      }
      advance(j - i);
      out.push_back(t);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Int;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(t);
      continue;
    }
    if (c == ':' && i + 1 < src.size() && src[i + 1] == '=') {
      t.kind = Tok::Sym;
      t.text = ":=";
      advance(2);
      out.push_back(t);
      continue;
    }
    if (std::string_view("(),;:{}[]=+-.").find(c) != std::string_view::npos) {
      t.kind = Tok::Sym;
      t.text = std::string(1, c);
      advance(1);
      out.push_back(t);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program() {
    Program p;
    expect_kw("program");
    p.name = ident("program name");
    expect_sym("(");
    if (!at_sym(")")) {
      p.params.push_back(ident("parameter"));
      while (accept_sym(",")) p.params.push_back(ident("parameter"));
    }
    expect_sym(")");
    expect_kw("returns");
    p.returns = ident("reaction variable");
    expect_sym(";");
    while (accept_kw("var")) decl(p);
    expect_kw("begin");
    p.body = block({"end"});
    expect_kw("end");
    accept_sym(".");
    accept_sym(";");
    if (peek().kind != Tok::End) fail("trailing input after program end");
    return p;
  }

  ExprPtr expression_only() {
    auto e = expr();
    if (peek().kind != Tok::End) fail("trailing input after expression");
    return e;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const auto& t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + " (found " + got + ")", t.line, t.col);
  }

  bool at_kw(const char* kw) const { return peek().kind == Tok::Keyword && peek().text == kw; }
  bool at_sym(const char* s) const { return peek().kind == Tok::Sym && peek().text == s; }
  bool accept_kw(const char* kw) {
    if (!at_kw(kw)) return false;
    ++pos_;
    return true;
  }
  bool accept_sym(const char* s) {
    if (!at_sym(s)) return false;
    ++pos_;
    return true;
  }
  void expect_kw(const char* kw) {
    if (!accept_kw(kw)) fail(std::string("expected '") + kw + "'");
  }
  void expect_sym(const char* s) {
    if (!accept_sym(s)) fail(std::string("expected '") + s + "'");
  }
  std::string ident(const char* what) {
    if (peek().kind != Tok::Ident) fail(std::string("expected ") + what);
    return next().text;
  }

  void decl_tail(Program& p, std::vector<std::string> names, std::optional<Level> level, VarKind kind, int line) {
    for (auto& n : names) {
      if (p.decl(n)) throw ParseError("variable '" + n + "' declared twice", line, 1);
      p.decls.push_back(VarDecl{n, level, kind, line});
    }
  }

  void decl(Program& p) {
    int line = peek().line;
    std::vector<std::string> names;
    std::optional<Level> level;
    VarKind kind = VarKind::Any;
    for (;;) {
      if (peek().kind == Tok::Atom) {
        // "x:high" lexes as one atom token
        auto t = next();
        auto c = t.text.find(':');
        names.push_back(t.text.substr(0, c));
        std::string w = lower(t.text.substr(c + 1));
        if (w == "high" || w == "low")
          level = w == "high" ? Level::High : Level::Low;
        else if (w == "bool" || w == "int")
          kind = w == "bool" ? VarKind::Bool : VarKind::Int;
        else
          throw ParseError("expected level or kind after ':'", t.line, t.col);
        decl_spec(level, kind);
        expect_sym(";");
        decl_tail(p, names, level, kind, line);
        return;
      }
      names.push_back(ident("variable name"));
      if (!accept_sym(",")) break;
    }
    if (accept_sym(":")) {
      if (accept_kw("high"))
        level = Level::High;
      else if (accept_kw("low"))
        level = Level::Low;
      decl_spec(level, kind);
    }
    expect_sym(";");
    decl_tail(p, names, level, kind, line);
  }

  void decl_spec(std::optional<Level>& level, VarKind& kind) {
    if (!level) {
      if (accept_kw("high"))
        level = Level::High;
      else if (accept_kw("low"))
        level = Level::Low;
    }
    if (accept_kw("bool"))
      kind = VarKind::Bool;
    else if (accept_kw("int"))
      kind = VarKind::Int;
  }

  Block block(std::initializer_list<const char*> terminators) {
    Block out;
    auto at_term = [&] {
      for (auto* t : terminators)
        if (at_kw(t)) return true;
      return false;
    };
    if (at_term()) return out;
    out.push_back(stmt());
    while (accept_sym(";")) {
      if (at_term()) break;
      out.push_back(stmt());
    }
    if (!at_term()) fail("expected ';' or end of block");
    return out;
  }

  StmtPtr stmt() {
    auto s = std::make_shared<Stmt>();
    s->line = peek().line;
    s->id = next_id_++;
    if (accept_kw("if")) {
      s->kind = Stmt::Kind::If;
      s->expr = expr();
      expect_kw("then");
      s->then_branch = block({"else", "end"});
      if (accept_kw("else")) s->else_branch = block({"end"});
      expect_kw("end");
      return s;
    }
    if (accept_kw("declassify")) {
      s->kind = Stmt::Kind::Declassify;
      expect_sym("(");
      s->source = ident("declassification source");
      expect_sym(",");
      s->target = ident("declassification destination");
      expect_sym(")");
      return s;
    }
    if (peek().kind == Tok::Ident) {
      s->kind = Stmt::Kind::Assign;
      s->target = next().text;
      expect_sym(":=");
      s->expr = expr();
      return s;
    }
    fail("expected statement");
  }

  ExprPtr mk(const Token& at, std::shared_ptr<Expr> e) {
    e->line = at.line;
    e->col = at.col;
    return e;
  }
  ExprPtr mk_op(const Token& at, std::string name, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Op;
    e->name = std::move(name);
    e->args = std::move(args);
    return mk(at, e);
  }

  ExprPtr expr() { return or_expr(); }

  ExprPtr or_expr() {
    auto lhs = and_expr();
    while (at_kw("or")) {
      auto t = next();
      lhs = mk_op(t, "or", {lhs, and_expr()});
    }
    return lhs;
  }

  ExprPtr and_expr() {
    auto lhs = not_expr();
    while (at_kw("and")) {
      auto t = next();
      lhs = mk_op(t, "and", {lhs, not_expr()});
    }
    return lhs;
  }

  ExprPtr not_expr() {
    if (at_kw("not")) {
      auto t = next();
      return mk_op(t, "not", {not_expr()});
    }
    return cmp_expr();
  }

  ExprPtr cmp_expr() {
    auto lhs = add_expr();
    if (at_sym("=")) {
      auto t = next();
      return mk_op(t, "eq", {lhs, add_expr()});
    }
    if (at_kw("in")) {
      auto t = next();
      expect_kw("dom");
      expect_sym("(");
      std::string attr = ident("attribute name");
      expect_sym(")");
      return mk_op(t, "indom:" + attr, {lhs});
    }
    return lhs;
  }

  ExprPtr add_expr() {
    auto lhs = primary();
    while (at_sym("+")) {
      auto t = next();
      lhs = mk_op(t, "add", {lhs, primary()});
    }
    return lhs;
  }

  ExprPtr primary() {
    const Token t = peek();
    if (accept_sym("(")) {
      auto e = expr();
      expect_sym(")");
      return e;
    }
    if (accept_kw("true")) return mk(t, lit(Value(true)));
    if (accept_kw("false")) return mk(t, lit(Value(false)));
    if (accept_kw("empty")) return mk(t, lit(Value(Empty{})));
    if (t.kind == Tok::Int) {
      ++pos_;
      return mk(t, lit(Value(static_cast<std::int64_t>(std::stoll(t.text)))));
    }
    if (at_sym("-") && peek(1).kind == Tok::Int) {
      ++pos_;
      auto n = next();
      return mk(t, lit(Value(-static_cast<std::int64_t>(std::stoll(n.text)))));
    }
    if (t.kind == Tok::Atom) {
      ++pos_;
      return mk(t, lit(Value::atom(t.text)));
    }
    if (accept_sym("[")) {
      auto lo = signed_int();
      expect_sym(",");
      auto hi = signed_int();
      expect_sym("]");
      if (lo > hi) throw ParseError("interval with lower bound above upper bound", t.line, t.col);
      return mk(t, lit(Value::interval(lo, hi)));
    }
    if (accept_kw("isempty") || accept_kw("tostring")) {
      std::string name = toks_[pos_ - 1].text;
      expect_sym("(");
      auto a = expr();
      expect_sym(")");
      return mk_op(t, name, {a});
    }
    if (accept_kw("basicreq")) return request(t);
    if (t.kind == Tok::Ident) {
      ++pos_;
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Var;
      e->name = t.text;
      return mk(t, e);
    }
    fail("expected expression");
  }

  std::int64_t signed_int() {
    bool neg = accept_sym("-");
    if (peek().kind != Tok::Int) fail("expected integer");
    auto v = std::stoll(next().text);
    return neg ? -v : v;
  }

  static std::shared_ptr<Expr> lit(Value v) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Lit;
    e->lit = std::move(v);
    return e;
  }

  ExprPtr request(const Token& at) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Req;
    expect_sym("(");
    if (accept_kw("select")) {
      e->req.kind = Query::Kind::Select;
      expect_sym(",");
      do {
        std::string attr = ident("attribute name");
        expect_sym("=");
        e->req.predicate.emplace_back(attr, add_expr());
      } while (accept_kw("and"));
    } else if (accept_kw("project")) {
      e->req.kind = Query::Kind::Project;
      expect_sym(",");
      expect_sym("{");
      e->req.attributes.push_back(ident("attribute name"));
      while (accept_sym(",")) e->req.attributes.push_back(ident("attribute name"));
      expect_sym("}");
    } else {
      fail("expected query kind 'select' or 'project'");
    }
    expect_sym(")");
    return mk(at, e);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int next_id_ = 0;
};

}  // namespace

Program parse_program(std::string_view source) { return Parser(lex(source)).program(); }

ExprPtr parse_expr(std::string_view source) { return Parser(lex(source)).expression_only(); }

}  // namespace medflow
