#include "medflow/parser.hpp"

namespace medflow {

namespace {

int prec(const Expr& e) {
  if (e.kind != Expr::Kind::Op) return 6;
  if (e.name == "or") return 1;
  if (e.name == "and") return 2;
  if (e.name == "not") return 3;
  if (e.name == "eq" || e.name.rfind("indom:", 0) == 0) return 4;
  if (e.name == "add") return 5;
  return 6;  // isempty, tostring: call syntax
}

std::string lit_str(const Value& v) { return v.str(); }

std::string wrap(const Expr& e, int need) {
  std::string s = print_expr(e);
  return prec(e) < need ? "(" + s + ")" : s;
}

void print_block(const Block& b, int indent, std::string& out);

void print_stmt(const Stmt& s, int indent, std::string& out) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  switch (s.kind) {
    case Stmt::Kind::Assign:
      out += pad + s.target + " := " + print_expr(*s.expr);
      break;
    case Stmt::Kind::Declassify:
      out += pad + "DECLASSIFY(" + s.source + ", " + s.target + ")";
      break;
    case Stmt::Kind::FtStop:
      out += pad + "FTSTOP";
      break;
    case Stmt::Kind::If:
      out += pad + "IF " + print_expr(*s.expr) + " THEN\n";
      print_block(s.then_branch, indent + 1, out);
      if (!s.else_branch.empty()) {
        out += pad + "ELSE\n";
        print_block(s.else_branch, indent + 1, out);
      }
      out += pad + "END";
      break;
  }
}

void print_block(const Block& b, int indent, std::string& out) {
  for (std::size_t i = 0; i < b.size(); ++i) {
    print_stmt(*b[i], indent, out);
    out += i + 1 < b.size() ? ";\n" : "\n";
  }
}

}  // namespace

std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Lit:
      return lit_str(e.lit);
    case Expr::Kind::Var:
      return e.name;
    case Expr::Kind::Req: {
      std::string out = "BASICREQ(";
      if (e.req.kind == Query::Kind::Select) {
        out += "SELECT, ";
        for (std::size_t i = 0; i < e.req.predicate.size(); ++i)
          out += (i ? " AND " : "") + e.req.predicate[i].first + " = " + wrap(*e.req.predicate[i].second, 5);
      } else {
        out += "PROJECT, {";
        for (std::size_t i = 0; i < e.req.attributes.size(); ++i) out += (i ? "," : "") + e.req.attributes[i];
        out += "}";
      }
      return out + ")";
    }
    case Expr::Kind::Op:
      break;
  }
  const auto& n = e.name;
  if (n == "or") return wrap(*e.args[0], 1) + " OR " + wrap(*e.args[1], 2);
  if (n == "and") return wrap(*e.args[0], 2) + " AND " + wrap(*e.args[1], 3);
  if (n == "not") return "NOT " + wrap(*e.args[0], 3);
  if (n == "eq") return wrap(*e.args[0], 5) + " = " + wrap(*e.args[1], 5);
  if (n == "add") return wrap(*e.args[0], 5) + " + " + wrap(*e.args[1], 6);
  if (n.rfind("indom:", 0) == 0) return wrap(*e.args[0], 5) + " IN DOM(" + n.substr(6) + ")";
  if (n == "isempty") return "ISEMPTY(" + print_expr(*e.args[0]) + ")";
  if (n == "tostring") return "TOSTRING(" + print_expr(*e.args[0]) + ")";
  std::string out = n + "(";
  for (std::size_t i = 0; i < e.args.size(); ++i) out += (i ? ", " : "") + print_expr(*e.args[i]);
  return out + ")";
}

std::string print_stmt_head(const Stmt& s) {
  switch (s.kind) {
    case Stmt::Kind::Assign:
      return s.target + " := " + print_expr(*s.expr);
    case Stmt::Kind::Declassify:
      return "DECLASSIFY(" + s.source + ", " + s.target + ")";
    case Stmt::Kind::FtStop:
      return "FTSTOP";
    case Stmt::Kind::If:
      return "IF " + print_expr(*s.expr) + " THEN ...";
  }
  return "?";
}

std::string print_program(const Program& p) {
  std::string out = "PROGRAM " + p.name + "(";
  for (std::size_t i = 0; i < p.params.size(); ++i) out += (i ? ", " : "") + p.params[i];
  out += ") RETURNS " + p.returns + ";\n";
  for (const auto& d : p.decls) {
    out += "VAR " + d.name;
    if (d.level || d.kind != VarKind::Any) {
      out += " :";
      if (d.level) out += *d.level == Level::High ? " HIGH" : " LOW";
      if (d.kind == VarKind::Bool) out += " BOOL";
      if (d.kind == VarKind::Int) out += " INT";
    }
    out += ";\n";
  }
  out += "BEGIN\n";
  print_block(p.body, 1, out);
  out += "END\n";
  return out;
}

}  // namespace medflow
