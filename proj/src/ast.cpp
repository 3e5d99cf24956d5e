#include "medflow/ast.hpp"

#include <algorithm>
#include <functional>

namespace medflow {

ExprPtr Expr::literal(Value v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Lit;
  e->lit = std::move(v);
  return e;
}

ExprPtr Expr::var(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Var;
  e->name = std::move(name);
  return e;
}

ExprPtr Expr::op(std::string name, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Op;
  e->name = std::move(name);
  e->args = std::move(args);
  return e;
}

bool same_expr(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Lit:
      return a.lit == b.lit;
    case Expr::Kind::Var:
      return a.name == b.name;
    case Expr::Kind::Op:
      if (a.name != b.name || a.args.size() != b.args.size()) return false;
      for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!same_expr(*a.args[i], *b.args[i])) return false;
      return true;
    case Expr::Kind::Req:
      if (a.req.kind != b.req.kind || a.req.attributes != b.req.attributes) return false;
      if (a.req.predicate.size() != b.req.predicate.size()) return false;
      for (std::size_t i = 0; i < a.req.predicate.size(); ++i)
        if (a.req.predicate[i].first != b.req.predicate[i].first ||
            !same_expr(*a.req.predicate[i].second, *b.req.predicate[i].second))
          return false;
      return true;
  }
  return false;
}

StmtPtr ftstop_stmt() {
  static const StmtPtr s = [] {
    auto st = std::make_shared<Stmt>();
    st->kind = Stmt::Kind::FtStop;
    st->id = -1;
    return st;
  }();
  return s;
}

bool same_stmt(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind || a.target != b.target || a.source != b.source) return false;
  if (static_cast<bool>(a.expr) != static_cast<bool>(b.expr)) return false;
  if (a.expr && !same_expr(*a.expr, *b.expr)) return false;
  return same_block(a.then_branch, b.then_branch) && same_block(a.else_branch, b.else_branch);
}

bool same_block(const Block& a, const Block& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_stmt(*a[i], *b[i])) return false;
  return true;
}

std::vector<std::string> Program::variables() const {
  std::vector<std::string> out = params;
  for (const auto& d : decls)
    if (std::find(out.begin(), out.end(), d.name) == out.end()) out.push_back(d.name);
  if (!returns.empty() && std::find(out.begin(), out.end(), returns) == out.end()) out.push_back(returns);
  return out;
}

const VarDecl* Program::decl(const std::string& v) const {
  for (const auto& d : decls)
    if (d.name == v) return &d;
  return nullptr;
}

bool Program::is_param(const std::string& v) const {
  return std::find(params.begin(), params.end(), v) != params.end();
}

int Program::statement_count() const {
  std::function<int(const Block&)> count = [&](const Block& b) {
    int n = 0;
    for (const auto& s : b) n += 1 + count(s->then_branch) + count(s->else_branch);
    return n;
  };
  return count(body);
}

bool same_program(const Program& a, const Program& b) {
  if (a.name != b.name || a.params != b.params || a.returns != b.returns) return false;
  if (a.decls.size() != b.decls.size()) return false;
  for (std::size_t i = 0; i < a.decls.size(); ++i)
    if (a.decls[i].name != b.decls[i].name || a.decls[i].level != b.decls[i].level ||
        a.decls[i].kind != b.decls[i].kind)
      return false;
  return same_block(a.body, b.body);
}

}  // namespace medflow
