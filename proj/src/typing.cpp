#include "medflow/typing.hpp"

#include <functional>

#include "medflow/parser.hpp"

namespace medflow {

std::string TypeViolation::str() const {
  return "line " + std::to_string(line) + ": rule (" + std::string(1, rule) + "): " + message;
}

bool TypedProgram::is_high(const std::string& var) const {
  auto it = var_level.find(var);
  return it != var_level.end() && it->second == Level::High;
}

Level TypedProgram::level_of(const Stmt& s) const {
  if (s.kind == Stmt::Kind::FtStop) return Level::High;
  auto it = stmt_level.find(s.id);
  if (it == stmt_level.end()) throw ProgramError("statement without level: " + print_stmt_head(s));
  return it->second;
}

Level TypedProgram::expr_level(const Expr& e) const {
  switch (e.kind) {
    case Expr::Kind::Lit:
      return Level::Low;
    case Expr::Kind::Var:
      return is_high(e.name) ? Level::High : Level::Low;
    case Expr::Kind::Req:
      return Level::High;
    case Expr::Kind::Op: {
      Level l = Level::Low;
      for (const auto& a : e.args) l = join(l, expr_level(*a));
      return l;
    }
  }
  return Level::High;
}

std::vector<std::string> TypedProgram::high_vars() const {
  std::vector<std::string> out;
  for (const auto& [v, l] : var_level)
    if (l == Level::High) out.push_back(v);
  return out;
}

std::vector<std::string> TypedProgram::low_vars() const {
  std::vector<std::string> out;
  for (const auto& [v, l] : var_level)
    if (l == Level::Low) out.push_back(v);
  return out;
}

namespace {

void requests_in(const Expr& e, std::vector<const Expr*>& out) {
  if (e.kind == Expr::Kind::Req) out.push_back(&e);
  for (const auto& a : e.args) requests_in(*a, out);
  for (const auto& [attr, x] : e.req.predicate) requests_in(*x, out);
}

}  // namespace

TypedProgram infer(const Program& p) {
  TypedProgram tp;
  for (const auto& v : p.variables()) tp.var_level[v] = Level::Low;
  for (const auto& v : p.params) tp.anchored.insert(v);
  tp.anchored.insert(p.returns);
  for (const auto& d : p.decls)
    if (d.level) {
      tp.anchored.insert(d.name);
      tp.var_level[d.name] = *d.level;
    }
  // parameters and the reaction variable stay low whatever their declaration says
  for (const auto& v : p.params) tp.var_level[v] = Level::Low;
  tp.var_level[p.returns] = Level::Low;

  bool changed = true;
  std::function<void(const Block&, Level)> raise = [&](const Block& b, Level ctx) {
    for (const auto& s : b) {
      if (s->kind == Stmt::Kind::Assign) {
        Level l = join(tp.expr_level(*s->expr), ctx);
        if (l == Level::High && !tp.anchored.count(s->target) && !tp.is_high(s->target)) {
          tp.var_level[s->target] = Level::High;
          changed = true;
        }
      } else if (s->kind == Stmt::Kind::If) {
        Level g = join(tp.expr_level(*s->expr), ctx);
        raise(s->then_branch, g);
        raise(s->else_branch, g);
      }
    }
  };
  while (changed) {
    changed = false;
    raise(p.body, Level::Low);
  }

  auto violate = [&](char rule, const Stmt& s, std::string msg) {
    tp.violations.push_back(TypeViolation{rule, s.id, s.line, std::move(msg)});
  };
  auto check_requests = [&](const Stmt& s, const Expr& e) {
    std::vector<const Expr*> reqs;
    requests_in(e, reqs);
    for (const auto* r : reqs)
      for (const auto& [attr, x] : r->req.predicate)
        if (tp.expr_level(*x) == Level::High)
          violate('c', s, "request parameter '" + print_expr(*x) + "' is high");
  };
  std::function<void(const Block&, Level)> check = [&](const Block& b, Level ctx) {
    for (const auto& s : b) {
      switch (s->kind) {
        case Stmt::Kind::Assign: {
          check_requests(*s, *s->expr);
          Level rhs = tp.expr_level(*s->expr);
          if (!tp.is_high(s->target)) {
            if (ctx == Level::High)
              violate('b', *s, "assignment to low variable '" + s->target + "' under a high guard");
            else if (rhs == Level::High)
              violate('a', *s, "high expression assigned to low variable '" + s->target + "'");
          }
          tp.stmt_level[s->id] = tp.var_level[s->target];
          break;
        }
        case Stmt::Kind::Declassify:
          if (ctx == Level::High)
            violate('b', *s, "declassification of '" + s->source + "' under a high guard");
          tp.stmt_level[s->id] = join(tp.var_level[s->target], ctx);
          break;
        case Stmt::Kind::If: {
          check_requests(*s, *s->expr);
          Level g = join(tp.expr_level(*s->expr), ctx);
          tp.stmt_level[s->id] = g;
          check(s->then_branch, g);
          check(s->else_branch, g);
          break;
        }
        case Stmt::Kind::FtStop:
          throw ProgramError("ftstop in source program");
      }
    }
  };
  check(p.body, Level::Low);

  if (tp.accepted()) {
    std::function<void(const Block&)> spans = [&](const Block& b) {
      Fragment cur;
      auto flush = [&] {
        if (!cur.stmts.empty()) {
          cur.id = static_cast<int>(tp.fragments.size());
          tp.fragments.push_back(cur);
          cur.stmts.clear();
        }
      };
      for (const auto& s : b) {
        if (tp.level_of(*s) == Level::High) {
          cur.stmts.push_back(s);
          continue;
        }
        flush();
        if (s->kind == Stmt::Kind::If) {
          spans(s->then_branch);
          spans(s->else_branch);
        }
      }
      flush();
    };
    spans(p.body);
  }
  return tp;
}

TypedProgram typecheck(const Program& p) {
  auto tp = infer(p);
  if (!tp.accepted()) throw TypeError(tp.violations.front());
  return tp;
}

std::string TypedProgram::report() const {
  std::string out;
  for (const auto& [v, l] : var_level) out += "var " + v + " " + level_name(l) + "\n";
  for (const auto& [id, l] : stmt_level) out += "stmt " + std::to_string(id) + " " + level_name(l) + "\n";
  for (const auto& f : fragments) {
    out += "fragment " + std::to_string(f.id) + " [";
    for (std::size_t i = 0; i < f.stmts.size(); ++i) out += (i ? "," : "") + std::to_string(f.stmts[i]->id);
    out += "]\n";
  }
  for (const auto& v : violations) out += "violation " + v.str() + "\n";
  out += accepted() ? "accepted\n" : "rejected\n";
  return out;
}

void validate_program(const Program& p, const Schema& s) {
  std::set<std::string> vars;
  for (const auto& v : p.variables()) vars.insert(v);
  std::function<void(const Expr&, int)> check_expr = [&](const Expr& e, int line) {
    auto where = "line " + std::to_string(line) + ": ";
    if (e.kind == Expr::Kind::Var && !vars.count(e.name)) throw ProgramError(where + "undeclared variable '" + e.name + "'");
    if (e.kind == Expr::Kind::Op && e.name.rfind("indom:", 0) == 0 && s.index_of(e.name.substr(6)) < 0)
      throw ProgramError(where + "unknown attribute '" + e.name.substr(6) + "'");
    if (e.kind == Expr::Kind::Req) {
      for (const auto& a : e.req.attributes)
        if (s.index_of(a) < 0) throw ProgramError(where + "unknown attribute '" + a + "'");
      for (const auto& [a, x] : e.req.predicate) {
        if (s.index_of(a) < 0) throw ProgramError(where + "unknown attribute '" + a + "'");
        check_expr(*x, line);
      }
    }
    for (const auto& a : e.args) check_expr(*a, line);
  };
  // returns whether the reaction variable is set on every path through b
  std::function<bool(const Block&)> walk = [&](const Block& b) {
    bool sets = false;
    for (const auto& st : b) {
      auto where = "line " + std::to_string(st->line) + ": ";
      switch (st->kind) {
        case Stmt::Kind::Assign:
          if (!vars.count(st->target)) throw ProgramError(where + "undeclared variable '" + st->target + "'");
          check_expr(*st->expr, st->line);
          sets = sets || st->target == p.returns;
          break;
        case Stmt::Kind::Declassify:
          if (!vars.count(st->source)) throw ProgramError(where + "undeclared variable '" + st->source + "'");
          if (!vars.count(st->target)) throw ProgramError(where + "undeclared variable '" + st->target + "'");
          sets = sets || st->target == p.returns;
          break;
        case Stmt::Kind::If: {
          check_expr(*st->expr, st->line);
          bool a = walk(st->then_branch);
          bool b2 = walk(st->else_branch);
          sets = sets || (a && b2);
          break;
        }
        case Stmt::Kind::FtStop:
          throw ProgramError(where + "ftstop in source program");
      }
    }
    return sets;
  };
  if (!walk(p.body)) throw ProgramError("reaction variable '" + p.returns + "' is not assigned on every path");
}

std::size_t high_prefix_length(const std::vector<StmtPtr>& code, const TypedProgram& tp) {
  std::size_t n = 0;
  while (n < code.size() && tp.level_of(*code[n]) == Level::High) ++n;
  return n;
}

}  // namespace medflow
