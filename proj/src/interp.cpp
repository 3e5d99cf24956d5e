#include "medflow/interp.hpp"

#include "medflow/parser.hpp"

namespace medflow {

Value eval_expr(const Expr& e, const Memory& mem, const State* db, const EvalCtx& ctx) {
  switch (e.kind) {
    case Expr::Kind::Lit:
      return e.lit;
    case Expr::Kind::Var: {
      auto it = mem.find(e.name);
      if (it == mem.end()) throw EvalError("unbound variable '" + e.name + "'");
      return it->second;
    }
    case Expr::Kind::Req: {
      if (!db) throw EvalError("request evaluated without a database state");
      return eval_query(build_query(e.req, mem, ctx), *ctx.schema, *db);
    }
    case Expr::Kind::Op: {
      std::vector<Value> args;
      args.reserve(e.args.size());
      for (const auto& a : e.args) args.push_back(eval_expr(*a, mem, db, ctx));
      return ctx.ops->apply(e.name, args);
    }
  }
  throw EvalError("bad expression");
}

Query build_query(const Request& r, const Memory& mem, const EvalCtx& ctx) {
  Query q;
  q.kind = r.kind;
  q.attributes = r.attributes;
  for (const auto& [attr, ex] : r.predicate) q.predicate.emplace_back(attr, eval_expr(*ex, mem, nullptr, ctx));
  if (ctx.schema) q.validate(*ctx.schema);
  return q;
}

Value default_value(VarKind k) {
  switch (k) {
    case VarKind::Bool:
      return Value(false);
    case VarKind::Int:
      return Value(0);
    case VarKind::Any:
      break;
  }
  return Value(Empty{});
}

Memory initial_memory(const Program& p, const std::vector<Value>& args) {
  if (args.size() != p.params.size())
    throw EvalError("program " + p.name + " expects " + std::to_string(p.params.size()) + " arguments, got " +
                    std::to_string(args.size()));
  Memory m;
  for (const auto& v : p.variables()) {
    const VarDecl* d = p.decl(v);
    m[v] = default_value(d ? d->kind : VarKind::Any);
  }
  for (std::size_t i = 0; i < args.size(); ++i) m[p.params[i]] = args[i];
  return m;
}

Config step(Config cfg, const EvalCtx& ctx, const StepHooks& hooks) {
  if (cfg.code.empty()) throw EvalError("step on empty program");
  StmtPtr s = cfg.code.front();
  cfg.code.erase(cfg.code.begin());
  switch (s->kind) {
    case Stmt::Kind::Assign: {
      if (!cfg.mem.count(s->target)) throw EvalError("assignment to undeclared variable '" + s->target + "'");
      cfg.mem[s->target] = eval_expr(*s->expr, cfg.mem, cfg.db, ctx);
      break;
    }
    case Stmt::Kind::If: {
      Value g = eval_expr(*s->expr, cfg.mem, cfg.db, ctx);
      if (!g.is_bool()) throw EvalError("guard of '" + print_stmt_head(*s) + "' is not boolean: " + g.str());
      const Block& b = g.as_bool() ? s->then_branch : s->else_branch;
      cfg.code.insert(cfg.code.begin(), b.begin(), b.end());
      break;
    }
    case Stmt::Kind::Declassify:
      if (hooks.on_declassify) {
        hooks.on_declassify(cfg, *s);
      } else {
        auto it = cfg.mem.find(s->source);
        if (it == cfg.mem.end()) throw EvalError("unbound variable '" + s->source + "'");
        if (!cfg.mem.count(s->target)) throw EvalError("assignment to undeclared variable '" + s->target + "'");
        cfg.mem[s->target] = it->second;
      }
      break;
    case Stmt::Kind::FtStop:
      if (hooks.on_ftstop) hooks.on_ftstop(cfg, *s);
      break;
  }
  return cfg;
}

ConcreteResult run_concrete(const Code& code, Memory mem, const State& db, const EvalCtx& ctx) {
  Config cfg{code, std::move(mem), &db};
  // loop-free code: each statement is stepped at most once
  int budget = 0;
  std::function<int(const Block&)> count = [&](const Block& b) {
    int n = 0;
    for (const auto& s : b) n += 1 + count(s->then_branch) + count(s->else_branch);
    return n;
  };
  budget = count(code) + 1;
  int steps = 0;
  while (!cfg.code.empty()) {
    if (++steps > budget) throw EvalError("step budget exceeded");
    cfg = step(std::move(cfg), ctx);
  }
  return ConcreteResult{std::move(cfg.mem), Value(), steps};
}

ConcreteResult run_concrete(const Program& p, const std::vector<Value>& args, const State& db, const EvalCtx& ctx) {
  auto r = run_concrete(p.body, initial_memory(p, args), db, ctx);
  r.reaction = r.mem.at(p.returns);
  return r;
}

}  // namespace medflow
