#include "medflow/symexec.hpp"

#include <functional>

#include "medflow/parser.hpp"

namespace medflow {

SymPtr SymExpr::sym(std::string n) {
  auto e = std::make_shared<SymExpr>();
  e->kind = Kind::Sym;
  e->name = std::move(n);
  return e;
}

SymPtr SymExpr::hvar(std::string n) {
  auto e = std::make_shared<SymExpr>();
  e->kind = Kind::HVar;
  e->name = std::move(n);
  return e;
}

SymPtr SymExpr::op(std::string n, std::vector<SymPtr> args) {
  auto e = std::make_shared<SymExpr>();
  e->kind = Kind::Op;
  e->name = std::move(n);
  e->args = std::move(args);
  return e;
}

SymPtr SymExpr::branch(SymPtr cond, SymPtr val) {
  if (!cond) return val;
  auto e = std::make_shared<SymExpr>();
  e->kind = Kind::Branch;
  e->args = {std::move(cond), std::move(val)};
  return e;
}

SymPtr SymExpr::join(SymPtr a, SymPtr b) {
  if (!a) return b;
  auto e = std::make_shared<SymExpr>();
  e->kind = Kind::Join;
  e->args = {std::move(a), std::move(b)};
  return e;
}

namespace {

// Leaves and prefix-style operators print without parentheses.
bool atomic(const SymExpr& e) {
  if (e.kind == SymExpr::Kind::Sym || e.kind == SymExpr::Kind::HVar) return true;
  if (e.kind != SymExpr::Kind::Op) return false;
  return e.name != "and" && e.name != "or" && e.name != "add" && e.name != "eq";
}

std::string operand(const SymExpr& e) { return atomic(e) ? sym_str(e) : "(" + sym_str(e) + ")"; }

}  // namespace

std::string sym_str(const SymExpr& e) {
  switch (e.kind) {
    case SymExpr::Kind::Sym:
    case SymExpr::Kind::HVar:
      return e.name;
    case SymExpr::Kind::Join: {
      const auto& rhs = *e.args[1];
      return sym_str(*e.args[0]) + " ⊔ " + (rhs.kind == SymExpr::Kind::Join ? "(" + sym_str(rhs) + ")" : sym_str(rhs));
    }
    case SymExpr::Kind::Branch:
      return operand(*e.args[0]) + " ⊲ " + operand(*e.args[1]);
    case SymExpr::Kind::Op:
      break;
  }
  const auto& n = e.name;
  auto arg = [&](std::size_t i) { return operand(*e.args[i]); };
  if (n == "not") return "¬" + arg(0);
  if (n == "and") return arg(0) + " ∧ " + arg(1);
  if (n == "or") return arg(0) + " ∨ " + arg(1);
  if (n == "add") return arg(0) + " ⊕ " + arg(1);
  if (n == "eq") return arg(0) + " = " + arg(1);
  std::string out = n + "(";
  for (std::size_t i = 0; i < e.args.size(); ++i) out += (i ? "," : "") + sym_str(*e.args[i]);
  return out + ")";
}

std::string SymInit::fresh(ExprPtr source) {
  std::string name = "s" + std::to_string(entries.size());
  entries.emplace_back(name, std::move(source));
  return name;
}

const Expr& SymInit::at(const std::string& sym) const {
  for (const auto& [n, e] : entries)
    if (n == sym) return *e;
  throw std::out_of_range("unknown symbol " + sym);
}

namespace {

bool low_only(const Expr& e, const TypedProgram& env) {
  switch (e.kind) {
    case Expr::Kind::Lit:
      return true;
    case Expr::Kind::Var:
      return !env.is_high(e.name);
    case Expr::Kind::Req:
      return false;
    case Expr::Kind::Op:
      for (const auto& a : e.args)
        if (!low_only(*a, env)) return false;
      return true;
  }
  return false;
}

}  // namespace

SymPtr trans_expr(const Expr& e, const SymState& sigma, SymInit& iota, const TypedProgram& env) {
  if (e.kind == Expr::Kind::Req || low_only(e, env)) {
    auto copy = std::make_shared<Expr>(e);
    return SymExpr::sym(iota.fresh(copy));
  }
  if (e.kind == Expr::Kind::Var) {
    auto it = sigma.find(e.name);
    return it != sigma.end() ? it->second : SymExpr::hvar(e.name);
  }
  std::vector<SymPtr> args;
  for (const auto& a : e.args) args.push_back(trans_expr(*a, sigma, iota, env));
  return SymExpr::op(e.name, std::move(args));
}

SymResult sym_exec(const ExecutionTree& t, const TypedProgram& env) {
  SymResult r;
  r.tree = t;
  r.pc.assign(t.nodes.size(), nullptr);
  SymState start;
  for (const auto& x : env.high_vars()) start[x] = SymExpr::hvar(x);
  std::vector<std::pair<SymPtr, SymState>> at_leaf;

  std::function<void(int, const SymState&, const SymPtr&)> visit = [&](int id, const SymState& parent_sigma,
                                                                        const SymPtr& parent_pc) {
    const auto& n = t.nodes[static_cast<std::size_t>(id)];
    SymPtr pc = parent_pc;
    if (n.edge) {
      auto cond = trans_expr(*n.edge, parent_sigma, r.iota, env);
      pc = parent_pc ? SymExpr::branch(parent_pc, cond) : cond;
    }
    r.pc[static_cast<std::size_t>(id)] = pc;
    SymState sigma = parent_sigma;
    if (n.assign) {
      const Stmt& s = *n.assign;
      if (s.kind == Stmt::Kind::Assign) {
        sigma[s.target] = trans_expr(*s.expr, parent_sigma, r.iota, env);
      } else if (s.kind == Stmt::Kind::Declassify) {
        sigma[s.target] = trans_expr(*Expr::var(s.source), parent_sigma, r.iota, env);
      }
      r.assigned.insert(s.target);
    }
    if (n.children.empty()) {
      at_leaf.emplace_back(pc, sigma);
      return;
    }
    for (int c : n.children) visit(c, sigma, pc);
  };
  if (!t.nodes.empty()) visit(0, start, nullptr);

  for (const auto& x : env.high_vars()) {
    SymPtr acc;
    for (const auto& [pc, sigma] : at_leaf) acc = SymExpr::join(acc, SymExpr::branch(pc, sigma.at(x)));
    r.sigma[x] = acc;
  }
  return r;
}

std::string SymResult::dump() const {
  std::string out;
  for (const auto& x : assigned) out += "  σ(" + x + ") = " + sym_str(*sigma.at(x)) + "\n";
  for (const auto& [s, e] : iota.entries) out += "  ι(" + s + ") = " + print_expr(*e) + "\n";
  return out;
}

std::shared_ptr<const SymResult> SymCache::get(const Block& fragment, const TypedProgram& env) {
  std::vector<int> key;
  for (const auto& s : fragment) key.push_back(s->id);
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  auto res = std::make_shared<const SymResult>(sym_exec(to_tree(fragment), env));
  cache_.emplace(key, res);
  return res;
}

}  // namespace medflow
