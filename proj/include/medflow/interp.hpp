#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "medflow/ast.hpp"
#include "medflow/operators.hpp"

namespace medflow {

using Memory = std::map<std::string, Value>;
using Code = std::vector<StmtPtr>;

struct EvalCtx {
  const Schema* schema = nullptr;
  const Operators* ops = nullptr;
};

struct Config {
  Code code;
  Memory mem;
  const State* db = nullptr;
};

// db may be null for expressions without requests.
Value eval_expr(const Expr& e, const Memory& mem, const State* db, const EvalCtx& ctx);
Query build_query(const Request& r, const Memory& mem, const EvalCtx& ctx);

Value default_value(VarKind k);
Memory initial_memory(const Program& p, const std::vector<Value>& args);

// Declassify and ftstop are delegated; without hooks they copy and drop.
struct StepHooks {
  std::function<void(Config&, const Stmt&)> on_declassify;
  std::function<void(Config&, const Stmt&)> on_ftstop;
};

Config step(Config cfg, const EvalCtx& ctx, const StepHooks& hooks = {});

struct ConcreteResult {
  Memory mem;
  Value reaction;
  int steps = 0;
};

ConcreteResult run_concrete(const Program& p, const std::vector<Value>& args, const State& db, const EvalCtx& ctx);
// Runs a statement list on a given memory; the reaction is left empty.
ConcreteResult run_concrete(const Code& code, Memory mem, const State& db, const EvalCtx& ctx);

}  // namespace medflow
