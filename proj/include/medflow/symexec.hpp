#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "medflow/exectree.hpp"
#include "medflow/typing.hpp"

namespace medflow {

struct SymExpr;
using SymPtr = std::shared_ptr<const SymExpr>;

struct SymExpr {
  enum class Kind { Sym, HVar, Op, Branch, Join };
  Kind kind = Kind::Sym;
  std::string name;  // symbol, variable or operator
  std::vector<SymPtr> args;

  static SymPtr sym(std::string n);
  static SymPtr hvar(std::string n);
  static SymPtr op(std::string n, std::vector<SymPtr> args);
  static SymPtr branch(SymPtr cond, SymPtr val);  // null cond: val itself
  static SymPtr join(SymPtr a, SymPtr b);
};

std::string sym_str(const SymExpr& e);

// Symbol table: fresh symbols s0, s1, ... in first-use order.
struct SymInit {
  std::vector<std::pair<std::string, ExprPtr>> entries;
  std::string fresh(ExprPtr source);
  const Expr& at(const std::string& sym) const;
};

using SymState = std::map<std::string, SymPtr>;

SymPtr trans_expr(const Expr& e, const SymState& sigma, SymInit& iota, const TypedProgram& env);

struct SymResult {
  ExecutionTree tree;
  SymState sigma;                  // final expression per high variable
  std::set<std::string> assigned;  // high variables written in the fragment
  SymInit iota;
  std::vector<SymPtr> pc;          // per tree node; null is the empty condition
  std::string dump() const;
};

SymResult sym_exec(const ExecutionTree& t, const TypedProgram& env);

// Fragment results memoized by statement ids; safe to share between threads.
class SymCache {
 public:
  std::shared_ptr<const SymResult> get(const Block& fragment, const TypedProgram& env);

 private:
  std::mutex mu_;
  std::map<std::vector<int>, std::shared_ptr<const SymResult>> cache_;
};

}  // namespace medflow
