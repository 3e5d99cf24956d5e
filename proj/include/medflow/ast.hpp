#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "medflow/schema.hpp"
#include "medflow/value.hpp"

namespace medflow {

enum class Level { Low, High };
inline Level join(Level a, Level b) { return (a == Level::High || b == Level::High) ? Level::High : Level::Low; }
inline const char* level_name(Level l) { return l == Level::High ? "high" : "low"; }

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Request {
  Query::Kind kind = Query::Kind::Project;
  std::vector<std::pair<std::string, ExprPtr>> predicate;  // select: attr = expr
  std::vector<std::string> attributes;                     // project
};

struct Expr {
  enum class Kind { Lit, Var, Op, Req };
  Kind kind = Kind::Lit;
  Value lit;
  std::string name;  // variable or operator name
  std::vector<ExprPtr> args;
  Request req;
  int line = 0;
  int col = 0;

  static ExprPtr literal(Value v);
  static ExprPtr var(std::string name);
  static ExprPtr op(std::string name, std::vector<ExprPtr> args);
};

bool same_expr(const Expr& a, const Expr& b);

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;
using Block = std::vector<StmtPtr>;

struct Stmt {
  enum class Kind { Assign, Declassify, If, FtStop };
  Kind kind = Kind::Assign;
  int id = -1;
  int line = 0;
  std::string target;  // assign target, declassify destination
  std::string source;  // declassify source
  ExprPtr expr;        // assign right-hand side, if guard
  Block then_branch;
  Block else_branch;
};

// The runtime-only command closing a tracked fragment; one shared instance.
StmtPtr ftstop_stmt();

bool same_stmt(const Stmt& a, const Stmt& b);
bool same_block(const Block& a, const Block& b);

enum class VarKind { Any, Bool, Int };

struct VarDecl {
  std::string name;
  std::optional<Level> level;
  VarKind kind = VarKind::Any;
  int line = 0;
};

struct Program {
  std::string name;
  std::vector<std::string> params;
  std::string returns;
  std::vector<VarDecl> decls;
  Block body;

  // params, then declarations, then the reaction variable if undeclared
  std::vector<std::string> variables() const;
  const VarDecl* decl(const std::string& v) const;
  bool is_param(const std::string& v) const;
  int statement_count() const;
};

bool same_program(const Program& a, const Program& b);

}  // namespace medflow
