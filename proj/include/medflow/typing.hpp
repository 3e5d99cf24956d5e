#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "medflow/ast.hpp"
#include "medflow/schema.hpp"

namespace medflow {

// (a) high value into a low variable, (b) low effect under a high guard,
// (c) high request parameter.
struct TypeViolation {
  char rule = 'a';
  int stmt_id = -1;
  int line = 0;
  std::string message;
  std::string str() const;
};

class TypeError : public std::runtime_error {
 public:
  explicit TypeError(TypeViolation v) : std::runtime_error(v.str()), violation(std::move(v)) {}
  TypeViolation violation;
};

class ProgramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Fragment {
  int id = 0;
  Block stmts;
};

struct TypedProgram {
  std::map<std::string, Level> var_level;
  std::set<std::string> anchored;  // levels fixed by declaration or role
  std::map<int, Level> stmt_level;
  std::vector<TypeViolation> violations;
  std::vector<Fragment> fragments;  // maximal high spans per statement list

  bool accepted() const { return violations.empty(); }
  bool is_high(const std::string& var) const;
  Level level_of(const Stmt& s) const;  // ftstop counts as high
  Level expr_level(const Expr& e) const;
  std::vector<std::string> high_vars() const;
  std::vector<std::string> low_vars() const;
  std::string report() const;
};

// Flow-insensitive level inference; never throws on violations, they are collected.
TypedProgram infer(const Program& p);
// Throws TypeError with the first violation.
TypedProgram typecheck(const Program& p);

// Declared variables, schema attributes, and the reaction variable being set on every path.
void validate_program(const Program& p, const Schema& s);

// Maximal prefix of high commands.
std::size_t high_prefix_length(const std::vector<StmtPtr>& code, const TypedProgram& tp);

}  // namespace medflow
