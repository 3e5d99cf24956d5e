#pragma once

#include <string>
#include <string_view>

#include "medflow/ast.hpp"

namespace medflow {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line(line), col(col) {}
  int line;
  int col;
};

Program parse_program(std::string_view source);
ExprPtr parse_expr(std::string_view source);

std::string print_program(const Program& p);
std::string print_expr(const Expr& e);
std::string print_stmt_head(const Stmt& s);  // one-line summary used in traces

}  // namespace medflow
