#pragma once

#include <string>
#include <vector>

#include "medflow/hierarchy.hpp"
#include "medflow/schema.hpp"
#include "medflow/value.hpp"

namespace medflow {

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operator names: not, and, or, eq, add, isempty, tostring, id, indom:<Attr>.
// add on intervals needs the generalization hierarchy; integers are read as [k,k].
class Operators {
 public:
  Operators() = default;
  Operators(const Schema* schema, const Hierarchy* hierarchy) : schema_(schema), hierarchy_(hierarchy) {}

  Value apply(const std::string& op, const std::vector<Value>& args) const;
  static int arity(const std::string& op);
  static bool is_boolean_op(const std::string& op);

 private:
  Value add(const Value& a, const Value& b) const;

  const Schema* schema_ = nullptr;
  const Hierarchy* hierarchy_ = nullptr;
};

}  // namespace medflow
