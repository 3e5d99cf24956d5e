#include "medflow/operators.hpp"

namespace medflow {

int Operators::arity(const std::string& op) {
  if (op == "and" || op == "or" || op == "eq" || op == "add") return 2;
  if (op == "not" || op == "isempty" || op == "tostring" || op == "id" || op.rfind("indom:", 0) == 0) return 1;
  throw EvalError("unknown operator '" + op + "'");
}

bool Operators::is_boolean_op(const std::string& op) {
  return op == "and" || op == "or" || op == "not" || op == "eq" || op == "isempty" || op.rfind("indom:", 0) == 0;
}

Value Operators::apply(const std::string& op, const std::vector<Value>& args) const {
  if (static_cast<int>(args.size()) != arity(op))
    throw EvalError("operator '" + op + "' expects " + std::to_string(arity(op)) + " arguments, got " +
                    std::to_string(args.size()));
  try {
    if (op == "not") return Value(!args[0].as_bool());
    if (op == "and") return Value(args[0].as_bool() && args[1].as_bool());
    if (op == "or") return Value(args[0].as_bool() || args[1].as_bool());
    if (op == "eq") return Value(args[0] == args[1]);
    if (op == "isempty") return Value(args[0].is_empty());
    if (op == "tostring" || op == "id") return args[0];
    if (op == "add") return add(args[0], args[1]);
    if (op.rfind("indom:", 0) == 0) {
      if (!schema_) throw EvalError("indom needs a schema");
      return Value(schema_->in_domain(op.substr(6), args[0]));
    }
  } catch (const ValueError& e) {
    throw EvalError("operator '" + op + "' on (" + join_values(args) + "): " + e.what());
  }
  throw EvalError("unknown operator '" + op + "'");
}

Value Operators::add(const Value& a, const Value& b) const {
  if (a.is_int() && b.is_int()) return Value(a.as_int() + b.as_int());
  auto bounds = [&](const Value& v) -> std::pair<std::int64_t, std::int64_t> {
    if (v.is_int()) return {v.as_int(), v.as_int()};
    if (v.is_interval()) return {v.as_interval().lo, v.as_interval().hi};
    throw EvalError("add undefined for " + v.str());
  };
  auto [x1, x2] = bounds(a);
  auto [y1, y2] = bounds(b);
  if (!hierarchy_ || hierarchy_->empty()) throw EvalError("interval addition needs a generalization hierarchy");
  Value exact = Value::interval(x1 + y1, x2 + y2);
  if (hierarchy_->contains(exact)) return exact;
  if (auto n = hierarchy_->smallest_cover(x1 + y1, x2 + y2)) return hierarchy_->value(*n);
  return hierarchy_->value(hierarchy_->root());
}

}  // namespace medflow
