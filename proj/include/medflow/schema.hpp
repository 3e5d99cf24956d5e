#pragma once

#include <boost/dynamic_bitset.hpp>
#include <map>
#include <string>
#include <vector>

#include "medflow/value.hpp"

namespace medflow {

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Attribute {
  std::string name;
  std::vector<Value> domain;
};

struct Schema {
  std::string key_attribute = "ID";
  Value key_value = Value::atom("id");
  std::vector<Attribute> attributes;

  void validate() const;
  int index_of(const std::string& attr) const;  // -1 if absent
  const Attribute& attribute(const std::string& attr) const;
  bool in_domain(const std::string& attr, const Value& v) const;
};

// One row; values[i] belongs to schema.attributes[i].
struct State {
  std::vector<Value> values;
  friend bool operator==(const State&, const State&) = default;
  friend auto operator<=>(const State& a, const State& b) { return a.values <=> b.values; }
};

std::string state_str(const Schema& s, const State& st);
// Accepts "(id,a1,b2,c1)" or "(a1,b2,c1)"; bare atoms get the attribute prefix.
State parse_state(const Schema& s, std::string_view text);

// Sets of states are bitsets over the canonical enumeration of the space.
using StateSet = boost::dynamic_bitset<>;

class StateSpace {
 public:
  StateSpace() = default;
  explicit StateSpace(std::vector<State> states);

  std::size_t size() const { return states_.size(); }
  const State& operator[](std::size_t i) const { return states_[i]; }
  const std::vector<State>& states() const { return states_; }
  int index_of(const State& s) const;  // -1 if absent

  StateSet all() const { return StateSet(size()).set(); }
  StateSet none() const { return StateSet(size()); }

 private:
  std::vector<State> states_;
  std::map<State, int> index_;
};

StateSpace enumerate_states(const Schema& schema);

std::string set_str(const Schema& schema, const StateSpace& space, const StateSet& set);

struct Query {
  enum class Kind { Select, Project };
  Kind kind = Kind::Project;
  std::vector<std::pair<std::string, Value>> predicate;  // conjunction of attr = value
  std::vector<std::string> attributes;                   // projected, schema order

  void validate(const Schema& s) const;
  std::string str() const;
};

// select: the full row (key first) if the predicate holds, else EMPTY.
// project: the single value, or the tuple in schema order.
Value eval_query(const Query& q, const Schema& s, const State& db);

struct Secret {
  std::string label;
  StateSet states;
};

struct Policy {
  std::vector<Secret> secrets;
};

}  // namespace medflow
