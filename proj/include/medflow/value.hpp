#pragma once

#include <cstdint>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace medflow {

struct Empty {
  friend bool operator==(const Empty&, const Empty&) = default;
};

// Domain constants and hierarchy nodes. Domain atoms carry their attribute
// as a prefix ("C:c1") so atoms of different attributes never collide.
struct Atom {
  std::string name;
  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

class Value;
using Tuple = std::vector<Value>;

class Value {
 public:
  using Rep = std::variant<Empty, bool, std::int64_t, Atom, Interval, Tuple>;
  enum class Kind { Empty = 0, Bool, Int, Atom, Interval, Tuple };

  Value() = default;
  Value(Empty) {}
  Value(bool b) : rep_(b) {}
  Value(int i) : rep_(static_cast<std::int64_t>(i)) {}
  Value(std::int64_t i) : rep_(i) {}
  Value(Atom a) : rep_(std::move(a)) {}
  Value(Tuple t) : rep_(std::move(t)) {}
  // [k,k] collapses to the integer k.
  static Value interval(std::int64_t lo, std::int64_t hi);
  static Value atom(std::string name) { return Value(Atom{std::move(name)}); }

  Kind kind() const { return static_cast<Kind>(rep_.index()); }
  bool is_empty() const { return kind() == Kind::Empty; }
  bool is_bool() const { return kind() == Kind::Bool; }
  bool is_int() const { return kind() == Kind::Int; }
  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_interval() const { return kind() == Kind::Interval; }
  bool is_tuple() const { return kind() == Kind::Tuple; }

  bool as_bool() const;
  std::int64_t as_int() const;
  const Atom& as_atom() const;
  const Interval& as_interval() const;
  const Tuple& as_tuple() const;

  const Rep& rep() const { return rep_; }

  std::string str() const;

  friend bool operator==(const Value& a, const Value& b) { return a.rep_ == b.rep_; }
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  Rep rep_;
};

class ValueError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inverse of Value::str(). Bare identifiers become atoms.
Value parse_value(std::string_view text);

std::string join_values(const std::vector<Value>& vs, std::string_view sep = ",");

}  // namespace medflow
