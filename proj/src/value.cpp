#include "medflow/value.hpp"

#include <cctype>
#include <charconv>

namespace medflow {

Value Value::interval(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw ValueError("interval with lo > hi: [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
  if (lo == hi) return Value(lo);
  Value v;
  v.rep_ = Interval{lo, hi};
  return v;
}

bool Value::as_bool() const {
  if (!is_bool()) throw ValueError("expected boolean, got " + str());
  return std::get<bool>(rep_);
}

std::int64_t Value::as_int() const {
  if (!is_int()) throw ValueError("expected integer, got " + str());
  return std::get<std::int64_t>(rep_);
}

const Atom& Value::as_atom() const {
  if (!is_atom()) throw ValueError("expected atom, got " + str());
  return std::get<Atom>(rep_);
}

const Interval& Value::as_interval() const {
  if (!is_interval()) throw ValueError("expected interval, got " + str());
  return std::get<Interval>(rep_);
}

const Tuple& Value::as_tuple() const {
  if (!is_tuple()) throw ValueError("expected tuple, got " + str());
  return std::get<Tuple>(rep_);
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.rep_.index() != b.rep_.index()) return a.rep_.index() <=> b.rep_.index();
  switch (a.kind()) {
    case Value::Kind::Empty:
      return std::strong_ordering::equal;
    case Value::Kind::Bool:
      return a.as_bool() <=> b.as_bool();
    case Value::Kind::Int:
      return a.as_int() <=> b.as_int();
    case Value::Kind::Atom:
      return a.as_atom().name <=> b.as_atom().name;
    case Value::Kind::Interval: {
      const auto& x = a.as_interval();
      const auto& y = b.as_interval();
      if (auto c = x.lo <=> y.lo; c != 0) return c;
      return x.hi <=> y.hi;
    }
    case Value::Kind::Tuple: {
      const auto& x = a.as_tuple();
      const auto& y = b.as_tuple();
      for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
        if (auto c = x[i] <=> y[i]; c != 0) return c;
      return x.size() <=> y.size();
    }
  }
  return std::strong_ordering::equal;
}

std::string Value::str() const {
  switch (kind()) {
    case Kind::Empty:
      return "EMPTY";
    case Kind::Bool:
      return as_bool() ? "TRUE" : "FALSE";
    case Kind::Int:
      return std::to_string(as_int());
    case Kind::Atom:
      return as_atom().name;
    case Kind::Interval:
      return "[" + std::to_string(as_interval().lo) + "," + std::to_string(as_interval().hi) + "]";
    case Kind::Tuple:
      return "(" + join_values(as_tuple()) + ")";
  }
  return "?";
}

std::string join_values(const std::vector<Value>& vs, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += sep;
    out += vs[i].str();
  }
  return out;
}

namespace {

struct ValueReader {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ValueError("cannot parse value '" + std::string(s) + "': " + msg);
  }

  std::int64_t read_int() {
    skip_ws();
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
    if (ec != std::errc()) fail("expected integer at offset " + std::to_string(pos));
    pos = static_cast<std::size_t>(p - s.data());
    return v;
  }

  void expect(char c) {
    skip_ws();
    if (pos >= s.size() || s[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  Value read() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Tuple items;
      skip_ws();
      if (pos < s.size() && s[pos] == ')') {
        ++pos;
        return Value(items);
      }
      for (;;) {
        items.push_back(read());
        skip_ws();
        if (pos < s.size() && s[pos] == ',') {
          ++pos;
          continue;
        }
        expect(')');
        return Value(std::move(items));
      }
    }
    if (c == '[') {
      ++pos;
      auto lo = read_int();
      expect(',');
      auto hi = read_int();
      expect(']');
      return Value::interval(lo, hi);
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) return Value(read_int());
    std::size_t start = pos;
    while (pos < s.size() && s[pos] != ',' && s[pos] != ')' && s[pos] != '(' &&
           !std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
    std::string word(s.substr(start, pos - start));
    if (word.empty()) fail("empty token");
    if (word == "TRUE") return Value(true);
    if (word == "FALSE") return Value(false);
    if (word == "EMPTY") return Value(Empty{});
    return Value::atom(word);
  }
};

}  // namespace

Value parse_value(std::string_view text) {
  ValueReader r{text};
  Value v = r.read();
  r.skip_ws();
  if (r.pos != text.size()) r.fail("trailing characters");
  return v;
}

}  // namespace medflow
