#include "medflow/schema.hpp"

#include <algorithm>
#include <set>

namespace medflow {

void Schema::validate() const {
  std::set<std::string> names{key_attribute};
  std::set<Value> atoms;
  if (attributes.empty()) throw SchemaError("schema has no attributes");
  for (const auto& a : attributes) {
    if (!names.insert(a.name).second) throw SchemaError("duplicate attribute '" + a.name + "'");
    if (a.domain.empty()) throw SchemaError("empty domain for attribute '" + a.name + "'");
    std::set<Value> seen;
    for (const auto& v : a.domain) {
      if (!seen.insert(v).second) throw SchemaError("duplicate value " + v.str() + " in dom(" + a.name + ")");
      // integer domains may overlap; atom domains must be disjoint
      if (v.is_atom() && !atoms.insert(v).second)
        throw SchemaError("atom " + v.str() + " occurs in more than one domain");
    }
  }
}

int Schema::index_of(const std::string& attr) const {
  for (std::size_t i = 0; i < attributes.size(); ++i)
    if (attributes[i].name == attr) return static_cast<int>(i);
  return -1;
}

const Attribute& Schema::attribute(const std::string& attr) const {
  int i = index_of(attr);
  if (i < 0) throw SchemaError("unknown attribute '" + attr + "'");
  return attributes[static_cast<std::size_t>(i)];
}

bool Schema::in_domain(const std::string& attr, const Value& v) const {
  const auto& d = attribute(attr).domain;
  return std::find(d.begin(), d.end(), v) != d.end();
}

std::string state_str(const Schema& s, const State& st) {
  std::string out = "(" + s.key_value.str();
  for (const auto& v : st.values) out += "," + v.str();
  return out + ")";
}

State parse_state(const Schema& s, std::string_view text) {
  Value v = parse_value(text);
  if (!v.is_tuple()) throw SchemaError("state must be a tuple: " + std::string(text));
  Tuple items = v.as_tuple();
  if (items.size() == s.attributes.size() + 1) {
    if (items.front() != s.key_value)
      throw SchemaError("state key " + items.front().str() + " differs from " + s.key_value.str());
    items.erase(items.begin());
  }
  if (items.size() != s.attributes.size())
    throw SchemaError("state " + std::string(text) + " has wrong arity");
  State st;
  for (std::size_t i = 0; i < items.size(); ++i) {
    Value x = items[i];
    const auto& a = s.attributes[i];
    if (x.is_atom() && x.as_atom().name.find(':') == std::string::npos)
      x = Value::atom(a.name + ":" + x.as_atom().name);
    if (!s.in_domain(a.name, x)) throw SchemaError(x.str() + " not in dom(" + a.name + ")");
    st.values.push_back(std::move(x));
  }
  return st;
}

StateSpace::StateSpace(std::vector<State> states) : states_(std::move(states)) {
  for (std::size_t i = 0; i < states_.size(); ++i)
    if (!index_.emplace(states_[i], static_cast<int>(i)).second)
      throw SchemaError("duplicate state in state space");
}

int StateSpace::index_of(const State& s) const {
  auto it = index_.find(s);
  return it == index_.end() ? -1 : it->second;
}

StateSpace enumerate_states(const Schema& schema) {
  schema.validate();
  std::vector<State> out{State{}};
  for (const auto& a : schema.attributes) {
    std::vector<State> next;
    next.reserve(out.size() * a.domain.size());
    for (const auto& prefix : out)
      for (const auto& v : a.domain) {
        State s = prefix;
        s.values.push_back(v);
        next.push_back(std::move(s));
      }
    out = std::move(next);
  }
  return StateSpace(std::move(out));
}

std::string set_str(const Schema& schema, const StateSpace& space, const StateSet& set) {
  std::vector<std::string> items;
  for (auto i = set.find_first(); i != StateSet::npos; i = set.find_next(i))
    items.push_back(state_str(schema, space[i]));
  std::sort(items.begin(), items.end());
  std::string out = "{";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out + "}";
}

void Query::validate(const Schema& s) const {
  if (kind == Kind::Select) {
    if (predicate.empty()) throw SchemaError("select without predicate");
    for (const auto& [a, v] : predicate) s.attribute(a);
  } else {
    if (attributes.empty()) throw SchemaError("project without attributes");
    for (const auto& a : attributes) s.attribute(a);
  }
}

std::string Query::str() const {
  std::string out;
  if (kind == Kind::Select) {
    out = "select(";
    for (std::size_t i = 0; i < predicate.size(); ++i)
      out += (i ? " and " : "") + predicate[i].first + "=" + predicate[i].second.str();
  } else {
    out = "project({";
    for (std::size_t i = 0; i < attributes.size(); ++i) out += (i ? "," : "") + attributes[i];
    out += "}";
  }
  return out + ")";
}

Value eval_query(const Query& q, const Schema& s, const State& db) {
  if (q.kind == Query::Kind::Select) {
    for (const auto& [a, v] : q.predicate) {
      int i = s.index_of(a);
      if (i < 0) throw SchemaError("unknown attribute '" + a + "'");
      if (db.values[static_cast<std::size_t>(i)] != v) return Value(Empty{});
    }
    Tuple row{s.key_value};
    row.insert(row.end(), db.values.begin(), db.values.end());
    return Value(std::move(row));
  }
  std::vector<int> idx;
  for (const auto& a : q.attributes) {
    int i = s.index_of(a);
    if (i < 0) throw SchemaError("unknown attribute '" + a + "'");
    idx.push_back(i);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  if (idx.size() == 1) return db.values[static_cast<std::size_t>(idx[0])];
  Tuple t;
  for (int i : idx) t.push_back(db.values[static_cast<std::size_t>(i)]);
  return Value(std::move(t));
}

}  // namespace medflow
