#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "medflow/hierarchy.hpp"
#include "medflow/operators.hpp"
#include "medflow/schema.hpp"
#include "oracles.hpp"

using namespace medflow;

namespace {

Schema running_schema() { return load_scenario(oracle::scenario("running.json")).schema; }

Hierarchy fig6() { return load_scenario(oracle::scenario("intervals.json")).hierarchy; }

}  // namespace

TEST_CASE("values print and parse back") {
  for (const char* s : {"EMPTY", "TRUE", "FALSE", "-3", "17", "A:a1", "[2,3]", "(id,A:a1,B:b2)", "(x,(y,[0,6]))"})
    CHECK(parse_value(s).str() == s);
  CHECK(Value::interval(4, 4) == Value(4));
  CHECK(Value::interval(2, 3).is_interval());
  CHECK_THROWS_AS(Value(3).as_bool(), ValueError);
}

TEST_CASE("values of different kinds order by kind first") {
  CHECK(Value() < Value(false));
  CHECK(Value(true) < Value(0));
  CHECK(Value(5) < Value::atom("a"));
  CHECK(Value::atom("A:a1") < Value::atom("A:a2"));
}

TEST_CASE("schema validation") {
  Schema s = running_schema();
  CHECK_NOTHROW(s.validate());
  Schema dup = s;
  dup.attributes[1].domain.push_back(dup.attributes[1].domain[0]);
  CHECK_THROWS_AS(dup.validate(), SchemaError);
  Schema overlap = s;
  overlap.attributes[1].domain.push_back(overlap.attributes[0].domain[0]);
  CHECK_THROWS_AS(overlap.validate(), SchemaError);
  Schema empty_dom = s;
  empty_dom.attributes[0].domain.clear();
  CHECK_THROWS_AS(empty_dom.validate(), SchemaError);
}

TEST_CASE("state space is the cross product in attribute order") {
  Schema s = running_schema();
  auto space = enumerate_states(s);
  CHECK(space.size() == 36);
  CHECK(state_str(s, space[0]) == "(id,A:a1,B:b1,C:c1)");
  CHECK(state_str(s, space[35]) == "(id,A:a3,B:b3,C:c4)");
  State st = parse_state(s, "(id,a1,b2,c1)");
  CHECK(st == parse_state(s, "(a1,b2,c1)"));
  CHECK(space.index_of(st) == 4);
  CHECK_THROWS_AS(parse_state(s, "(id,a1,b2)"), SchemaError);
  CHECK_THROWS_AS(parse_state(s, "(id,a1,b9,c1)"), SchemaError);
}

TEST_CASE("queries evaluate on one row") {
  Schema s = running_schema();
  State db = parse_state(s, "(a1,b2,c1)");
  Query sel;
  sel.kind = Query::Kind::Select;
  sel.predicate = {{"C", Value::atom("C:c1")}};
  CHECK(eval_query(sel, s, db).str() == "(id,A:a1,B:b2,C:c1)");
  sel.predicate = {{"C", Value::atom("C:c3")}};
  CHECK(eval_query(sel, s, db).is_empty());
  Query proj;
  proj.attributes = {"A", "C"};
  CHECK(eval_query(proj, s, db).str() == "(A:a1,C:c1)");
  proj.attributes = {"B"};
  CHECK(eval_query(proj, s, db).str() == "B:b2");
  Query bad;
  bad.attributes = {"Z"};
  CHECK_THROWS(bad.validate(s));
}

TEST_CASE("tuple hierarchy generalizes the last specialized component") {
  auto sc = load_scenario(oracle::scenario("running.json"));
  const auto& h = sc.hierarchy;
  auto parent_of = [&](const char* v) { return h.value(h.parent(h.id(parse_value(v)))).str(); };
  CHECK(parent_of("(A:a1,C:c2)") == "(A:a1,gC)");
  CHECK(parent_of("(A:a1,gC)") == "(A:a1,gBC)");
  CHECK(parent_of("(A:a1,gBC)") == "(gA,gBC)");
  CHECK(parent_of("(A:a2,B:b3)") == "(A:a2,gB)");
  CHECK(h.value(h.root()).str() == "(gA,gBC)");
  // every tuple reachable exactly once: 4 x 10 tuples
  CHECK(h.size() == 40);
}

TEST_CASE("hierarchy basics") {
  Hierarchy h;
  int r = h.add(Value::atom("top"), -1);
  int a = h.add(Value::atom("a"), r);
  int b = h.add(Value::atom("b"), a);
  CHECK_THROWS_AS(h.add(Value::atom("x"), -1), HierarchyError);
  CHECK_THROWS_AS(h.add(Value::atom("a"), r), HierarchyError);
  CHECK(h.depth(b) == 2);
  CHECK(h.is_ancestor_or_self(r, b));
  CHECK_FALSE(h.is_ancestor_or_self(b, a));
  CHECK(h.subtree(a) == std::vector<int>{a, b});
  int c = h.attach_under_root(Value(true));
  CHECK(h.parent(c) == r);
  CHECK(h.attach_under_root(Value(true)) == c);
}

TEST_CASE("interval addition over the integer hierarchy") {
  Hierarchy h = fig6();
  Schema s;
  Operators ops(&s, &h);
  auto add = [&](const char* a, const char* b) { return ops.apply("add", {parse_value(a), parse_value(b)}).str(); };
  CHECK(add("[0,1]", "[0,1]") == "[0,3]");
  CHECK(add("[2,3]", "1") == "[0,6]");
  CHECK(add("[2,3]", "[4,6]") == "[0,6]");
  CHECK(add("2", "1") == "3");
  CHECK(add("3", "3") == "6");
  CHECK(add("[0,1]", "[2,3]") == "[0,6]");  // [2,4] is no node; [0,6] is the only cover
  CHECK(add("0", "[0,1]") == "[0,1]");
  CHECK(h.smallest_cover(3, 4) == h.find(parse_value("[0,6]")));
  CHECK(h.smallest_cover(2, 2) == h.find(parse_value("2")));
}

TEST_CASE("boolean and membership operators") {
  Schema s = running_schema();
  Operators ops(&s, nullptr);
  CHECK(ops.apply("not", {Value(true)}) == Value(false));
  CHECK(ops.apply("and", {Value(true), Value(false)}) == Value(false));
  CHECK(ops.apply("or", {Value(true), Value(false)}) == Value(true));
  CHECK(ops.apply("isempty", {Value()}) == Value(true));
  CHECK(ops.apply("indom:C", {Value::atom("C:c3")}) == Value(true));
  CHECK(ops.apply("indom:C", {Value::atom("A:a1")}) == Value(false));
  CHECK(ops.apply("eq", {Value(1), Value(1)}) == Value(true));
  CHECK_THROWS_AS(ops.apply("not", {Value(1)}), EvalError);
  CHECK_THROWS_AS(ops.apply("add", {Value::interval(0, 1), Value(1)}), EvalError);
}
