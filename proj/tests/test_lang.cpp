#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "medflow/interp.hpp"
#include "medflow/parser.hpp"
#include "oracles.hpp"

using namespace medflow;

TEST_CASE("bundled programs survive a print/parse round trip") {
  auto sc = load_scenario(oracle::scenario("running.json"));
  auto iv = load_scenario(oracle::scenario("intervals.json"));
  for (const Program* p : {&sc.program().program, &iv.program("P1").program, &iv.program("P2").program}) {
    std::string once = print_program(*p);
    Program again = parse_program(once);
    CHECK(same_program(*p, again));
    CHECK(print_program(again) == once);
  }
}

TEST_CASE("statement ids follow source order") {
  auto p = load_scenario(oracle::scenario("running.json")).program().program;
  CHECK(p.statement_count() == 13);
  CHECK(p.body[0]->id == 0);
  CHECK(p.body[0]->then_branch[0]->id == 1);
  CHECK(p.body[0]->else_branch[0]->id == 2);
  CHECK(p.body[4]->id == 8);
  CHECK(p.body[5]->kind == Stmt::Kind::Declassify);
}

TEST_CASE("parser rejects loops and reports positions") {
  CHECK_THROWS_WITH_AS(parse_program("program P() returns r; begin while TRUE do r := 1 end end."),
                       doctest::Contains("unsupported construct"), ParseError);
  try {
    parse_program("program P() returns r;\nbegin\n  r := := 1\nend.");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
  CHECK_THROWS_AS(parse_program("program P() returns r; begin r := 1 end. extra"), ParseError);
}

TEST_CASE("expressions print with minimal parentheses") {
  CHECK(print_expr(*parse_expr("not (a or b) and c")) == "NOT (a OR b) AND c");
  CHECK(print_expr(*parse_expr("a + [0,1] + 2")) == "a + [0,1] + 2");
  CHECK(print_expr(*parse_expr("basicreq(select, C = x and A = A:a1)")) == "BASICREQ(SELECT, C = x AND A = A:a1)");
  CHECK(print_expr(*parse_expr("x in dom(C)")) == "x IN DOM(C)");
}

TEST_CASE("concrete run of the running program") {
  auto sc = load_scenario(oracle::scenario("running.json"));
  Operators ops(&sc.schema, &sc.hierarchy);
  EvalCtx ctx{&sc.schema, &ops};
  const auto& pe = sc.program();
  auto r = run_concrete(pe.program, pe.args, parse_state(sc.schema, "(a1,b2,c1)"), ctx);
  CHECK(r.reaction.str() == "(A:a1,B:b2)");
  CHECK(r.mem.at("x1") == Value(true));
  CHECK(r.mem.at("x2") == Value(false));
  auto r2 = run_concrete(pe.program, pe.args, parse_state(sc.schema, "(a2,b1,c2)"), ctx);
  CHECK(r2.reaction.str() == "(A:a2,C:c2)");
  CHECK(r.steps == 10);
}

TEST_CASE("initial memory and defaults") {
  auto p = parse_program("program P(a) returns r; var b: bool; var i: int; var u; begin r := a end.");
  auto m = initial_memory(p, {Value(3)});
  CHECK(m.at("a") == Value(3));
  CHECK(m.at("b") == Value(false));
  CHECK(m.at("i") == Value(0));
  CHECK(m.at("u").is_empty());
  CHECK(m.at("r").is_empty());
  CHECK_THROWS_AS(initial_memory(p, {}), EvalError);
}

TEST_CASE("one-step semantics") {
  auto sc = load_scenario(oracle::scenario("running.json"));
  Operators ops(&sc.schema, &sc.hierarchy);
  EvalCtx ctx{&sc.schema, &ops};
  auto p = parse_program("program P(a) returns r; var x; begin if a then x := 1 else x := 2 end; declassify(x, r) end.");
  State db = sc.space[0];
  Config c{p.body, initial_memory(p, {Value(false)}), &db};
  c = step(c, ctx);
  REQUIRE(c.code.size() == 2);
  CHECK(c.code[0]->id == 2);
  c = step(c, ctx);
  CHECK(c.mem.at("x") == Value(2));
  int calls = 0;
  StepHooks hooks;
  hooks.on_declassify = [&](Config& cfg, const Stmt& s) {
    ++calls;
    cfg.mem[s.target] = Value(99);
  };
  c = step(c, ctx, hooks);
  CHECK(calls == 1);
  CHECK(c.mem.at("r") == Value(99));
  CHECK(c.code.empty());
  Config bad{p.body, initial_memory(p, {Value(5)}), &db};
  CHECK_THROWS(step(bad, ctx));
}
