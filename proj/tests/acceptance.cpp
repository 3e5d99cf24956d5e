// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include "medflow/correspondence.hpp"
#include "medflow/observer.hpp"
#include "oracles.hpp"

using namespace medflow;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const Snapshot* declassification(const RunTrace& tr) {
  for (const auto& s : tr.steps)
    if (s.mcase == 3) return &s;
  return nullptr;
}

Value tup(const char* a, const char* b) { return Value(Tuple{Value::atom(a), Value::atom(b)}); }

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

Outcome c1_pipeline() {
  Outcome o;
  auto t0 = Clock::now();
  auto sc = load_scenario(oracle::scenario("running.json"));
  auto sys = build_system(sc);
  auto tr = run_mediated(*sys, parse_state(sc.schema, "(a1,b2,c1)"));
  double dt = seconds_since(t0);
  const auto* d = declassification(tr);
  o.require(d != nullptr, "no declassification step");
  if (!d) return o;
  const auto* b = d->st.tracker.pi->at("x5").block(tup("A:a1", "B:b2"));
  o.require(b && set_str(sc.schema, sc.space, *b) == "{(id,A:a1,B:b2,C:c1), (id,A:a1,B:b2,C:c3)}",
            "block (a1,b2) differs");
  o.require(dt < 1.0, "runtime " + std::to_string(dt) + " s");
  o.detail = o.pass ? "block (a1,b2) = {(id,a1,b2,c1),(id,a1,b2,c3)}, " + std::to_string(dt) + " s" : o.detail;
  return o;
}

Outcome c2_configuration() {
  Outcome o;
  auto sc = load_scenario(oracle::scenario("running.json"));
  auto sys = build_system(sc);
  auto tr = run_mediated(*sys, parse_state(sc.schema, "(a1,b2,c1)"));
  const auto* d = declassification(tr);
  o.require(d && d->censor, "no censor step");
  if (!d || !d->censor) return o;
  ValueSet want;
  for (const char* a : {"A:a1", "A:a2", "A:a3"}) want.insert(tup(a, "C:c2"));
  const auto& v = d->censor->sc.violating;
  o.require(v.size() == 1 && v[0] == want, "violating sets " + d->censor->sc.str());
  for (const auto& I : v)
    for (const auto& w : I) o.require(w.as_tuple()[1] != Value::atom("B:b2"), "a (A,b2) index is violating");
  if (o.pass) o.detail = "violating = {{(A,c2)}}";
  return o;
}

Outcome c3_censoring() {
  Outcome o;
  auto sc = load_scenario(oracle::scenario("running.json"));
  auto sys = build_system(sc);
  auto tr = run_mediated(*sys, parse_state(sc.schema, "(a1,b2,c1)"));
  const auto* d = declassification(tr);
  if (!d) {
    o.require(false, "no declassification step");
    return o;
  }
  const auto& p = d->st.tracker.pi->at("x5");
  const auto& h = sys->hierarchy();
  const auto& cfg = d->censor->sc;
  o.require(generalize(h, cfg, tup("A:a1", "C:c2")) == tup("A:a1", "gC"), "(a1,c2) not generalized to (a1,gC)");
  o.require(generalize(h, cfg, tup("A:a1", "C:c4")) == tup("A:a1", "gC"), "(a1,c4) not generalized to (a1,gC)");
  o.require(generalize(h, cfg, tup("A:a3", "B:b3")) == tup("A:a3", "B:b3"), "(an,bm) changed");
  auto res = censor_step(sys->initial_view(), p, tup("A:a1", "C:c4"), sc.policy, h);
  auto want = oracle::states_where(sc.schema, sc.space, {{"A", "a1"}, {"C", "c2"}});
  for (auto i : oracle::states_where(sc.schema, sc.space, {{"A", "a1"}, {"C", "c4"}})) want.insert(i);
  o.require(oracle::members(res.view_after) == want, "view after (a1,c4) differs");
  if (o.pass) o.detail = "(a1,gC), view of 6 states";
  return o;
}

Outcome c4_intervals() {
  Outcome o;
  auto t0 = Clock::now();
  auto sc = load_scenario(oracle::scenario("intervals.json"));
  auto db = parse_state(sc.schema, "(2,1)");
  auto r1 = run_mediated(*build_system(sc, "P1"), db).reaction;
  auto r2 = run_mediated(*build_system(sc, "P2"), db).reaction;
  double dt = seconds_since(t0);
  o.require(r1 == Value::interval(0, 6), "P1 returned " + r1.str());
  o.require(r2 == Value(3), "P2 returned " + r2.str());
  Operators ops(&sc.schema, &sc.hierarchy);
  auto add = [&](Value a, Value b) { return ops.apply("add", {a, b}); };
  o.require(add(Value::interval(0, 1), Value::interval(0, 1)) == Value::interval(0, 3), "[0,1]+[0,1]");
  o.require(add(Value::interval(2, 3), Value(1)) == Value::interval(0, 6), "[2,3]+1");
  o.require(add(Value::interval(2, 3), Value::interval(4, 6)) == Value::interval(0, 6), "[2,3]+[4,6]");
  o.require(dt < 1.0, "runtime " + std::to_string(dt) + " s");
  if (o.pass) o.detail = "P1 " + r1.str() + ", P2 " + r2.str() + ", " + std::to_string(dt) + " s";
  return o;
}

struct Target {
  const char* file;
  const char* program;
};
const Target kTargets[] = {{"running.json", "P"}, {"running.json", "P_outside"}, {"intervals.json", "P1"},
                           {"intervals.json", "P2"}};

Outcome c5_properties() {
  Outcome o;
  auto t0 = Clock::now();
  std::size_t checks = 0;
  for (const auto& tg : kTargets) {
    auto sc = load_scenario(oracle::scenario(tg.file));
    auto sys = build_system(sc, tg.program);
    o.require(sc.space.size() <= 1000, "space too large");
    for (const auto& tr : simulate_all(*sys)) o.require(tr.steps.size() <= 101, "run longer than 100 steps");
    auto rep = check_properties(*sys);
    o.require(!rep.partial, "partial report");
    for (const auto& r : rep.results) {
      checks += r.checked;
      o.require(r.pass, std::string(tg.program) + " " + r.name + ": " + (r.cex ? r.cex->message : ""));
    }
  }
  auto sc = load_scenario(oracle::scenario("running.json"));
  auto sys = build_system(sc);
  CheckOptions open;
  open.censor = false;
  open.properties = {"p1"};
  auto neg = check_properties(*sys, open);
  const auto* p1 = neg.find("p1");
  o.require(p1 && !p1->pass && p1->cex, "negative control did not fail");
  if (p1 && p1->cex) {
    auto tr = run_mediated(*sys, sc.space[p1->cex->db], RunOptions{false, 0});
    o.require(tr.at(p1->cex->cause_t).mcase == 3 && p1->cex->t == p1->cex->cause_t + 1,
              "negative control does not point at the declassification");
  }
  double dt = seconds_since(t0);
  o.require(dt < 60.0, "runtime " + std::to_string(dt) + " s");
  if (o.pass)
    o.detail = std::to_string(checks) + " checks, control fails at t=" + std::to_string(p1->cex->t) + " (db " +
               p1->cex->db_str + "), " + std::to_string(dt) + " s";
  return o;
}

Outcome c6_oracle() {
  Outcome o;
  std::size_t points = 0;
  for (const auto& tg : kTargets) {
    auto sc = load_scenario(oracle::scenario(tg.file));
    auto sys = build_system(sc, tg.program);
    for (const auto& tr : simulate_all(*sys))
      for (const auto& rp : oracle::replay_groupings(*sys, tr)) {
        const auto& pi = *tr.steps[rp.t + 1].st.tracker.pi;
        for (const auto& [x, g] : rp.groups) {
          ++points;
          o.require(oracle::blocks_of(pi.at(x)) == g, std::string(tg.program) + " " + x + " at t=" +
                                                          std::to_string(rp.t) + " db " +
                                                          state_str(sc.schema, tr.db));
        }
      }
  }
  if (o.pass) o.detail = std::to_string(points) + " partitions equal to concrete grouping";
  return o;
}

Outcome c7_distortion() {
  Outcome o;
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> size(1, 15);
  std::size_t exhaustive = 0;
  for (int k = 0; k < 1000; ++k) {
    auto h = oracle::random_hierarchy(rng, size(rng));
    auto cfg = oracle::random_config(rng, h);
    DistortionFn dt = [&](const SecurityConfig& s, const Value& w) { return generalize(h, s, w); };
    auto issues = validate_distortion(h, {cfg}, dt);
    o.require(issues.empty(), issues.empty() ? "" : "instance " + std::to_string(k) + ": " + issues[0].message);
    if (h.size() <= 12) {
      ++exhaustive;
      auto got = subtree_scheme(h, cfg);
      std::sort(got.begin(), got.end());
      auto all = oracle::minimal_schemes_by_search(h, cfg);
      o.require(all.size() == 1 && all[0] == got, "instance " + std::to_string(k) + ": scheme differs");
    }
  }
  if (o.pass) o.detail = "1000 tables lawful, " + std::to_string(exhaustive) + " schemes match search";
  return o;
}

Outcome c8_correspondence() {
  Outcome o;
  auto sc = load_scenario(oracle::scenario("running.json"));
  auto sys = build_system(sc);
  const auto& tp = sys->typed();
  auto runs = simulate_all(*sys);
  std::size_t present = 0, aligned = 0, unaligned = 0;
  for (std::size_t i = 0; i < runs.size(); ++i)
    for (std::size_t j = 0; j < runs.size(); ++j)
      for (std::size_t t = 0; t < runs[i].steps.size(); ++t)
        for (std::size_t t2 = 0; t2 < runs[j].steps.size(); ++t2) {
          auto res = find_correspondence(tp, runs[i], t, runs[j], t2);
          bool same_obs = observation(runs[i], t) == observation(runs[j], t2);
          if (res.q) {
            ++present;
            o.require(same_obs, "correspondence without equal observations");
          }
          if (!same_obs || !low_active(tp, runs[i], t) || !low_active(tp, runs[j], t2)) continue;
          if (low_steps_before(tp, runs[i], t) != low_steps_before(tp, runs[j], t2)) {
            ++unaligned;
            continue;
          }
          ++aligned;
          o.require(res.q.has_value(), "no correspondence for an aligned pair: " + res.reason);
        }
  if (o.pass)
    o.detail = std::to_string(aligned) + " aligned pairs found, " + std::to_string(present) +
               " present imply equal obs; " + std::to_string(unaligned) + " equal-obs pairs with different low-step counts";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"running-example pipeline", c1_pipeline},     {"security configuration", c2_configuration},
      {"censoring by generalization", c3_censoring}, {"interval differential", c4_intervals},
      {"property suite", c5_properties},             {"oracle equivalence", c6_oracle},
      {"distortion table lawfulness", c7_distortion}, {"correspondence coherence", c8_correspondence}};
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("criterion %zu %s: %s (%s)\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first, o.detail.c_str());
  }
  return failed ? 1 : 0;
}
