#include "medflow/observer.hpp"

#include <algorithm>
#include <map>
#include <json.hpp>

#include "medflow/parser.hpp"

namespace medflow {

namespace {

std::size_t run_count(const System& sys, std::size_t limit) {
  return limit == 0 ? sys.space().size() : std::min(limit, sys.space().size());
}

}  // namespace

std::vector<RunTrace> simulate_all(const System& sys, const RunOptions& opt, std::size_t limit) {
  const std::size_t n = run_count(sys, limit);
  std::vector<RunTrace> runs(n);
  std::vector<std::string> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      runs[i] = run_mediated(sys, sys.space()[i], opt);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!errors[i].empty()) throw MediatorError("db " + state_str(sys.schema(), sys.space()[i]) + ": " + errors[i]);
  return runs;
}

std::vector<RunTrace> simulate_all_serial(const System& sys, const RunOptions& opt, std::size_t limit) {
  const std::size_t n = run_count(sys, limit);
  std::vector<RunTrace> runs;
  runs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) runs.push_back(run_mediated(sys, sys.space()[i], opt));
  return runs;
}

namespace {

std::uint32_t lcp(const std::vector<Event>& a, const std::vector<Event>& b) {
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  return static_cast<std::uint32_t>(k);
}

}  // namespace

std::vector<std::uint32_t> lcp_matrix(const std::vector<RunTrace>& runs) {
  const std::size_t n = runs.size();
  std::vector<std::uint32_t> m(n * n);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      auto v = lcp(runs[i].events, runs[j].events);
      m[i * n + j] = v;
      m[j * n + i] = v;
    }
  return m;
}

std::vector<std::uint32_t> lcp_matrix_serial(const std::vector<RunTrace>& runs) {
  const std::size_t n = runs.size();
  std::vector<std::uint32_t> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = lcp(runs[i].events, runs[j].events);
  return m;
}

std::vector<Event> observation(const RunTrace& r, std::size_t t) {
  auto k = r.events_at(t);
  return std::vector<Event>(r.events.begin(), r.events.begin() + static_cast<std::ptrdiff_t>(k));
}

StateSet knowledge(const std::vector<std::uint32_t>& m, std::size_t runs, std::size_t universe, std::size_t i,
                   std::size_t k) {
  StateSet out(universe);
  for (std::size_t j = 0; j < runs; ++j)
    if (m[i * runs + j] >= k) out.set(j);
  return out;
}

StateSet knowledge_naive(const std::vector<RunTrace>& runs, std::size_t universe, const std::vector<Event>& target) {
  StateSet out(universe);
  for (std::size_t j = 0; j < runs.size(); ++j)
    for (std::size_t t = 0; t <= runs[j].steps.size(); ++t)
      if (observation(runs[j], t) == target) {
        out.set(j);
        break;
      }
  return out;
}

bool PropertyReport::all_pass() const {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.pass; });
}

const PropertyResult* PropertyReport::find(const std::string& name) const {
  for (const auto& r : results)
    if (r.name == name) return &r;
  return nullptr;
}

std::string PropertyReport::text() const {
  std::string out;
  for (const auto& r : results) {
    out += r.name + " " + (r.pass ? "pass" : "FAIL") + " checked=" + std::to_string(r.checked) + "\n";
    if (r.cex) {
      const auto& c = *r.cex;
      out += "  db=" + c.db_str + " t=" + std::to_string(c.t) + " cause_t=" + std::to_string(c.cause_t) +
             " cause=" + c.cause_cmd + "\n  " + c.message + "\n";
    }
  }
  out += "runs " + std::to_string(runs) + (partial ? " (partial: budget exceeded, knowledge over simulated states only, inconclusive)" : "") + "\n";
  return out;
}

std::string PropertyReport::json() const {
  nlohmann::json j;
  j["runs"] = runs;
  j["partial"] = partial;
  j["properties"] = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json e{{"name", r.name}, {"pass", r.pass}, {"checked", r.checked}};
    if (r.cex)
      e["counterexample"] = {{"db", r.cex->db_str}, {"t", r.cex->t}, {"cause_t", r.cex->cause_t},
                             {"cause", r.cex->cause_cmd}, {"message", r.cex->message}};
    j["properties"].push_back(e);
  }
  return j.dump(2) + "\n";
}

namespace {

std::vector<int> code_ids(const Code& c) {
  std::vector<int> out;
  out.reserve(c.size());
  for (const auto& s : c) out.push_back(s->id);
  return out;
}

std::string events_key(const std::vector<Event>& ev, std::size_t k) {
  std::string out;
  for (std::size_t i = 0; i < k; ++i) out += ev[i].str() + ";";
  return out;
}

struct Finder {
  std::optional<Counterexample> best;
  std::size_t checked = 0;
  void offer(Counterexample c) {
    if (!best || std::tie(c.t, c.db) < std::tie(best->t, best->db)) best = std::move(c);
  }
};

}  // namespace

PropertyReport check_properties(const System& sys, const CheckOptions& opt) {
  PropertyReport rep;
  const auto& space = sys.space();
  const std::size_t universe = space.size();
  std::size_t limit = universe;
  if (opt.budget > 0 && universe > opt.budget) {
    limit = opt.budget;
    rep.partial = true;
  }
  RunOptions ro;
  ro.censor = opt.censor;
  auto runs = simulate_all(sys, ro, limit);
  const std::size_t n = runs.size();
  rep.runs = n;
  auto m = lcp_matrix(runs);
  auto want = [&](const std::string& p) { return opt.properties.empty() || opt.properties.count(p) > 0; };
  const auto& names = all_properties();
  const auto& secrets = sys.policy().secrets;

  // first t' of each run per (observed event count, remaining code)
  std::vector<std::map<std::pair<std::size_t, std::vector<int>>, std::size_t>> moments(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t t = 0; t < runs[j].steps.size(); ++t)
      moments[j].emplace(std::make_pair(runs[j].steps[t].events_before, code_ids(runs[j].steps[t].st.code)), t);

  std::vector<std::map<std::string, Finder>> per_run(n);

#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) {
    auto& F = per_run[i];
    const auto& r = runs[i];
    const std::size_t T = r.steps.size() - 1;
    std::vector<StateSet> K;
    for (std::size_t t = 0; t <= T + 1; ++t) K.push_back(knowledge(m, n, universe, i, r.events_at(t)));
    auto cex = [&](std::size_t t, std::string msg) {
      Counterexample c;
      c.db = i;
      c.db_str = state_str(sys.schema(), r.db);
      c.t = t;
      c.cause_t = t > 0 ? t - 1 : 0;
      const auto& a = r.at(c.cause_t).active;
      c.cause_cmd = a ? print_stmt_head(*a) : "ε";
      c.message = std::move(msg);
      return c;
    };
    for (std::size_t t = 0; t <= T + 1; ++t) {
      const auto& snap = r.at(t);
      if (want("p1")) {
        ++F["p1"].checked;
        for (const auto& psi : secrets)
          if (K[t].is_subset_of(psi.states))
            F["p1"].offer(cex(t, "knowledge " + set_str(sys.schema(), space, K[t]) + " implies " + psi.label));
      }
      if (want("t2")) {
        ++F["t2"].checked;
        if (snap.st.view != K[t])
          F["t2"].offer(cex(t, "view " + set_str(sys.schema(), space, snap.st.view) + " differs from knowledge " +
                                   set_str(sys.schema(), space, K[t])));
        else if (!snap.st.view.test(i))
          F["t2"].offer(cex(t, "view lost the actual state"));
        for (const auto& psi : secrets)
          if (snap.st.view.is_subset_of(psi.states)) F["t2"].offer(cex(t, "view implies " + psi.label));
      }
      if (t > T) continue;
      const bool declass = snap.active && snap.active->kind == Stmt::Kind::Declassify;
      if (want("p2") && !declass) {
        ++F["p2"].checked;
        if (K[t + 1] != K[t])
          F["p2"].offer(cex(t + 1, "knowledge changed at a step that is not a declassification"));
      }
      if (snap.mcase != 3) continue;
      const auto& src = snap.active->source;
      auto pit = snap.st.tracker.pi->find(src);
      const Partition* p = pit == snap.st.tracker.pi->end() ? nullptr : &pit->second;
      if (want("p3")) {
        ++F["p3"].checked;
        if (!p) {
          F["p3"].offer(cex(t, "no temporary view for " + src));
        } else if (!p->disjoint() || !K[t].is_subset_of(p->coverage())) {
          F["p3"].offer(cex(t, "temporary view of " + src + " does not partition a superset of knowledge"));
        } else {
          const StateSet* b = p->block(snap.st.mem.at(src));
          if (!b || !b->test(i)) F["p3"].offer(cex(t, "actual state outside the block of the value of " + src));
        }
      }
      if (want("t1") && p && snap.censor) {
        ++F["t1"].checked;
        const auto& c = *snap.censor;
        StateSet inferred = inferred_set(*p, sys.hierarchy(), c.scheme, c.generalized);
        if (K[t + 1] != (K[t] & inferred))
          F["t1"].offer(cex(t + 1, "knowledge after declassification " + set_str(sys.schema(), space, K[t + 1]) +
                                       " differs from " + set_str(sys.schema(), space, K[t] & inferred)));
      }
      if (want("t3") && p) {
        ++F["t3"].checked;
        std::map<Value, StateSet> actual;
        auto key = std::make_pair(r.events_at(t), code_ids(snap.st.code));
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
          if (!K[t].test(j)) continue;
          auto it = moments[j].find(key);
          if (it == moments[j].end()) {
            F["t3"].offer(cex(t, "no matching moment in the run of " + state_str(sys.schema(), space[j])));
            ok = false;
            break;
          }
          const Value& v = runs[j].steps[it->second].st.mem.at(src);
          auto [a, fresh] = actual.emplace(v, StateSet(universe));
          a->second.set(j);
        }
        if (ok) {
          std::map<Value, StateSet> tracked;
          for (const auto& [w, b] : p->blocks()) {
            StateSet x = b & K[t];
            if (x.any()) tracked.emplace(w, x);
          }
          if (tracked != actual) F["t3"].offer(cex(t, "temporary view of " + src + " restricted to knowledge is not the grouping by value"));
        }
      }
    }
  }

  // property 4: equal observations and code at declassification points give equal views
  Finder p4;
  if (want("p4")) {
    std::map<std::pair<std::string, std::vector<int>>, std::pair<std::size_t, const ViewMap*>> seen;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < runs[i].steps.size(); ++t) {
        const auto& snap = runs[i].steps[t];
        if (snap.mcase != 3) continue;
        ++p4.checked;
        auto key = std::make_pair(events_key(runs[i].events, snap.events_before), code_ids(snap.st.code));
        auto [it, fresh] = seen.emplace(key, std::make_pair(i, snap.st.tracker.pi.get()));
        if (!fresh && *it->second.second != *snap.st.tracker.pi) {
          Counterexample c;
          c.db = i;
          c.db_str = state_str(sys.schema(), runs[i].db);
          c.t = t;
          c.cause_t = t;
          c.cause_cmd = print_stmt_head(*snap.active);
          c.message = "temporary views differ from the run of " + state_str(sys.schema(), runs[it->second.first].db);
          p4.offer(c);
        }
      }
  }

  for (const auto& name : names) {
    if (!want(name)) continue;
    PropertyResult res;
    res.name = name;
    Finder total = name == "p4" ? p4 : Finder{};
    if (name != "p4")
      for (auto& f : per_run) {
        auto it = f.find(name);
        if (it == f.end()) continue;
        total.checked += it->second.checked;
        if (it->second.best) total.offer(*it->second.best);
      }
    res.checked = total.checked;
    res.cex = total.best;
    res.pass = !total.best;
    rep.results.push_back(std::move(res));
  }
  return rep;
}

}  // namespace medflow
