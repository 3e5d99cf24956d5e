// Brute-force references shared by the unit tests and the acceptance binary.
// None of these call the partition, tracker or censor algorithms.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "medflow/censor.hpp"
#include "medflow/interp.hpp"
#include "medflow/mediator.hpp"
#include "medflow/scenario.hpp"
#include "medflow/symexec.hpp"

#ifndef MEDFLOW_SCENARIO_DIR
#define MEDFLOW_SCENARIO_DIR "scenarios"
#endif

namespace oracle {

using namespace medflow;

inline std::string scenario(const std::string& name) { return std::string(MEDFLOW_SCENARIO_DIR) + "/" + name; }

using Grouping = std::map<Value, std::set<std::size_t>>;

inline Grouping blocks_of(const Partition& p) {
  Grouping g;
  for (const auto& [v, b] : p.blocks())
    for (std::size_t i = 0; i < b.size(); ++i)
      if (b.test(i)) g[v].insert(i);
  return g;
}

inline Grouping group_by(std::size_t n, const std::function<std::optional<Value>(std::size_t)>& f) {
  Grouping g;
  for (std::size_t i = 0; i < n; ++i)
    if (auto v = f(i)) g[*v].insert(i);
  return g;
}

inline std::set<std::size_t> members(const StateSet& s) {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.test(i)) out.insert(i);
  return out;
}

// State indices matching attribute = value constraints (atoms written bare).
inline std::set<std::size_t> states_where(const Schema& schema, const StateSpace& space,
                                          const std::vector<std::pair<std::string, std::string>>& eq) {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < space.size(); ++i) {
    bool ok = true;
    for (const auto& [a, v] : eq) {
      int k = schema.index_of(a);
      const auto s = space[i].values[static_cast<std::size_t>(k)].str();
      ok = ok && (s == a + ":" + v || s == v);
    }
    if (ok) out.insert(i);
  }
  return out;
}

// Replays each tracked fragment concretely on every state, with low memory
// taken from the actual run. Returns, per tracking step t, the grouping of
// every high variable by its replayed value.
struct ReplayPoint {
  std::size_t t;
  std::map<std::string, Grouping> groups;
};

inline std::vector<ReplayPoint> replay_groupings(const System& sys, const RunTrace& tr) {
  const auto& space = sys.space();
  const auto& tp = sys.typed();
  std::vector<Memory> high(space.size());
  for (auto& m : high)
    for (const auto& x : tp.high_vars()) m[x] = sys.initial_mem().at(x);
  std::vector<ReplayPoint> out;
  for (std::size_t t = 0; t < tr.steps.size(); ++t) {
    const auto& sn = tr.steps[t];
    if (sn.mcase != 1) continue;
    Code hc(sn.st.code.begin(), sn.st.code.begin() + static_cast<std::ptrdiff_t>(high_prefix_length(sn.st.code, tp)));
    ReplayPoint rp{t, {}};
    for (std::size_t i = 0; i < space.size(); ++i) {
      Memory m = sn.st.mem;
      for (const auto& [x, v] : high[i]) m[x] = v;
      auto res = run_concrete(hc, m, space[i], sys.eval_ctx());
      for (const auto& x : tp.high_vars()) {
        high[i][x] = res.mem.at(x);
        rp.groups[x][res.mem.at(x)].insert(i);
      }
    }
    out.push_back(std::move(rp));
  }
  return out;
}

// Concrete reading of a symbolic expression: a guard must be TRUE, a join
// keeps its only surviving side.
inline std::optional<Value> eval_sym_concrete(const SymExpr& e, const SymInit& iota, const Memory& mem, const State& db,
                                              const EvalCtx& ctx) {
  switch (e.kind) {
    case SymExpr::Kind::Sym:
      return eval_expr(iota.at(e.name), mem, &db, ctx);
    case SymExpr::Kind::HVar:
      return mem.at(e.name);
    case SymExpr::Kind::Op: {
      std::vector<Value> args;
      for (const auto& a : e.args) {
        auto v = eval_sym_concrete(*a, iota, mem, db, ctx);
        if (!v) return std::nullopt;
        args.push_back(*v);
      }
      return ctx.ops->apply(e.name, args);
    }
    case SymExpr::Kind::Branch: {
      auto c = eval_sym_concrete(*e.args[0], iota, mem, db, ctx);
      if (!c || *c != Value(true)) return std::nullopt;
      return eval_sym_concrete(*e.args[1], iota, mem, db, ctx);
    }
    case SymExpr::Kind::Join: {
      auto a = eval_sym_concrete(*e.args[0], iota, mem, db, ctx);
      auto b = eval_sym_concrete(*e.args[1], iota, mem, db, ctx);
      if (a && b) throw std::logic_error("two join sides survive");
      return a ? a : b;
    }
  }
  return std::nullopt;
}

// Search-based harmful sets: per secret, the maximal I ⊂ R' whose
// preimage inside the view lies in the secret, found by search over ℘(R').
inline std::vector<ValueSet> harmful_sets_by_search(const Partition& p, const StateSet& view, const Policy& conf) {
  std::vector<Value> dom;
  for (const auto& [w, b] : p.blocks()) dom.push_back(w);
  const std::size_t n = dom.size();
  std::vector<ValueSet> out;
  for (const auto& psi : conf.secrets) {
    std::vector<unsigned> harmful;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      if (mask == (1u << n) - 1) continue;  // strict subsets only
      StateSet pre(p.universe());
      for (std::size_t k = 0; k < n; ++k)
        if (mask & (1u << k)) pre |= *p.block(dom[k]);
      if ((pre & view).is_subset_of(psi.states)) harmful.push_back(mask);
    }
    for (unsigned m : harmful) {
      bool maximal = std::none_of(harmful.begin(), harmful.end(), [&](unsigned o) { return o != m && (o & m) == m; });
      if (!maximal) continue;
      ValueSet I;
      for (std::size_t k = 0; k < n; ++k)
        if (m & (1u << k)) I.insert(dom[k]);
      if (std::find(out.begin(), out.end(), I) == out.end()) out.push_back(I);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// All ⊑-minimal valid schemes, by enumerating sets of ancestors of the
// violating values. A scheme is a set of disjoint subtrees covering every
// violating value, none of whose R'-part lies inside a violating set.
inline std::vector<std::vector<int>> minimal_schemes_by_search(const Hierarchy& h, const SecurityConfig& sc) {
  std::set<int> cand;
  std::set<int> targets;
  for (const auto& I : sc.violating)
    for (const auto& w : I) {
      int n = h.id(w);
      targets.insert(n);
      for (int a = n; a >= 0; a = h.parent(a)) cand.insert(a);
    }
  std::vector<int> c(cand.begin(), cand.end());
  auto in_sub = [&](int root, int n) { return h.is_ancestor_or_self(root, n); };
  auto ok_subtree = [&](int root) {
    ValueSet part;
    for (int m : h.subtree(root))
      if (sc.domain.count(h.value(m))) part.insert(h.value(m));
    for (const auto& I : sc.violating)
      if (std::includes(I.begin(), I.end(), part.begin(), part.end())) return false;
    return true;
  };
  std::vector<std::vector<int>> valid;
  const std::size_t n = c.size();
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    std::vector<int> s;
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (1ul << k)) s.push_back(c[k]);
    bool ok = true;
    for (std::size_t a = 0; a < s.size() && ok; ++a)
      for (std::size_t b = a + 1; b < s.size() && ok; ++b)
        if (in_sub(s[a], s[b]) || in_sub(s[b], s[a])) ok = false;
    for (int r : s) ok = ok && ok_subtree(r);
    for (int tnode : targets)
      ok = ok && std::any_of(s.begin(), s.end(), [&](int r) { return in_sub(r, tnode); });
    if (ok) valid.push_back(s);
  }
  auto below = [&](const std::vector<int>& a, const std::vector<int>& b) {  // a ⊑ b
    return std::all_of(a.begin(), a.end(),
                       [&](int g) { return std::any_of(b.begin(), b.end(), [&](int g2) { return in_sub(g2, g); }); });
  };
  std::vector<std::vector<int>> out;
  for (const auto& s : valid) {
    bool minimal = std::none_of(valid.begin(), valid.end(),
                                [&](const std::vector<int>& o) { return o != s && below(o, s) && !below(s, o); });
    if (minimal) out.push_back(s);
  }
  for (auto& s : out) std::sort(s.begin(), s.end());
  return out;
}

// Random tree hierarchy of atoms n0..n{k-1} with n0 as root.
inline Hierarchy random_hierarchy(std::mt19937& rng, int nodes) {
  Hierarchy h;
  h.add(Value::atom("n0"), -1);
  for (int i = 1; i < nodes; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    h.add(Value::atom("n" + std::to_string(i)), pick(rng));
  }
  return h;
}

// Random row: R' a nonempty subset of the nodes, one to three violating
// strict subsets of R'.
inline SecurityConfig random_config(std::mt19937& rng, const Hierarchy& h) {
  SecurityConfig sc;
  std::vector<Value> all;
  for (std::size_t i = 0; i < h.size(); ++i) all.push_back(h.value(static_cast<int>(i)));
  std::bernoulli_distribution coin(0.6);
  for (const auto& v : all)
    if (coin(rng)) sc.domain.insert(v);
  if (sc.domain.size() < 2) {
    sc.domain.insert(all[0]);
    sc.domain.insert(all.back());
  }
  std::vector<Value> dom(sc.domain.begin(), sc.domain.end());
  std::uniform_int_distribution<int> count(0, 3);
  int k = count(rng);
  for (int i = 0; i < k; ++i) {
    ValueSet I;
    std::bernoulli_distribution in(0.35);
    for (const auto& v : dom)
      if (in(rng)) I.insert(v);
    if (I.empty() || I.size() == dom.size()) continue;
    if (std::find(sc.violating.begin(), sc.violating.end(), I) == sc.violating.end()) sc.violating.push_back(I);
  }
  std::sort(sc.violating.begin(), sc.violating.end());
  return sc;
}

}  // namespace oracle
