#include "medflow/censor.hpp"

#include <algorithm>
#include <map>

namespace medflow {

std::string SecurityConfig::str() const {
  auto set = [](const ValueSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& v : s) {
      out += (first ? "" : ",") + v.str();
      first = false;
    }
    return out + "}";
  };
  std::string out = "(" + set(domain) + ", {";
  for (std::size_t i = 0; i < violating.size(); ++i) out += (i ? "," : "") + set(violating[i]);
  return out + "})";
}

SecurityConfig security_configuration(const Partition& p, const StateSet& view, const Policy& conf) {
  SecurityConfig sc;
  for (const auto& [w, b] : p.blocks()) sc.domain.insert(w);
  for (const auto& psi : conf.secrets) {
    ValueSet I;
    for (const auto& [w, b] : p.blocks())
      if ((b & view).is_subset_of(psi.states)) I.insert(w);
    if (I.empty()) continue;
    if (I == sc.domain) throw CensorError("whole range harmful for secret " + psi.label + "; previous view violates policy");
    if (std::find(sc.violating.begin(), sc.violating.end(), I) == sc.violating.end()) sc.violating.push_back(I);
  }
  std::sort(sc.violating.begin(), sc.violating.end());
  return sc;
}

namespace {

bool inside_some(const ValueSet& s, const std::vector<ValueSet>& family) {
  for (const auto& I : family)
    if (std::includes(I.begin(), I.end(), s.begin(), s.end())) return true;
  return false;
}

ValueSet restricted(const Hierarchy& h, int n, const ValueSet& domain) {
  ValueSet out;
  for (int m : h.subtree(n))
    if (domain.count(h.value(m))) out.insert(h.value(m));
  return out;
}

}  // namespace

std::vector<int> subtree_scheme(const Hierarchy& h, const SecurityConfig& sc) {
  std::set<int> tops;
  for (const auto& I : sc.violating)
    for (const auto& w : I) {
      int n = h.find(w);
      if (n < 0) throw CensorError("value " + w.str() + " missing from hierarchy");
      while (h.parent(n) >= 0 && inside_some(restricted(h, n, sc.domain), sc.violating)) n = h.parent(n);
      tops.insert(n);
    }
  std::vector<int> out;
  for (int n : tops) {
    bool nested = std::any_of(tops.begin(), tops.end(), [&](int m) { return m != n && h.is_ancestor_or_self(m, n); });
    if (!nested) out.push_back(n);
  }
  return out;
}

Value generalize(const Hierarchy& h, const std::vector<int>& scheme, const Value& w) {
  int n = h.find(w);
  if (n < 0) throw CensorError("value " + w.str() + " outside the hierarchy");
  for (int r : scheme)
    if (h.is_ancestor_or_self(r, n)) return h.value(r);
  return w;
}

Value generalize(const Hierarchy& h, const SecurityConfig& sc, const Value& w) {
  return generalize(h, subtree_scheme(h, sc), w);
}

StateSet inferred_set(const Partition& p, const Hierarchy& h, const std::vector<int>& scheme, const Value& g) {
  StateSet out(p.universe());
  for (const auto& [w, b] : p.blocks())
    if (generalize(h, scheme, w) == g) out |= b;
  return out;
}

CensorResult censor_step(const StateSet& view, const Partition& p, const Value& v, const Policy& conf,
                         const Hierarchy& h) {
  if (!p.block(v)) throw CensorError("value " + v.str() + " has no block in the temporary view");
  CensorResult r;
  r.value = v;
  r.view_before = view;
  r.sc = security_configuration(p, view, conf);
  r.scheme = subtree_scheme(h, r.sc);
  r.generalized = generalize(h, r.scheme, v);
  r.view_after = view & inferred_set(p, h, r.scheme, r.generalized);
  for (const auto& psi : conf.secrets)
    if (r.view_after.is_subset_of(psi.states)) throw CensorError("censored view implies secret " + psi.label);
  return r;
}

std::vector<DistortionIssue> validate_distortion(const Hierarchy& h, const std::vector<SecurityConfig>& rows,
                                                 const DistortionFn& dt) {
  std::vector<DistortionIssue> issues;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& sc = rows[i];
    std::map<Value, ValueSet> pre;
    for (std::size_t n = 0; n < h.size(); ++n) {
      const Value& w = h.value(static_cast<int>(n));
      Value g = dt(sc, w);
      if (sc.violating.empty() && g != w)
        issues.push_back({i, 1, g, "row without violating sets maps " + w.str() + " to " + g.str()});
      if (sc.domain.count(w)) pre[g].insert(w);
    }
    for (const auto& [g, ws] : pre)
      if (inside_some(ws, sc.violating))
        issues.push_back({i, 2, g, "preimage of " + g.str() + " lies inside a violating set"});
  }
  return issues;
}

}  // namespace medflow
