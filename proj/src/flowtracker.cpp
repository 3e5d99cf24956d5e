#include "medflow/flowtracker.hpp"

namespace medflow {

std::shared_ptr<const Partition> ViewCache::get(const Query& q, const Schema& s, const StateSpace& space) {
  auto key = q.str();
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  auto p = std::make_shared<const Partition>(init_view(q, s, space));
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.emplace(key, p).first->second;
}

Memory low_memory(const Memory& mem, const TypedProgram& tp) {
  Memory out;
  for (const auto& [k, v] : mem)
    if (!tp.is_high(k)) out.emplace(k, v);
  return out;
}

TrackerState initial_tracker(const TypedProgram& tp, const Memory& m0, std::size_t universe) {
  auto pi = std::make_shared<ViewMap>();
  for (const auto& x : tp.high_vars()) {
    auto it = m0.find(x);
    pi->emplace(x, Partition::single(it == m0.end() ? Value() : it->second, universe));
  }
  TrackerState ts;
  ts.pi = pi;
  return ts;
}

Partition eval_symb(const SymExpr& e, const SymInit& iota, const ViewMap& pi, const Memory& low,
                    const TrackerContext& tc) {
  const auto n = tc.space->size();
  switch (e.kind) {
    case SymExpr::Kind::HVar: {
      auto it = pi.find(e.name);
      if (it == pi.end()) throw TrackerError("no temporary view for " + e.name);
      return it->second;
    }
    case SymExpr::Kind::Sym: {
      const Expr& src = iota.at(e.name);
      EvalCtx ctx{tc.schema, tc.ops};
      if (src.kind == Expr::Kind::Req) {
        auto q = build_query(src.req, low, ctx);
        if (tc.views) return *tc.views->get(q, *tc.schema, *tc.space);
        return init_view(q, *tc.schema, *tc.space);
      }
      return Partition::single(eval_expr(src, low, nullptr, ctx), n);
    }
    case SymExpr::Kind::Op: {
      std::vector<Partition> parts;
      parts.reserve(e.args.size());
      for (const auto& a : e.args) parts.push_back(eval_symb(*a, iota, pi, low, tc));
      std::vector<const Partition*> ptrs;
      for (const auto& p : parts) ptrs.push_back(&p);
      return lift_operator(*tc.ops, e.name, ptrs);
    }
    case SymExpr::Kind::Branch:
      return branch(eval_symb(*e.args[0], iota, pi, low, tc), eval_symb(*e.args[1], iota, pi, low, tc));
    case SymExpr::Kind::Join:
      return join(eval_symb(*e.args[0], iota, pi, low, tc), eval_symb(*e.args[1], iota, pi, low, tc));
  }
  throw TrackerError("bad symbolic expression");
}

TrackerState track_fragment(const SymResult& frag, const TrackerState& ts, const Memory& low, const TrackerContext& tc) {
  if (ts.tracking) throw TrackerError("flow tracker called while tracking");
  auto pi = std::make_shared<ViewMap>(*ts.pi);
  for (const auto& x : frag.assigned) (*pi)[x] = eval_symb(*frag.sigma.at(x), frag.iota, *ts.pi, low, tc);
  TrackerState out;
  out.pi = pi;
  out.tracking = true;
  return out;
}

TrackerState stop_tracking(const TrackerState& ts) {
  TrackerState out = ts;
  out.tracking = false;
  return out;
}

}  // namespace medflow
