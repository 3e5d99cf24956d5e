#include "medflow/mediator.hpp"

#include <functional>

#include "medflow/parser.hpp"

namespace medflow {

std::shared_ptr<System> System::make(Schema schema, StateSpace space, Policy policy, Hierarchy hierarchy,
                                     Program program, std::vector<Value> args, std::optional<StateSet> initial_view) {
  std::shared_ptr<System> s(new System());
  s->schema_ = std::move(schema);
  s->space_ = std::move(space);
  s->policy_ = std::move(policy);
  s->hierarchy_ = std::move(hierarchy);
  s->program_ = std::move(program);
  s->args_ = std::move(args);
  s->typed_ = typecheck(s->program_);
  s->m0_ = initial_memory(s->program_, s->args_);
  s->ops_ = Operators(&s->schema_, &s->hierarchy_);
  s->view0_ = initial_view ? *initial_view : s->space_.all();
  if (s->view0_.size() != s->space_.size()) throw MediatorError("initial view does not match the state space");
  for (const auto& psi : s->policy_.secrets) {
    if (psi.states.size() != s->space_.size()) throw MediatorError("secret " + psi.label + " has the wrong size");
    if (s->view0_.is_subset_of(psi.states)) throw MediatorError("initial view already implies secret " + psi.label);
  }
  return s;
}

std::string Event::str() const { return end ? "End" : "(" + var + "," + value.str() + ")"; }

std::size_t RunTrace::events_at(std::size_t t) const {
  if (t < steps.size()) return steps[t].events_before;
  return events.size();
}

MediatorState initialize(const System& sys) {
  MediatorState s;
  s.code = sys.program().body;
  s.mem = sys.initial_mem();
  s.view = sys.initial_view();
  s.tracker = initial_tracker(sys.typed(), s.mem, sys.space().size());
  return s;
}

namespace {

const Value& lookup(const Memory& m, const std::string& x) {
  auto it = m.find(x);
  if (it == m.end()) throw MediatorError("unbound variable '" + x + "'");
  return it->second;
}

void forward(MediatorState& s, const Stmt& d) {
  s.mem[d.target] = lookup(s.mem, d.source);
  s.code.erase(s.code.begin());
}

}  // namespace

Snapshot step_mediator(const System& sys, MediatorState& s, const State& db, const RunOptions& opt) {
  Snapshot snap;
  snap.st = s;
  if (s.code.empty()) return snap;
  const auto& tp = sys.typed();
  StmtPtr active = s.code.front();
  snap.active = active;
  Memory before = s.mem;

  std::size_t hc = high_prefix_length(s.code, tp);
  if (hc > 0 && !s.tracker.tracking) {
    snap.mcase = 1;
    Block frag(s.code.begin(), s.code.begin() + static_cast<std::ptrdiff_t>(hc));
    auto sym = sys.symbolic(frag);
    s.tracker = track_fragment(*sym, s.tracker, low_memory(s.mem, tp), sys.tracker_ctx());
    Code next = frag;
    next.push_back(ftstop_stmt());
    next.insert(next.end(), s.code.begin() + static_cast<std::ptrdiff_t>(hc), s.code.end());
    Config cfg{std::move(next), std::move(s.mem), &db};
    cfg = step(std::move(cfg), sys.eval_ctx());
    s.code = std::move(cfg.code);
    s.mem = std::move(cfg.mem);
  } else if (active->kind == Stmt::Kind::FtStop) {
    snap.mcase = 2;
    s.code.erase(s.code.begin());
    s.tracker = stop_tracking(s.tracker);
  } else if (active->kind == Stmt::Kind::Declassify && tp.is_high(active->source) && !tp.is_high(active->target)) {
    snap.mcase = 3;
    if (opt.censor) {
      auto it = s.tracker.pi->find(active->source);
      if (it == s.tracker.pi->end()) throw MediatorError("no temporary view for " + active->source);
      auto cr = censor_step(s.view, it->second, lookup(s.mem, active->source), sys.policy(), sys.hierarchy());
      s.mem[active->target] = cr.generalized;
      s.view = cr.view_after;
      s.code.erase(s.code.begin());
      snap.censor = std::move(cr);
    } else {
      forward(s, *active);
    }
  } else if (active->kind == Stmt::Kind::Declassify) {
    snap.mcase = 4;
    forward(s, *active);
  } else {
    snap.mcase = 5;
    Config cfg{std::move(s.code), std::move(s.mem), &db};
    cfg = step(std::move(cfg), sys.eval_ctx());
    s.code = std::move(cfg.code);
    s.mem = std::move(cfg.mem);
  }

  if ((active->kind == Stmt::Kind::Assign || active->kind == Stmt::Kind::Declassify) && !tp.is_high(active->target)) {
    const Value& v = lookup(s.mem, active->target);
    auto old = before.find(active->target);
    if (old == before.end() || old->second != v) snap.event = Event{false, active->target, v};
  }
  int idx = sys.space().index_of(db);
  if (opt.censor && idx >= 0 && !s.view.test(static_cast<std::size_t>(idx)))
    throw MediatorError("view lost the actual state");
  return snap;
}

RunTrace run_mediated(const System& sys, const State& db, const RunOptions& opt) {
  RunTrace tr;
  tr.db = db;
  MediatorState s = initialize(sys);
  int budget = opt.budget > 0 ? opt.budget : 2 * sys.program().statement_count() + 2;
  int t = 0;
  while (!s.code.empty()) {
    if (++t > budget) throw BudgetError("step budget of " + std::to_string(budget) + " exceeded");
    Snapshot snap;
    try {
      snap = step_mediator(sys, s, db, opt);
    } catch (const std::exception& e) {
      throw MediatorError("t=" + std::to_string(t - 1) + ": " + e.what());
    }
    snap.events_before = tr.events.size();
    if (snap.event) tr.events.push_back(*snap.event);
    tr.steps.push_back(std::move(snap));
  }
  // terminal: the transition out of the empty program observes End
  Snapshot last;
  last.st = s;
  last.event = Event{true, "", Value()};
  last.events_before = tr.events.size();
  tr.events.push_back(*last.event);
  tr.steps.push_back(std::move(last));
  tr.reaction = lookup(s.mem, sys.program().returns);
  return tr;
}

std::string RunTrace::dump(const System& sys, bool views, bool censor) const {
  std::string out;
  for (std::size_t t = 0; t < steps.size(); ++t) {
    const auto& sn = steps[t];
    out += "t=" + std::to_string(t) + " case=" + std::to_string(sn.mcase) +
           " active=" + (sn.active ? print_stmt_head(*sn.active) : std::string("ε")) +
           " |view|=" + std::to_string(sn.st.view.count());
    if (sn.event) out += " event=" + sn.event->str();
    out += "\n";
    if (views && sn.mcase == 1 && t + 1 < steps.size()) {
      const auto& next = steps[t + 1].st.tracker;
      for (const auto& [x, p] : *next.pi) {
        auto prev = sn.st.tracker.pi->find(x);
        if (prev != sn.st.tracker.pi->end() && prev->second == p) continue;
        out += "  view " + x + ":\n";
        std::string d = medflow::dump(p, sys.schema(), sys.space());
        std::size_t pos = 0;
        while (pos < d.size()) {
          auto nl = d.find('\n', pos);
          if (nl == std::string::npos) nl = d.size();
          out += "    " + d.substr(pos, nl - pos) + "\n";
          pos = nl + 1;
        }
      }
    }
    if (censor && sn.censor) {
      const auto& c = *sn.censor;
      out += "  censor sc=" + c.sc.str() + " value=" + c.value.str() + " g=" + c.generalized.str() +
             " view " + std::to_string(c.view_before.count()) + " -> " + std::to_string(c.view_after.count()) + "\n";
    }
  }
  out += "reaction " + reaction.str() + "\n";
  return out;
}

}  // namespace medflow
