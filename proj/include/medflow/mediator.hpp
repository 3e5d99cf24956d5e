#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "medflow/censor.hpp"
#include "medflow/flowtracker.hpp"
#include "medflow/interp.hpp"
#include "medflow/symexec.hpp"
#include "medflow/typing.hpp"

namespace medflow {

class MediatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetError : public MediatorError {
 public:
  using MediatorError::MediatorError;
};

// Everything fixed for a run except the database state. Built once, shared
// read-only by concurrent runs; the caches are internally synchronized.
class System {
 public:
  static std::shared_ptr<System> make(Schema schema, StateSpace space, Policy policy, Hierarchy hierarchy,
                                      Program program, std::vector<Value> args,
                                      std::optional<StateSet> initial_view = std::nullopt);

  const Schema& schema() const { return schema_; }
  const StateSpace& space() const { return space_; }
  const Policy& policy() const { return policy_; }
  const Hierarchy& hierarchy() const { return hierarchy_; }
  const Program& program() const { return program_; }
  const TypedProgram& typed() const { return typed_; }
  const std::vector<Value>& args() const { return args_; }
  const Memory& initial_mem() const { return m0_; }
  const Operators& ops() const { return ops_; }
  const StateSet& initial_view() const { return view0_; }
  EvalCtx eval_ctx() const { return EvalCtx{&schema_, &ops_}; }
  TrackerContext tracker_ctx() const { return TrackerContext{&schema_, &space_, &ops_, &views_}; }
  std::shared_ptr<const SymResult> symbolic(const Block& fragment) const { return sym_.get(fragment, typed_); }

  System(const System&) = delete;
  System& operator=(const System&) = delete;

 private:
  System() = default;

  Schema schema_;
  StateSpace space_;
  Policy policy_;
  Hierarchy hierarchy_;
  Program program_;
  TypedProgram typed_;
  std::vector<Value> args_;
  Memory m0_;
  Operators ops_;
  StateSet view0_;
  mutable SymCache sym_;
  mutable ViewCache views_;
};

struct Event {
  bool end = false;
  std::string var;
  Value value;
  std::string str() const;
  friend bool operator==(const Event& a, const Event& b) {
    return a.end == b.end && a.var == b.var && a.value == b.value;
  }
};

struct MediatorState {
  Code code;
  Memory mem;
  StateSet view;
  TrackerState tracker;
};

// Snapshot r(t) plus what the transition t -> t+1 did.
struct Snapshot {
  MediatorState st;
  int mcase = 0;               // 1..5, 0 when terminal
  StmtPtr active;              // null when code is empty
  std::optional<Event> event;  // event appended at t+1
  std::optional<CensorResult> censor;
  std::size_t events_before = 0;  // events observed up to t
};

struct RunOptions {
  bool censor = true;  // false forwards declassified values unchanged
  int budget = 0;      // 0: derived from the program size
};

struct RunTrace {
  State db;
  std::vector<Snapshot> steps;  // t = 0 .. T; steps.back() is terminal
  std::vector<Event> events;
  Value reaction;

  // Clamps beyond termination: the run stutters.
  const Snapshot& at(std::size_t t) const { return steps[std::min(t, steps.size() - 1)]; }
  std::size_t events_at(std::size_t t) const;  // observations made up to time t
  std::string dump(const System& sys, bool views, bool censor) const;
};

MediatorState initialize(const System& sys);
// Applies the first of the five mediator cases whose precondition holds.
Snapshot step_mediator(const System& sys, MediatorState& s, const State& db, const RunOptions& opt = {});
RunTrace run_mediated(const System& sys, const State& db, const RunOptions& opt = {});

}  // namespace medflow
