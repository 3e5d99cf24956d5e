#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "medflow/interp.hpp"
#include "medflow/partition.hpp"
#include "medflow/symexec.hpp"

namespace medflow {

class TrackerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// init_view results keyed by the instantiated query.
class ViewCache {
 public:
  std::shared_ptr<const Partition> get(const Query& q, const Schema& s, const StateSpace& space);

 private:
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<const Partition>> cache_;
};

struct TrackerContext {
  const Schema* schema = nullptr;
  const StateSpace* space = nullptr;
  const Operators* ops = nullptr;
  ViewCache* views = nullptr;  // optional
};

using ViewMap = std::map<std::string, Partition>;

struct TrackerState {
  std::shared_ptr<const ViewMap> pi = std::make_shared<ViewMap>();
  bool tracking = false;
};

Memory low_memory(const Memory& mem, const TypedProgram& tp);

// Each high variable starts with one block Ω indexed by its initial value.
TrackerState initial_tracker(const TypedProgram& tp, const Memory& m0, std::size_t universe);

// Reads only the symbolic expression, the symbol table, Π and low memory.
Partition eval_symb(const SymExpr& e, const SymInit& iota, const ViewMap& pi, const Memory& low,
                    const TrackerContext& tc);

TrackerState track_fragment(const SymResult& frag, const TrackerState& ts, const Memory& low, const TrackerContext& tc);
TrackerState stop_tracking(const TrackerState& ts);

}  // namespace medflow
