#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "medflow/mediator.hpp"

namespace medflow {

// One run per state of the space, in space order.
std::vector<RunTrace> simulate_all(const System& sys, const RunOptions& opt = {}, std::size_t limit = 0);
std::vector<RunTrace> simulate_all_serial(const System& sys, const RunOptions& opt = {}, std::size_t limit = 0);

// Row-major n×n matrix of longest common event prefixes.
std::vector<std::uint32_t> lcp_matrix(const std::vector<RunTrace>& runs);
std::vector<std::uint32_t> lcp_matrix_serial(const std::vector<RunTrace>& runs);

// Observation at time t: the first events_at(t) events.
std::vector<Event> observation(const RunTrace& r, std::size_t t);

// K = { db_j : the first k events of run i are a prefix of run j's events }.
StateSet knowledge(const std::vector<std::uint32_t>& lcp, std::size_t runs, std::size_t universe, std::size_t i,
                   std::size_t k);
// Direct definition: collect every prefix each run reaches and compare.
StateSet knowledge_naive(const std::vector<RunTrace>& runs, std::size_t universe, const std::vector<Event>& target);

struct Counterexample {
  std::size_t db = 0;  // index into the space
  std::string db_str;
  std::size_t t = 0;
  std::size_t cause_t = 0;
  std::string cause_cmd;
  std::string message;
};

struct PropertyResult {
  std::string name;
  bool pass = true;
  std::size_t checked = 0;
  std::optional<Counterexample> cex;
};

struct PropertyReport {
  std::vector<PropertyResult> results;
  bool partial = false;
  std::size_t runs = 0;
  bool all_pass() const;
  const PropertyResult* find(const std::string& name) const;
  std::string text() const;
  std::string json() const;
};

inline const std::vector<std::string>& all_properties() {
  static const std::vector<std::string> v{"p1", "p2", "p3", "p4", "t1", "t2", "t3"};
  return v;
}

struct CheckOptions {
  std::set<std::string> properties;  // empty: all
  bool censor = true;
  std::size_t budget = 1000;          // maximum number of simulated states
};

PropertyReport check_properties(const System& sys, const CheckOptions& opt = {});

}  // namespace medflow
