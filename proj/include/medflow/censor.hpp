#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "medflow/hierarchy.hpp"
#include "medflow/partition.hpp"

namespace medflow {

class CensorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ValueSet = std::set<Value>;

struct SecurityConfig {
  ValueSet domain;                 // R'
  std::vector<ValueSet> violating; // deduplicated, each a strict subset of R'
  std::string str() const;
};

// I_psi = { w in R' : B_w ∩ view ⊆ psi }, kept when nonempty.
SecurityConfig security_configuration(const Partition& p, const StateSet& view, const Policy& conf);

// Roots of the minimal subtree scheme; empty when nothing is violating.
std::vector<int> subtree_scheme(const Hierarchy& h, const SecurityConfig& sc);

Value generalize(const Hierarchy& h, const std::vector<int>& scheme, const Value& w);
Value generalize(const Hierarchy& h, const SecurityConfig& sc, const Value& w);

// Union of B_w over w in R' generalized to g.
StateSet inferred_set(const Partition& p, const Hierarchy& h, const std::vector<int>& scheme, const Value& g);

struct CensorResult {
  SecurityConfig sc;
  std::vector<int> scheme;
  Value value;
  Value generalized;
  StateSet view_before;
  StateSet view_after;
};

CensorResult censor_step(const StateSet& view, const Partition& p, const Value& v, const Policy& conf,
                         const Hierarchy& h);

using DistortionFn = std::function<Value(const SecurityConfig&, const Value&)>;

struct DistortionIssue {
  std::size_t row = 0;
  int item = 0;
  Value g;
  std::string message;
};

// Checks identity on rows without violating sets, and that no nonempty
// preimage (restricted to R') lies inside a violating set.
std::vector<DistortionIssue> validate_distortion(const Hierarchy& h, const std::vector<SecurityConfig>& rows,
                                                 const DistortionFn& dt);

}  // namespace medflow
