#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "medflow/operators.hpp"
#include "medflow/schema.hpp"

namespace medflow {

class PartitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Partial map from values to nonempty, pairwise disjoint blocks of states.
class Partition {
 public:
  explicit Partition(std::size_t universe = 0) : n_(universe) {}
  // One block holding the whole space.
  static Partition single(const Value& v, std::size_t universe);

  // Adds or unions into the block of v; empty sets are ignored.
  void add(const Value& v, const StateSet& states);

  std::size_t universe() const { return n_; }
  const std::map<Value, StateSet>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  bool empty() const { return blocks_.empty(); }
  const StateSet* block(const Value& v) const;
  std::optional<Value> index_of_state(std::size_t i) const;
  StateSet coverage() const;
  bool disjoint() const;
  std::vector<Value> domain() const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.n_ == b.n_ && a.blocks_ == b.blocks_; }

 private:
  std::size_t n_;
  std::map<Value, StateSet> blocks_;
};

// Block B_w holds exactly the states on which the query evaluates to w.
Partition init_view(const Query& q, const Schema& s, const StateSpace& space);
Partition init_view_serial(const Query& q, const Schema& s, const StateSpace& space);

Partition lift_operator(const Operators& ops, const std::string& op, const std::vector<const Partition*>& args);
Partition branch(const Partition& cond, const Partition& val);
// Throws PartitionError when the two coverages overlap.
Partition join(const Partition& a, const Partition& b);

// One line per block: "index -> {sorted states}".
std::string dump(const Partition& p, const Schema& s, const StateSpace& space);

}  // namespace medflow
