#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "medflow/value.hpp"

namespace medflow {

class HierarchyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Generalization hierarchy: a tree over values, root most general.
class Hierarchy {
 public:
  // parent < 0 adds the root; a second root is rejected.
  int add(const Value& v, int parent);
  // Adds v as a leaf under the root unless already present.
  int attach_under_root(const Value& v);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  int root() const { return root_; }
  int find(const Value& v) const;
  int id(const Value& v) const;
  bool contains(const Value& v) const { return find(v) >= 0; }
  const Value& value(int n) const { return values_.at(static_cast<std::size_t>(n)); }
  int parent(int n) const { return parent_.at(static_cast<std::size_t>(n)); }
  const std::vector<int>& children(int n) const { return children_.at(static_cast<std::size_t>(n)); }
  int depth(int n) const;
  bool is_ancestor_or_self(int anc, int n) const;
  // Preorder node ids of the subtree rooted at n.
  std::vector<int> subtree(int n) const;

  // Smallest node (by width, then depth) whose integer range contains [lo,hi].
  std::optional<int> smallest_cover(std::int64_t lo, std::int64_t hi) const;

  std::string dump() const;

  // Component-wise product: a tuple's parent generalizes its last
  // component that is not yet at the root of its position.
  static Hierarchy product(const std::vector<Hierarchy>& positions);

 private:
  void dump_rec(int n, int indent, std::string& out) const;

  std::vector<Value> values_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::map<Value, int> index_;
  int root_ = -1;
};

}  // namespace medflow
