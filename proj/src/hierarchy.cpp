#include "medflow/hierarchy.hpp"

#include <deque>

namespace medflow {

int Hierarchy::add(const Value& v, int parent) {
  if (index_.count(v)) throw HierarchyError("value " + v.str() + " occurs twice in hierarchy");
  if (parent < 0) {
    if (root_ >= 0) throw HierarchyError("hierarchy has two roots");
  } else if (static_cast<std::size_t>(parent) >= values_.size()) {
    throw HierarchyError("bad parent id");
  }
  int n = static_cast<int>(values_.size());
  values_.push_back(v);
  parent_.push_back(parent);
  children_.emplace_back();
  index_.emplace(v, n);
  if (parent < 0)
    root_ = n;
  else
    children_[static_cast<std::size_t>(parent)].push_back(n);
  return n;
}

int Hierarchy::attach_under_root(const Value& v) {
  if (int n = find(v); n >= 0) return n;
  if (root_ < 0) throw HierarchyError("hierarchy has no root");
  return add(v, root_);
}

int Hierarchy::find(const Value& v) const {
  auto it = index_.find(v);
  return it == index_.end() ? -1 : it->second;
}

int Hierarchy::id(const Value& v) const {
  int n = find(v);
  if (n < 0) throw HierarchyError("value " + v.str() + " not in hierarchy");
  return n;
}

int Hierarchy::depth(int n) const {
  int d = 0;
  while (parent(n) >= 0) {
    n = parent(n);
    ++d;
  }
  return d;
}

bool Hierarchy::is_ancestor_or_self(int anc, int n) const {
  for (; n >= 0; n = parent(n))
    if (n == anc) return true;
  return false;
}

std::vector<int> Hierarchy::subtree(int n) const {
  std::vector<int> out;
  std::vector<int> stack{n};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    out.push_back(x);
    const auto& ch = children(x);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::optional<int> Hierarchy::smallest_cover(std::int64_t lo, std::int64_t hi) const {
  std::optional<int> best;
  std::int64_t best_width = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const Value& v = values_[i];
    std::int64_t a, b;
    if (v.is_int()) {
      a = b = v.as_int();
    } else if (v.is_interval()) {
      a = v.as_interval().lo;
      b = v.as_interval().hi;
    } else {
      continue;
    }
    if (a > lo || b < hi) continue;
    int n = static_cast<int>(i);
    if (!best || b - a < best_width || (b - a == best_width && depth(n) > depth(*best))) {
      best = n;
      best_width = b - a;
    }
  }
  return best;
}

void Hierarchy::dump_rec(int n, int indent, std::string& out) const {
  out += std::string(static_cast<std::size_t>(indent) * 2, ' ') + value(n).str() + "\n";
  for (int c : children(n)) dump_rec(c, indent + 1, out);
}

std::string Hierarchy::dump() const {
  std::string out;
  if (root_ >= 0) dump_rec(root_, 0, out);
  return out;
}

Hierarchy Hierarchy::product(const std::vector<Hierarchy>& positions) {
  if (positions.empty()) throw HierarchyError("tuple hierarchy without positions");
  for (const auto& p : positions)
    if (p.root() < 0) throw HierarchyError("tuple hierarchy position without root");
  const std::size_t k = positions.size();

  auto to_value = [&](const std::vector<int>& ids) {
    Tuple t;
    for (std::size_t i = 0; i < k; ++i) t.push_back(positions[i].value(ids[i]));
    return Value(std::move(t));
  };

  Hierarchy h;
  std::vector<int> rootids(k);
  for (std::size_t i = 0; i < k; ++i) rootids[i] = positions[i].root();
  std::deque<std::pair<std::vector<int>, int>> queue;
  queue.emplace_back(rootids, h.add(to_value(rootids), -1));
  while (!queue.empty()) {
    auto [ids, node] = queue.front();
    queue.pop_front();
    // positions that may still be specialized: at or after the last non-root one
    std::size_t first = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (ids[i] != positions[i].root()) first = i;
    for (std::size_t i = first; i < k; ++i)
      for (int c : positions[i].children(ids[i])) {
        auto next = ids;
        next[i] = c;
        queue.emplace_back(next, h.add(to_value(next), node));
      }
  }
  return h;
}

}  // namespace medflow
