#include "medflow/partition.hpp"

#include <omp.h>

namespace medflow {

Partition Partition::single(const Value& v, std::size_t universe) {
  Partition p(universe);
  p.add(v, StateSet(universe).set());
  return p;
}

void Partition::add(const Value& v, const StateSet& states) {
  if (states.size() != n_) throw PartitionError("block over a different state space");
  if (states.none()) return;
  auto [it, inserted] = blocks_.emplace(v, states);
  if (!inserted) it->second |= states;
}

const StateSet* Partition::block(const Value& v) const {
  auto it = blocks_.find(v);
  return it == blocks_.end() ? nullptr : &it->second;
}

std::optional<Value> Partition::index_of_state(std::size_t i) const {
  for (const auto& [v, b] : blocks_)
    if (b.test(i)) return v;
  return std::nullopt;
}

StateSet Partition::coverage() const {
  StateSet c(n_);
  for (const auto& [v, b] : blocks_) c |= b;
  return c;
}

bool Partition::disjoint() const {
  StateSet seen(n_);
  for (const auto& [v, b] : blocks_) {
    if (seen.intersects(b)) return false;
    seen |= b;
  }
  return true;
}

std::vector<Value> Partition::domain() const {
  std::vector<Value> out;
  for (const auto& [v, b] : blocks_) out.push_back(v);
  return out;
}

namespace {

Partition group(const std::vector<Value>& results) {
  Partition p(results.size());
  std::map<Value, StateSet> acc;
  for (std::size_t i = 0; i < results.size(); ++i) {
    auto [it, fresh] = acc.try_emplace(results[i], results.size());
    it->second.set(i);
  }
  for (auto& [v, b] : acc) p.add(v, b);
  return p;
}

}  // namespace

Partition init_view(const Query& q, const Schema& s, const StateSpace& space) {
  q.validate(s);
  const auto n = static_cast<std::int64_t>(space.size());
  std::vector<Value> results(space.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    results[static_cast<std::size_t>(i)] = eval_query(q, s, space[static_cast<std::size_t>(i)]);
  return group(results);
}

Partition init_view_serial(const Query& q, const Schema& s, const StateSpace& space) {
  q.validate(s);
  std::vector<Value> results;
  results.reserve(space.size());
  for (const auto& st : space.states()) results.push_back(eval_query(q, s, st));
  return group(results);
}

namespace {

void lift_rec(const Operators& ops, const std::string& op, const std::vector<const Partition*>& args,
              std::size_t pos, std::vector<Value>& idx, const StateSet& acc, Partition& out) {
  if (pos == args.size()) {
    Value v;
    try {
      v = ops.apply(op, idx);
    } catch (const EvalError& e) {
      throw EvalError(std::string(e.what()) + " at index tuple (" + join_values(idx) + ")");
    }
    out.add(v, acc);
    return;
  }
  for (const auto& [w, b] : args[pos]->blocks()) {
    StateSet next = acc & b;
    if (next.none()) continue;
    idx.push_back(w);
    lift_rec(ops, op, args, pos + 1, idx, next, out);
    idx.pop_back();
  }
}

}  // namespace

Partition lift_operator(const Operators& ops, const std::string& op, const std::vector<const Partition*>& args) {
  if (args.empty()) throw PartitionError("operator '" + op + "' lifted without arguments");
  const std::size_t n = args.front()->universe();
  for (const auto* a : args)
    if (a->universe() != n) throw PartitionError("operator arguments over different state spaces");
  Partition out(n);
  std::vector<Value> idx;
  lift_rec(ops, op, args, 0, idx, StateSet(n).set(), out);
  return out;
}

Partition branch(const Partition& cond, const Partition& val) {
  if (cond.universe() != val.universe()) throw PartitionError("branch over different state spaces");
  for (const auto& [v, b] : cond.blocks())
    if (!v.is_bool()) throw PartitionError("branch condition indexed by non-boolean " + v.str());
  Partition out(val.universe());
  const StateSet* t = cond.block(Value(true));
  if (!t) return out;
  for (const auto& [v, b] : val.blocks()) out.add(v, *t & b);
  return out;
}

Partition join(const Partition& a, const Partition& b) {
  if (a.universe() != b.universe()) throw PartitionError("join over different state spaces");
  if (a.coverage().intersects(b.coverage()))
    throw PartitionError("join of partitions with overlapping coverage");
  Partition out = a;
  for (const auto& [v, blk] : b.blocks()) out.add(v, blk);
  return out;
}

std::string dump(const Partition& p, const Schema& s, const StateSpace& space) {
  std::string out;
  for (const auto& [v, b] : p.blocks()) out += v.str() + " -> " + set_str(s, space, b) + "\n";
  return out;
}

}  // namespace medflow
