#include "medflow/correspondence.hpp"

#include <algorithm>

namespace medflow {

namespace {

std::vector<int> ids(const Code& c) {
  std::vector<int> out;
  for (const auto& s : c) out.push_back(s->id);
  return out;
}

Memory low_mem(const TypedProgram& tp, const RunTrace& r, std::size_t t) { return low_memory(r.at(t).st.mem, tp); }

}  // namespace

bool low_active(const TypedProgram& tp, const RunTrace& r, std::size_t t) {
  const auto& code = r.at(t).st.code;
  if (code.empty()) return true;
  return tp.level_of(*code.front()) == Level::Low;
}

std::vector<int> lcont_ids(const TypedProgram& tp, const Code& code) {
  auto k = high_prefix_length(code, tp);
  return ids(Code(code.begin() + static_cast<std::ptrdiff_t>(k), code.end()));
}

std::size_t low_steps_before(const TypedProgram& tp, const RunTrace& r, std::size_t t) {
  std::size_t n = 0;
  for (std::size_t u = 0; u < t; ++u)
    if (low_active(tp, r, u)) ++n;
  return n;
}

CorrespondenceResult find_correspondence(const TypedProgram& tp, const RunTrace& r, std::size_t t, const RunTrace& r2,
                                         std::size_t t2) {
  CorrespondenceResult res;
  Correspondence q;
  std::size_t i = 0, j = 0;
  auto fail = [&](int item, std::string why) {
    res.failed_item = item;
    res.reason = std::move(why) + " at (" + std::to_string(i) + "," + std::to_string(j) + ")";
    return res;
  };
  while (i <= t && j <= t2) {
    bool li = low_active(tp, r, i), lj = low_active(tp, r2, j);
    if (li != lj) return fail(2, "active commands differ in level");
    if (li) {
      if (low_mem(tp, r, i) != low_mem(tp, r2, j)) return fail(1, "low memories differ");
      if (ids(r.at(i).st.code) != ids(r2.at(j).st.code)) return fail(3, "codes differ at a low step");
      q.pairs.emplace_back(i++, j++);
      continue;
    }
    std::size_t ei = i, ej = j;
    while (ei + 1 <= t && !low_active(tp, r, ei + 1)) ++ei;
    while (ej + 1 <= t2 && !low_active(tp, r2, ej + 1)) ++ej;
    std::size_t a = ei - i + 1, b = ej - j + 1;
    for (std::size_t k = 0; k < std::max(a, b); ++k) {
      std::size_t x = i + std::min(k, a - 1), y = j + std::min(k, b - 1);
      if (low_mem(tp, r, x) != low_mem(tp, r2, y)) return fail(1, "low memories differ in a high stretch");
      if (lcont_ids(tp, r.at(x).st.code) != lcont_ids(tp, r2.at(y).st.code))
        return fail(4, "L-continuations differ");
      q.pairs.emplace_back(x, y);
    }
    i = ei + 1;
    j = ej + 1;
  }
  if (i <= t || j <= t2) return fail(6, "one run has unmatched steps");
  if (auto bad = verify_correspondence(tp, r, t, r2, t2, q)) return fail(bad->first, bad->second);
  res.q = std::move(q);
  return res;
}

std::optional<std::pair<int, std::string>> verify_correspondence(const TypedProgram& tp, const RunTrace& r,
                                                                 std::size_t t, const RunTrace& r2, std::size_t t2,
                                                                 const Correspondence& q) {
  auto at = [](int item, std::size_t i, std::size_t j, const std::string& what) {
    return std::make_pair(item, what + " at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  };
  if (std::find(q.pairs.begin(), q.pairs.end(), std::make_pair<std::size_t, std::size_t>(0, 0)) == q.pairs.end())
    return std::make_pair(6, std::string("(0,0) missing"));
  std::vector<bool> left(t + 1), right(t2 + 1);
  for (const auto& [i, j] : q.pairs) {
    if (i > t || j > t2) return at(6, i, j, "pair out of range");
    left[i] = right[j] = true;
    if (low_mem(tp, r, i) != low_mem(tp, r2, j)) return at(1, i, j, "low memories differ");
    bool li = low_active(tp, r, i), lj = low_active(tp, r2, j);
    if (li != lj) return at(2, i, j, "levels differ");
    if (li && ids(r.at(i).st.code) != ids(r2.at(j).st.code)) return at(3, i, j, "codes differ");
    if (!li && lcont_ids(tp, r.at(i).st.code) != lcont_ids(tp, r2.at(j).st.code))
      return at(4, i, j, "L-continuations differ");
  }
  for (const auto& [i, j] : q.pairs)
    for (const auto& [i2, j2] : q.pairs)
      if ((i < i2 && j > j2) || (j < j2 && i > i2)) return at(5, i, j, "not monotone");
  for (std::size_t i = 0; i <= t; ++i)
    if (!left[i]) return at(6, i, 0, "left time uncovered");
  for (std::size_t j = 0; j <= t2; ++j)
    if (!right[j]) return at(6, 0, j, "right time uncovered");
  return std::nullopt;
}

}  // namespace medflow
