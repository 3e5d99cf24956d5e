#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "medflow/mediator.hpp"

namespace medflow {

struct Correspondence {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // sorted
};

struct CorrespondenceResult {
  std::optional<Correspondence> q;
  int failed_item = 0;  // 1..6 when absent
  std::string reason;
};

// Active command at time t is low; the empty program counts as low, ftstop as high.
bool low_active(const TypedProgram& tp, const RunTrace& r, std::size_t t);
// Code after the maximal high prefix.
std::vector<int> lcont_ids(const TypedProgram& tp, const Code& code);
// Number of completed steps before t whose active command was low.
std::size_t low_steps_before(const TypedProgram& tp, const RunTrace& r, std::size_t t);

// Builds Q by pairing low steps one to one and high stretches monotonically.
CorrespondenceResult find_correspondence(const TypedProgram& tp, const RunTrace& r, std::size_t t, const RunTrace& r2,
                                         std::size_t t2);

// Checks the six conditions; returns the first violated item and why.
std::optional<std::pair<int, std::string>> verify_correspondence(const TypedProgram& tp, const RunTrace& r,
                                                                 std::size_t t, const RunTrace& r2, std::size_t t2,
                                                                 const Correspondence& q);

}  // namespace medflow
