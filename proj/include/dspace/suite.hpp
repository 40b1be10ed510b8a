#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dspace/free.hpp"

namespace dspace::suite {

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
};

// The acceptance matrix, in order.
const std::vector<Criterion>& criteria();
const Criterion& criterion(int id);

struct Options {
  std::uint64_t seed = 1;
  // Replaces the Hoare preorder in the lower powerspace (mutation runs).
  SetPreorder hoare = nullptr;
};

// One report per criterion; the last check is the pinned time bound.
Report run_criterion(int id, const Options& opt = {});
// "paper" runs every criterion, "quick" only the finite ones.
std::vector<int> suite_members(const std::string& name);

// Re-runs the instance recorded in a counterexample's replay data.
Report replay(const json& inputs);

}  // namespace dspace::suite
