#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "inferkit/belief_web.hpp"
#include "inferkit/maxent.hpp"
#include "inferkit/space.hpp"

namespace inferkit {

/// A space, a prior over it, constraints and solver options, read from a
/// sectioned text file:
///
///   # comment
///   [variables]
///   face = 1 2 3 4 5 6
///   [distribution]
///   uniform                      | table = w1 w2 ...  | factor x,y = w1 w2 ...
///   [constraints]
///   expectation value(face) = 4.5
///   expectation indicator(face=6 | face=5) = 0.4
///   expectation [v1 v2 ...] = 2.5
///   mass face=1 | face=2 = 0.3
///   data face=6
///   [options]
///   tol = 1e-10
///   max_iter = 200
///
/// Tables list weights in world order and may continue on following lines.
/// Factors multiply; variables without a factor are uniform. Weights are
/// normalized, with a warning when that changes them by more than 1e-9.
struct Scenario {
  Space space;
  BeliefWeb prior;
  ConstraintSet constraints;
  /// Source text of each constraint, for display.
  std::vector<std::string> constraint_labels;
  SolverOptions options;
  std::vector<std::string> warnings;
};

/// Errors carry "<source>:<line>:<column>: " in their message.
Scenario parse_scenario(std::string_view text, std::string_view source = "<input>");
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace inferkit
