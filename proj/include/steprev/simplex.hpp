#pragma once

#include <variant>

#include "steprev/numbers.hpp"

namespace steprev {

/// Feasibility problem: find x >= 0 with A x <= b, in exact rationals.
struct LinearProgram {
  RatMatrix a;
  RatVector b;
};

struct FeasiblePoint {
  RatVector x;
};

/// Farkas certificate of infeasibility: y >= 0, y^T A >= 0 componentwise,
/// y^T b < 0. Checked before being returned.
struct FarkasRay {
  RatVector y;
};

using SimplexResult = std::variant<FeasiblePoint, FarkasRay>;

/// Phase-I simplex with Bland's rule; never cycles, no floating point.
SimplexResult solve_feasibility(const LinearProgram& lp);

}  // namespace steprev
