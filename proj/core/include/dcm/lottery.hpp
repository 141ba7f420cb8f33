#pragma once

#include <vector>

#include "dcm/assignment.hpp"
#include "dcm/instance.hpp"

namespace dcm {

/// Floor/ceil relaxation of a fractional assignment: per (type, regular
/// school) the integer interval around the type's mass, plus one interval
/// for the total outside-option mass. Every vertex is integral.
struct RoundingPolytope {
  std::vector<std::vector<long>> lower;  // types x regular schools
  std::vector<std::vector<long>> upper;
  long phi_lower = 0;
  long phi_upper = 0;

  /// Membership test for an integral allocation (student -> school).
  bool contains(const std::vector<int>& alloc, const Instance& inst) const;
};

RoundingPolytope build_polytope(const StudentAssignment& x, const Instance& inst);

struct LotteryEntry {
  Rational weight;             // > 0
  std::vector<int> allocation;  // student -> school
};

using Lottery = std::vector<LotteryEntry>;

struct ApproxFeasibilityCert {
  std::vector<Rational> violations;  // per constraint, >= 0
  long regular_assigned = 0;
};

/// Checks an integral allocation against the original quotas: every
/// violation at most |T| and at least floor(OPT) students at regular
/// schools. Throws ApproxFeasibilityViolated otherwise.
ApproxFeasibilityCert certify_approx_feasible(const std::vector<int>& alloc,
                                              const Instance& inst,
                                              const Rational& opt);

/// Writes x as an exact convex combination of approximately feasible
/// integral allocations by peeling integral vertices of the rounding
/// polytope.
Lottery decompose(const StudentAssignment& x, const Instance& inst,
                  const Rational& opt);

/// Draws one allocation from the lottery with the seeded generator.
const LotteryEntry& sample(const Lottery& lottery, unsigned long long seed);

}  // namespace dcm
