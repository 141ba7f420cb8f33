#pragma once

#include "dcm/assignment.hpp"
#include "dcm/instance.hpp"
#include "dcm/lp.hpp"

namespace dcm {

/// Type-level allocative-efficiency LP: maximize the total mass on regular
/// schools subject to the distributional constraints and type counts.
/// Variable index of x_{t,s} is t * num_columns + s.
LpProblem build_type_program(const Instance& inst);

/// Student-level restatement of the same program; variable index of x_{i,s}
/// is i * num_columns + s.
LpProblem build_student_program(const Instance& inst);

inline int type_var(const Instance& inst, int t, int s) {
  return t * inst.num_columns() + s;
}
inline int student_var(const Instance& inst, int i, int s) {
  return i * inst.num_columns() + s;
}

/// The exact fractional optimum OPT. Throws InfeasibleInstance when the
/// instance admits no feasible fractional assignment.
Rational compute_opt(const Instance& inst);

/// Optimum plus an optimal type-assignment witness.
std::pair<Rational, TypeAssignment> compute_opt_point(const Instance& inst);

}  // namespace dcm
