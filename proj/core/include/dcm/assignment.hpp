#pragma once

#include <vector>

#include "dcm/instance.hpp"
#include "dcm/rational.hpp"

namespace dcm {

/// Type-aggregated assignment: entries[t][s] is the (possibly fractional)
/// mass of type t placed at school s. Column phi() is the outside option.
struct TypeAssignment {
  std::vector<std::vector<Rational>> entries;  // types x (schools + phi)

  static TypeAssignment zero(const Instance& inst);
  Rational& at(int t, int s) { return entries[t][s]; }
  const Rational& at(int t, int s) const { return entries[t][s]; }
  Rational row_sum(int t) const;
  /// Aggregate mass of a type subset at a school.
  Rational subset_mass(const std::vector<int>& types, int s) const;
  bool operator==(const TypeAssignment&) const = default;
};

/// Student-level assignment: entries[i][s] in [0,1], rows sum to 1 when
/// complete.
struct StudentAssignment {
  std::vector<std::vector<Rational>> entries;  // students x (schools + phi)

  static StudentAssignment zero(const Instance& inst);
  Rational& at(int i, int s) { return entries[i][s]; }
  const Rational& at(int i, int s) const { return entries[i][s]; }
  Rational row_sum(int i) const;
  bool operator==(const StudentAssignment&) const = default;
};

enum class Direction { Lower, Upper };

struct Violation {
  int constraint;  // index into Instance::constraints
  Direction direction;
  Rational magnitude;  // > 0, exact exceedance
};

using ViolationReport = std::vector<Violation>;

/// Aggregates a student assignment into its unique type-assignment.
TypeAssignment type_profile(const StudentAssignment& x, const Instance& inst);

/// Checks y against per-constraint quota tables (parallel to
/// inst.constraints) and reports every violated bound with its exact
/// exceedance.
ViolationReport check_feasible(const TypeAssignment& y,
                               const std::vector<Rational>& q_lower,
                               const std::vector<Rational>& q_upper,
                               const Instance& inst);

/// Same, against the instance's original quotas.
ViolationReport check_feasible(const TypeAssignment& y, const Instance& inst);

}  // namespace dcm
