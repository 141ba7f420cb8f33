#include "dcm/assignment.hpp"

#include "dcm/errors.hpp"

namespace dcm {

TypeAssignment TypeAssignment::zero(const Instance& inst) {
  TypeAssignment y;
  y.entries.assign(inst.num_types(),
                   std::vector<Rational>(inst.num_columns(), Rational(0)));
  return y;
}

Rational TypeAssignment::row_sum(int t) const {
  Rational sum(0);
  for (const auto& v : entries[t]) sum += v;
  return sum;
}

Rational TypeAssignment::subset_mass(const std::vector<int>& types, int s) const {
  Rational sum(0);
  for (int t : types) sum += entries[t][s];
  return sum;
}

StudentAssignment StudentAssignment::zero(const Instance& inst) {
  StudentAssignment x;
  x.entries.assign(inst.num_students(),
                   std::vector<Rational>(inst.num_columns(), Rational(0)));
  return x;
}

Rational StudentAssignment::row_sum(int i) const {
  Rational sum(0);
  for (const auto& v : entries[i]) sum += v;
  return sum;
}

TypeAssignment type_profile(const StudentAssignment& x, const Instance& inst) {
  if (x.entries.size() != static_cast<size_t>(inst.num_students()))
    throw ValidationError("assignment rows do not match instance students");
  TypeAssignment y = TypeAssignment::zero(inst);
  for (int i = 0; i < inst.num_students(); ++i) {
    if (x.entries[i].size() != static_cast<size_t>(inst.num_columns()))
      throw ValidationError("assignment columns do not match instance schools");
    const int t = inst.students[i].type;
    for (int s = 0; s < inst.num_columns(); ++s) y.entries[t][s] += x.entries[i][s];
  }
  return y;
}

ViolationReport check_feasible(const TypeAssignment& y,
                               const std::vector<Rational>& q_lower,
                               const std::vector<Rational>& q_upper,
                               const Instance& inst) {
  if (q_lower.size() != inst.constraints.size() ||
      q_upper.size() != inst.constraints.size())
    throw ValidationError("quota tables do not match instance constraints");
  ViolationReport report;
  for (size_t c = 0; c < inst.constraints.size(); ++c) {
    const Rational mass = y.subset_mass(inst.constraints[c].types, inst.constraints[c].school);
    if (mass < q_lower[c])
      report.push_back({static_cast<int>(c), Direction::Lower, q_lower[c] - mass});
    if (mass > q_upper[c])
      report.push_back({static_cast<int>(c), Direction::Upper, mass - q_upper[c]});
  }
  return report;
}

ViolationReport check_feasible(const TypeAssignment& y, const Instance& inst) {
  std::vector<Rational> lo, hi;
  lo.reserve(inst.constraints.size());
  hi.reserve(inst.constraints.size());
  for (const auto& c : inst.constraints) {
    lo.push_back(c.lower);
    hi.push_back(c.upper);
  }
  return check_feasible(y, lo, hi, inst);
}

}  // namespace dcm
