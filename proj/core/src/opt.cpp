#include "dcm/opt.hpp"

#include "dcm/errors.hpp"

namespace dcm {

LpProblem build_type_program(const Instance& inst) {
  LpProblem p;
  const int cols = inst.num_columns();
  for (int t = 0; t < inst.num_types(); ++t)
    for (int s = 0; s < cols; ++s)
      p.add_variable("x[" + inst.types[t] + "," + inst.school_name(s) + "]");

  for (const auto& c : inst.constraints) {
    LinearForm form;
    for (int t : c.types) form[type_var(inst, t, c.school)] = 1;
    p.add_constraint(form, Relation::LessEq, c.upper);
    LinearForm form2;
    for (int t : c.types) form2[type_var(inst, t, c.school)] = 1;
    p.add_constraint(std::move(form2), Relation::GreaterEq, c.lower);
  }
  for (int t = 0; t < inst.num_types(); ++t) {
    LinearForm form;
    for (int s = 0; s < cols; ++s) form[type_var(inst, t, s)] = 1;
    p.add_constraint(std::move(form), Relation::Equal, Rational(inst.type_counts[t]));
  }
  LinearForm obj;
  for (int t = 0; t < inst.num_types(); ++t)
    for (int s = 0; s < inst.num_schools(); ++s) obj[type_var(inst, t, s)] = 1;
  p.set_objective(Sense::Maximize, std::move(obj));
  return p;
}

LpProblem build_student_program(const Instance& inst) {
  LpProblem p;
  const int cols = inst.num_columns();
  for (int i = 0; i < inst.num_students(); ++i)
    for (int s = 0; s < cols; ++s)
      p.add_variable("x[" + inst.students[i].id + "," + inst.school_name(s) + "]");

  for (const auto& c : inst.constraints) {
    LinearForm lo, hi;
    for (int i = 0; i < inst.num_students(); ++i) {
      const int t = inst.students[i].type;
      for (int r : c.types)
        if (r == t) {
          hi[student_var(inst, i, c.school)] = 1;
          lo[student_var(inst, i, c.school)] = 1;
        }
    }
    p.add_constraint(std::move(hi), Relation::LessEq, c.upper);
    p.add_constraint(std::move(lo), Relation::GreaterEq, c.lower);
  }
  for (int i = 0; i < inst.num_students(); ++i) {
    LinearForm form;
    for (int s = 0; s < cols; ++s) form[student_var(inst, i, s)] = 1;
    p.add_constraint(std::move(form), Relation::Equal, Rational(1));
  }
  LinearForm obj;
  for (int i = 0; i < inst.num_students(); ++i)
    for (int s = 0; s < inst.num_schools(); ++s) obj[student_var(inst, i, s)] = 1;
  p.set_objective(Sense::Maximize, std::move(obj));
  return p;
}

std::pair<Rational, TypeAssignment> compute_opt_point(const Instance& inst) {
  const LpOutcome out = solve(build_type_program(inst));
  if (out.status == LpOutcome::Status::Infeasible)
    throw InfeasibleInstance("no fractional assignment satisfies the constraints");
  if (out.status == LpOutcome::Status::Unbounded)
    throw InternalInvariantError("allocative-efficiency LP cannot be unbounded");
  TypeAssignment y = TypeAssignment::zero(inst);
  for (int t = 0; t < inst.num_types(); ++t)
    for (int s = 0; s < inst.num_columns(); ++s)
      y.entries[t][s] = out.point[type_var(inst, t, s)];
  return {out.value, std::move(y)};
}

Rational compute_opt(const Instance& inst) { return compute_opt_point(inst).first; }

}  // namespace dcm
