#include "dcm/gps.hpp"

#include <algorithm>

#include "dcm/errors.hpp"
#include "dcm/lp.hpp"
#include "dcm/opt.hpp"

namespace dcm {

namespace {

// The student-level program plus the extendability rows: witness w dominates `floor_at` on regular
// schools and places exactly `opt` mass on regular schools. Domination rows
// for all-zero cells are implied by w >= 0 and omitted.
LpProblem build_witness_lp(const Instance& inst, const Rational& opt,
                           const StudentAssignment& floor_at) {
  LpProblem p = build_student_program(inst);
  LinearForm eff;
  for (int i = 0; i < inst.num_students(); ++i)
    for (int s = 0; s < inst.num_schools(); ++s) eff[student_var(inst, i, s)] = 1;
  p.add_constraint(std::move(eff), Relation::Equal, opt);
  for (int i = 0; i < inst.num_students(); ++i)
    for (int s = 0; s < inst.num_schools(); ++s)
      if (floor_at.at(i, s) > 0)
        p.add_constraint({{student_var(inst, i, s), Rational(1)}}, Relation::GreaterEq,
                         floor_at.at(i, s));
  return p;
}

}  // namespace

bool is_extendable(const Instance& inst, const Rational& opt,
                   const StudentAssignment& y) {
  return feasible(build_witness_lp(inst, opt, y));
}

Rational max_eat_duration(const Instance& inst, const Rational& opt,
                          const EatingState& state) {
  LpProblem p = build_student_program(inst);
  const int c_var = p.add_variable("c");
  LinearForm eff;
  for (int i = 0; i < inst.num_students(); ++i)
    for (int s = 0; s < inst.num_schools(); ++s) eff[student_var(inst, i, s)] = 1;
  p.add_constraint(std::move(eff), Relation::Equal, opt);
  // w_{i,s} - c * theta_{i,s} >= consumed_{i,s} on regular schools.
  for (int i = 0; i < inst.num_students(); ++i)
    for (int s = 0; s < inst.num_schools(); ++s) {
      const bool eating = state.current[i] == s;
      if (!eating && state.x.at(i, s) == 0) continue;
      LinearForm row{{student_var(inst, i, s), Rational(1)}};
      if (eating) row[c_var] = -1;
      p.add_constraint(std::move(row), Relation::GreaterEq, state.x.at(i, s));
    }
  p.add_constraint({{c_var, Rational(1)}}, Relation::LessEq, Rational(1) - state.clock);
  p.set_objective(Sense::Maximize, {{c_var, Rational(1)}});
  const LpOutcome out = solve(p);
  if (!out.optimal())
    throw InternalInvariantError("eating-duration LP must have an optimum");
  return out.value;
}

bool blocked_now(const Instance& inst, const Rational& opt, const EatingState& state,
                 int t, int s) {
  if (s == inst.phi()) return false;
  LpProblem p = build_witness_lp(inst, opt, state.x);
  LinearForm obj;
  Rational consumed(0);
  for (int i = 0; i < inst.num_students(); ++i)
    if (inst.students[i].type == t) {
      obj[student_var(inst, i, s)] = 1;
      consumed += state.x.at(i, s);
    }
  p.set_objective(Sense::Maximize, std::move(obj));
  const LpOutcome out = solve(p);
  if (!out.optimal())
    throw InternalInvariantError("blocking LP must have an optimum");
  return out.value == consumed;
}

GpsResult run_gps(const Instance& inst) {
  const Rational opt = compute_opt(inst);
  const int n = inst.num_students();
  const int phi = inst.phi();

  EatingState state{StudentAssignment::zero(inst), Rational(0), {}, {}};
  state.current.resize(n);
  for (int i = 0; i < n; ++i) state.current[i] = inst.students[i].prefs.front();

  GpsResult result;
  result.opt = opt;

  // Each student switches at most num_columns times; anything beyond that is
  // a stalled loop.
  const long pass_budget = static_cast<long>(n) * (inst.num_columns() + 1) + 4;
  long passes = 0;

  while (state.clock < 1) {
    if (++passes > pass_budget)
      throw InternalInvariantError("eating loop failed to make progress");

    const Rational c = max_eat_duration(inst, opt, state);
    if (c > 0) {
      for (int i = 0; i < n; ++i) state.x.at(i, state.current[i]) += c;
      state.clock += c;
      if (state.clock == 1) break;
    }

    // Blocking pass: query each (type, currently-eaten school) pair once.
    std::set<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      pairs.insert({inst.students[i].type, state.current[i]});
    for (const auto& [t, s] : pairs) {
      if (s == phi || state.blocked.count({t, s})) continue;
      if (blocked_now(inst, opt, state, t, s)) state.blocked.insert({t, s});
    }

    EatingEvent event{state.clock, {}};
    for (int i = 0; i < n; ++i) {
      const int t = inst.students[i].type;
      if (!state.blocked.count({t, state.current[i]})) continue;
      const auto prefs = inst.effective_prefs(i);
      const auto here = std::find(prefs.begin(), prefs.end(), state.current[i]);
      int next = phi;
      for (auto it = here + 1; it != prefs.end(); ++it)
        if (!state.blocked.count({t, *it})) {
          next = *it;
          break;
        }
      event.switches.push_back({i, state.current[i], next});
      state.current[i] = next;
    }
    if (!event.switches.empty()) {
      if (!result.trace.empty() && result.trace.back().time == event.time) {
        auto& prev = result.trace.back().switches;
        prev.insert(prev.end(), event.switches.begin(), event.switches.end());
      } else {
        result.trace.push_back(std::move(event));
      }
    } else if (c == 0) {
      throw InternalInvariantError("eating stalled with nothing to block");
    }
  }

  for (int i = 0; i < n; ++i)
    if (state.x.row_sum(i) != 1)
      throw InternalInvariantError("terminal consumption rows must sum to 1");
  result.x = std::move(state.x);
  return result;
}

}  // namespace dcm
