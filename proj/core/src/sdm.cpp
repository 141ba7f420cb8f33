#include "dcm/sdm.hpp"

#include <algorithm>
#include <random>

#include "dcm/errors.hpp"
#include "dcm/lp.hpp"
#include "dcm/opt.hpp"

namespace dcm {

std::pair<std::vector<Rational>, std::vector<Rational>> SdmState::adjusted_quotas(
    const Instance& inst) const {
  std::vector<Rational> lo, hi;
  lo.reserve(inst.constraints.size());
  hi.reserve(inst.constraints.size());
  for (const auto& c : inst.constraints) {
    const Rational d = delta.subset_mass(c.types, c.school);
    lo.push_back(c.lower + d);
    hi.push_back(c.upper + d);
  }
  return {std::move(lo), std::move(hi)};
}

long SdmResult::regular_assigned(const Instance& inst) const {
  long count = 0;
  for (int s : allocation)
    if (s != inst.phi()) ++count;
  return count;
}

namespace {

// The menu program for the current state: remaining mass x completing y while staying
// allocative-efficient and feasible for the adjusted quotas.
LpProblem build_lp2(const SdmState& state, const Instance& inst) {
  LpProblem p;
  const int cols = inst.num_columns();
  for (int t = 0; t < inst.num_types(); ++t)
    for (int s = 0; s < cols; ++s) p.add_variable();

  LinearForm eff;
  Rational assigned_regular(0);
  for (int t = 0; t < inst.num_types(); ++t)
    for (int s = 0; s < inst.num_schools(); ++s) {
      eff[type_var(inst, t, s)] = 1;
      assigned_regular += state.y.at(t, s);
    }
  p.add_constraint(std::move(eff), Relation::GreaterEq, state.opt - assigned_regular);

  for (const auto& c : inst.constraints) {
    const Rational shift =
        state.delta.subset_mass(c.types, c.school) - state.y.subset_mass(c.types, c.school);
    LinearForm lo, hi;
    for (int t : c.types) {
      lo[type_var(inst, t, c.school)] = 1;
      hi[type_var(inst, t, c.school)] = 1;
    }
    p.add_constraint(std::move(hi), Relation::LessEq, c.upper + shift);
    p.add_constraint(std::move(lo), Relation::GreaterEq, c.lower + shift);
  }
  for (int t = 0; t < inst.num_types(); ++t) {
    LinearForm form;
    for (int s = 0; s < cols; ++s) form[type_var(inst, t, s)] = 1;
    p.add_constraint(std::move(form), Relation::Equal,
                     Rational(inst.type_counts[t]) - state.y.row_sum(t));
  }
  return p;
}

int find_partial(const SdmState& state, int student) {
  for (size_t k = 0; k < state.partials.size(); ++k)
    if (state.partials[k].student == student) return static_cast<int>(k);
  return -1;
}

}  // namespace

Rational f_value(const SdmState& state, const Instance& inst, int t_hat, int s_hat) {
  LpProblem p = build_lp2(state, inst);
  p.set_objective(Sense::Maximize, {{type_var(inst, t_hat, s_hat), Rational(1)}});
  const LpOutcome out = solve(p);
  if (out.status == LpOutcome::Status::Infeasible)
    throw InternalInvariantError("menu program infeasible between steps");
  if (out.status == LpOutcome::Status::Unbounded)
    throw InternalInvariantError("menu program unbounded");
  return out.value;
}

StepOutcome assignment_step(SdmState& state, const Instance& inst, int student) {
  if (state.processed.count(student))
    throw ContractError("student already processed");
  state.processed.insert(student);
  const int t = inst.students[student].type;

  for (int s : inst.effective_prefs(student)) {
    const Rational f = f_value(state, inst, t, s);
    if (f >= 1) {
      state.y.at(t, s) += 1;
      return {s, false, Rational(1)};
    }
    if (f > 0) {
      for (const auto& part : state.partials)
        if (inst.students[part.student].type == t)
          throw InternalInvariantError("two partial students of one type");
      state.partials.push_back({student, s, Rational(1) - f});
      state.y.at(t, s) += f;
      return {s, true, f};
    }
  }
  throw InternalInvariantError("no school admits the student, yet the menu program is feasible");
}

void apply_js_updates(SdmState& state, const Instance& inst, int j, int s,
                      std::vector<SdmEvent>* trace) {
  const int k = find_partial(state, j);
  if (k < 0) throw ContractError("student is not partially assigned");
  PartialStudent& part = state.partials[k];
  if (s == part.school) throw ContractError("resolution school equals s_j");
  const int t = inst.students[j].type;

  const Rational f = f_value(state, inst, t, s);
  if (!(f > 0 && f < 1)) throw ContractError("school is not critical for the type");

  const Rational rho = std::min(f, part.remainder);
  state.delta.at(t, s) -= rho;
  state.delta.at(t, part.school) += rho;
  state.y.at(t, part.school) += rho;
  part.remainder -= rho;

  if (rat_abs(state.delta.at(t, s)) > 1 || rat_abs(state.delta.at(t, part.school)) > 1)
    throw InternalInvariantError("per-cell quota adjustment exceeds 1");

  const bool resolved = part.remainder == 0;
  if (trace) {
    auto [lo, hi] = state.adjusted_quotas(inst);
    trace->push_back(UpdateEvent{j, s, rho, resolved, std::move(lo), std::move(hi)});
  }
  if (resolved) state.partials.erase(state.partials.begin() + k);
}

void resolution_step(SdmState& state, const Instance& inst,
                     std::vector<SdmEvent>* trace) {
  for (;;) {
    bool fired = false;
    for (size_t k = 0; k < state.partials.size() && !fired; ++k) {
      const PartialStudent part = state.partials[k];
      const int t = inst.students[part.student].type;
      for (int s = 0; s < inst.num_columns() && !fired; ++s) {
        if (s == part.school) continue;
        const Rational f = f_value(state, inst, t, s);
        if (f > 0 && f < 1) {
          apply_js_updates(state, inst, part.student, s, trace);
          fired = true;
        }
      }
    }
    if (!fired) return;
  }
}

std::vector<int> available_menu(const SdmState& state, const Instance& inst, int t) {
  std::vector<int> menu;
  for (int s = 0; s < inst.num_columns(); ++s)
    if (f_value(state, inst, t, s) > 0) menu.push_back(s);
  return menu;
}

SdmResult run_sdm(const Instance& inst, const std::vector<int>& order) {
  const int n = inst.num_students();
  {
    std::vector<bool> hit(n, false);
    if (static_cast<int>(order.size()) != n)
      throw ContractError("order must be a permutation of all students");
    for (int i : order) {
      if (i < 0 || i >= n || hit[i])
        throw ContractError("order must be a permutation of all students");
      hit[i] = true;
    }
  }

  SdmState state{TypeAssignment::zero(inst), TypeAssignment::zero(inst), {}, {},
                 compute_opt(inst)};
  SdmResult result;
  result.opt = state.opt;
  result.order = order;
  result.allocation.assign(n, inst.phi());

  for (int i : order) {
    const StepOutcome outcome = assignment_step(state, inst, i);
    result.allocation[i] = outcome.school;
    result.trace.push_back(
        AssignEvent{i, outcome.school, outcome.partial, outcome.fraction});
    resolution_step(state, inst, &result.trace);
  }

  if (!state.partials.empty())
    throw InternalInvariantError("partial students remain at termination");
  for (int t = 0; t < inst.num_types(); ++t) {
    Rational net(0);
    for (int s = 0; s < inst.num_columns(); ++s) {
      net += state.delta.at(t, s);
      if (state.y.at(t, s) < 0)
        throw InternalInvariantError("negative assignment mass");
    }
    if (net != 0) throw InternalInvariantError("delta rows must sum to zero");
  }

  result.y = std::move(state.y);
  result.delta = std::move(state.delta);
  return result;
}

std::vector<int> shuffled_order(int n, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng() % static_cast<unsigned long long>(i + 1));
    std::swap(order[i], order[j]);
  }
  return order;
}

SdmResult run_sdm_seeded(const Instance& inst, unsigned long long seed) {
  return run_sdm(inst, shuffled_order(inst.num_students(), seed));
}

}  // namespace dcm
