#pragma once

#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "dcm/assignment.hpp"
#include "dcm/instance.hpp"
#include "dcm/rational.hpp"

namespace dcm {

/// A student whose assignment to `school` is not yet fully resolved.
struct PartialStudent {
  int student;
  int school;          // s_j: the school she will end up at
  Rational remainder;  // r_j in (0, 1]
};

/// Running state of serial dictatorship with dynamic menus.
struct SdmState {
  TypeAssignment y;
  TypeAssignment delta;               // the quota adjustment vector
  std::vector<PartialStudent> partials;  // processing order
  std::set<int> processed;
  Rational opt;

  /// Adjusted quota tables [lower + delta_R, upper + delta_R], parallel to
  /// inst.constraints.
  std::pair<std::vector<Rational>, std::vector<Rational>> adjusted_quotas(
      const Instance& inst) const;
};

struct AssignEvent {
  int student;
  int school;
  bool partial;
  Rational fraction;  // 1 for full assignments
};

struct UpdateEvent {
  int student;  // j
  int school;   // the critical school s used for the transfer
  Rational rho;
  bool resolved;                       // r_j hit zero
  std::vector<Rational> adjusted_lower;  // snapshot after the update
  std::vector<Rational> adjusted_upper;
};

using SdmEvent = std::variant<AssignEvent, UpdateEvent>;

struct SdmResult {
  std::vector<int> allocation;  // student -> school (phi() included)
  TypeAssignment y;
  TypeAssignment delta;
  Rational opt;
  std::vector<int> order;
  std::vector<SdmEvent> trace;

  long regular_assigned(const Instance& inst) const;
};

/// Menu-program optimum: the largest mass of type t_hat placeable at s_hat by any
/// completion that stays allocative-efficient and feasible for the adjusted
/// quotas. Throws InternalInvariantError if that program is infeasible.
Rational f_value(const SdmState& state, const Instance& inst, int t_hat, int s_hat);

struct StepOutcome {
  int school;
  bool partial;
  Rational fraction;
};

/// Walks student i's preference list (regular schools then phi) and assigns
/// her fully at the first school with f >= 1, or partially at the first with
/// 0 < f < 1.
StepOutcome assignment_step(SdmState& state, const Instance& inst, int student);

/// One (j,s)-update transfer. Preconditions: j is partially assigned,
/// s != s_j, and 0 < f(t_j, s) < 1.
void apply_js_updates(SdmState& state, const Instance& inst, int j, int s,
                      std::vector<SdmEvent>* trace = nullptr);

/// Applies (j,s)-updates until no partial student has a critical school.
/// Selection order: partial students by processing order, candidate schools
/// by instance index with phi last.
void resolution_step(SdmState& state, const Instance& inst,
                     std::vector<SdmEvent>* trace = nullptr);

/// Diagnostic menu: the schools with f(t, s) > 0, phi last.
std::vector<int> available_menu(const SdmState& state, const Instance& inst, int t);

/// Runs Algorithm "serial dictatorship with dynamic menus" over the given
/// processing order (a permutation of student indices).
SdmResult run_sdm(const Instance& inst, const std::vector<int>& order);

/// Fisher-Yates order from a 64-bit seed, then run_sdm.
SdmResult run_sdm_seeded(const Instance& inst, unsigned long long seed);

std::vector<int> shuffled_order(int n, unsigned long long seed);

}  // namespace dcm
