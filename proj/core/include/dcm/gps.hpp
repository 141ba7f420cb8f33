#pragma once

#include <set>
#include <vector>

#include "dcm/assignment.hpp"
#include "dcm/instance.hpp"
#include "dcm/rational.hpp"

namespace dcm {

/// True iff some feasible student assignment dominates y on every regular
/// school and assigns exactly OPT mass to regular schools.
bool is_extendable(const Instance& inst, const Rational& opt,
                   const StudentAssignment& y);

/// Snapshot of the simultaneous-eating process.
struct EatingState {
  StudentAssignment x;            // consumed shares
  Rational clock;                 // in [0, 1]
  std::vector<int> current;       // student -> school currently eaten
  std::set<std::pair<int, int>> blocked;  // permanently blocked (type, school)
};

/// Largest c >= 0 such that x + c * theta stays extendable, capped by the
/// remaining time 1 - clock. theta is the unit indicator of `current`.
Rational max_eat_duration(const Instance& inst, const Rational& opt,
                          const EatingState& state);

/// True iff no extendability witness can give type t any more mass at s than
/// is already consumed. Always false for the outside option.
bool blocked_now(const Instance& inst, const Rational& opt, const EatingState& state,
                 int t, int s);

struct SwitchRecord {
  int student;
  int from;
  int to;
};

/// One trace event: all switches triggered at a single clock value.
struct EatingEvent {
  Rational time;
  std::vector<SwitchRecord> switches;
};

using EatingTrace = std::vector<EatingEvent>;

struct GpsResult {
  StudentAssignment x;
  EatingTrace trace;
  Rational opt;
};

/// Generalized probabilistic serial: exact event-driven simultaneous eating
/// with extendability-constrained consumption. Deterministic.
GpsResult run_gps(const Instance& inst);

}  // namespace dcm
