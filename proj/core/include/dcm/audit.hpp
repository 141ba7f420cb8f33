#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dcm/assignment.hpp"
#include "dcm/instance.hpp"

namespace dcm {

struct AuditReport {
  std::string property;
  bool holds = true;
  std::string witness;  // human-readable counterexample when violated

  // Machine-checkable witness payloads, present when violated.
  std::optional<int> witness_student;
  std::optional<std::vector<int>> witness_misreport;   // preference permutation
  std::optional<std::vector<Rational>> witness_row;    // dominating row
  std::optional<std::vector<int>> witness_allocation;  // dominating allocation
  std::optional<StudentAssignment> witness_assignment;
};

struct AuditLimits {
  long max_allocations = 1'000'000;  // exhaustive Pareto search cap
  int max_misreport_schools = 4;     // misreport enumeration cap (m! reruns)
};

/// Weak stochastic dominance of row a over row b under a strict preference
/// order (prefix sums over strict upper sets).
bool sd_dominates(const std::vector<Rational>& a, const std::vector<Rational>& b,
                  const std::vector<int>& pref_order);

/// Within-type envy-freeness of a fractional assignment.
AuditReport check_envy_free(const StudentAssignment& x, const Instance& inst);

/// Ordinal efficiency via a single surplus LP over feasible assignments that
/// weakly dominate x for every student.
AuditReport check_ordinal_efficiency(const StudentAssignment& x, const Instance& inst);

/// Exhaustive Pareto check of an integral allocation against the given
/// quota tables. Throws SearchTooLarge above the cap.
AuditReport check_pareto(const std::vector<int>& alloc, const Instance& inst,
                         const std::vector<Rational>& q_lower,
                         const std::vector<Rational>& q_upper,
                         const AuditLimits& limits = {});

/// Strategyproofness of serial dictatorship with dynamic menus under a fixed
/// order: full misreport enumeration per student.
AuditReport check_strategyproof(const Instance& inst, const std::vector<int>& order,
                                const AuditLimits& limits = {});

/// Weak strategyproofness of the generalized eating mechanism.
AuditReport check_weak_sp(const Instance& inst, const AuditLimits& limits = {});

/// Statistical symmetry of randomized serial dictatorship: same-type,
/// same-preference students see empirical assignment frequencies within
/// 4 * sqrt(ln(n_seeds) / n_seeds) of each other.
AuditReport check_rsd_symmetry(const Instance& inst, long n_seeds,
                               unsigned long long base_seed = 0);

}  // namespace dcm
