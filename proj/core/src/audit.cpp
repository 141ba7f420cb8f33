#include "dcm/audit.hpp"

#include <algorithm>
#include <cmath>

#include "dcm/errors.hpp"
#include "dcm/gps.hpp"
#include "dcm/lp.hpp"
#include "dcm/opt.hpp"
#include "dcm/sdm.hpp"

namespace dcm {

bool sd_dominates(const std::vector<Rational>& a, const std::vector<Rational>& b,
                  const std::vector<int>& pref_order) {
  Rational pa(0), pb(0);
  for (int s : pref_order) {
    pa += a[s];
    pb += b[s];
    if (pa < pb) return false;
  }
  return true;
}

AuditReport check_envy_free(const StudentAssignment& x, const Instance& inst) {
  AuditReport report{"within-type envy-freeness"};
  for (int i = 0; i < inst.num_students(); ++i)
    for (int j = 0; j < inst.num_students(); ++j) {
      if (i == j || inst.students[i].type != inst.students[j].type) continue;
      const auto order = inst.effective_prefs(i);
      if (!sd_dominates(x.entries[i], x.entries[j], order)) {
        report.holds = false;
        report.witness_student = i;
        report.witness_row = x.entries[j];
        report.witness = "student " + inst.students[i].id + " envies " +
                         inst.students[j].id;
        return report;
      }
    }
  return report;
}

AuditReport check_ordinal_efficiency(const StudentAssignment& x, const Instance& inst) {
  AuditReport report{"ordinal efficiency"};

  // Surplus LP: z feasible, z weakly sd-dominates x for everyone; maximize
  // the total prefix-sum surplus. A positive optimum certifies dominance.
  LpProblem p = build_student_program(inst);
  LinearForm surplus;
  Rational baseline(0);
  for (int i = 0; i < inst.num_students(); ++i) {
    const auto order = inst.effective_prefs(i);
    LinearForm prefix;
    Rational x_prefix(0);
    for (size_t k = 0; k + 1 < order.size(); ++k) {  // last prefix is all of M
      prefix[student_var(inst, i, order[k])] = 1;
      x_prefix += x.at(i, order[k]);
      LinearForm row = prefix;
      p.add_constraint(std::move(row), Relation::GreaterEq, x_prefix);
      for (const auto& [v, coef] : prefix) surplus[v] += coef;
      baseline += x_prefix;
    }
  }
  p.set_objective(Sense::Maximize, std::move(surplus));
  const LpOutcome out = solve(p);
  if (!out.optimal())
    throw InternalInvariantError("ordinal-efficiency LP must have an optimum");

  if (out.value > baseline) {
    report.holds = false;
    StudentAssignment z = StudentAssignment::zero(inst);
    for (int i = 0; i < inst.num_students(); ++i)
      for (int s = 0; s < inst.num_columns(); ++s)
        z.at(i, s) = out.point[student_var(inst, i, s)];
    report.witness_assignment = std::move(z);
    report.witness = "a feasible assignment stochastically dominates the outcome";
  }
  return report;
}

namespace {

bool pareto_dominates(const std::vector<int>& a, const std::vector<int>& b,
                      const Instance& inst) {
  bool strict = false;
  for (int i = 0; i < inst.num_students(); ++i) {
    const auto order = inst.effective_prefs(i);
    const auto rank = [&order](int s) {
      return std::find(order.begin(), order.end(), s) - order.begin();
    };
    const auto ra = rank(a[i]), rb = rank(b[i]);
    if (ra > rb) return false;
    if (ra < rb) strict = true;
  }
  return strict;
}

bool allocation_feasible(const std::vector<int>& alloc, const Instance& inst,
                         const std::vector<Rational>& q_lower,
                         const std::vector<Rational>& q_upper) {
  for (size_t c = 0; c < inst.constraints.size(); ++c) {
    const auto& con = inst.constraints[c];
    long mass = 0;
    for (int i = 0; i < inst.num_students(); ++i)
      if (alloc[i] == con.school &&
          std::find(con.types.begin(), con.types.end(), inst.students[i].type) !=
              con.types.end())
        ++mass;
    if (Rational(mass) < q_lower[c] || Rational(mass) > q_upper[c]) return false;
  }
  return true;
}

}  // namespace

AuditReport check_pareto(const std::vector<int>& alloc, const Instance& inst,
                         const std::vector<Rational>& q_lower,
                         const std::vector<Rational>& q_upper,
                         const AuditLimits& limits) {
  AuditReport report{"Pareto efficiency"};
  const int n = inst.num_students();
  const int cols = inst.num_columns();

  double combos = 1;
  for (int i = 0; i < n; ++i) combos *= cols;
  if (combos > static_cast<double>(limits.max_allocations))
    throw SearchTooLarge("exhaustive Pareto search exceeds the configured cap");

  std::vector<int> candidate(n, 0);
  for (;;) {
    if (allocation_feasible(candidate, inst, q_lower, q_upper) &&
        pareto_dominates(candidate, alloc, inst)) {
      report.holds = false;
      report.witness_allocation = candidate;
      report.witness = "a feasible allocation Pareto dominates the outcome";
      return report;
    }
    int pos = n - 1;
    while (pos >= 0 && candidate[pos] == cols - 1) candidate[pos--] = 0;
    if (pos < 0) break;
    ++candidate[pos];
  }
  return report;
}

namespace {

std::vector<std::vector<int>> all_permutations(int m) {
  std::vector<int> base(m);
  for (int i = 0; i < m; ++i) base[i] = i;
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return perms;
}

}  // namespace

AuditReport check_strategyproof(const Instance& inst, const std::vector<int>& order,
                                const AuditLimits& limits) {
  AuditReport report{"strategyproofness"};
  if (inst.num_schools() > limits.max_misreport_schools)
    throw SearchTooLarge("misreport enumeration exceeds the configured school cap");

  const SdmResult truthful = run_sdm(inst, order);
  const auto perms = all_permutations(inst.num_schools());

  for (int i = 0; i < inst.num_students(); ++i) {
    const auto true_order = inst.effective_prefs(i);
    const auto rank = [&true_order](int s) {
      return std::find(true_order.begin(), true_order.end(), s) - true_order.begin();
    };
    const auto truthful_rank = rank(truthful.allocation[i]);
    for (const auto& perm : perms) {
      if (perm == inst.students[i].prefs) continue;
      Instance misreported = inst;
      misreported.students[i].prefs = perm;
      const SdmResult outcome = run_sdm(misreported, order);
      if (rank(outcome.allocation[i]) < truthful_rank) {
        report.holds = false;
        report.witness_student = i;
        report.witness_misreport = perm;
        report.witness = "student " + inst.students[i].id +
                         " gains a strictly preferred school by misreporting";
        return report;
      }
    }
  }
  return report;
}

AuditReport check_weak_sp(const Instance& inst, const AuditLimits& limits) {
  AuditReport report{"weak strategyproofness"};
  if (inst.num_schools() > limits.max_misreport_schools)
    throw SearchTooLarge("misreport enumeration exceeds the configured school cap");

  const GpsResult truthful = run_gps(inst);
  const auto perms = all_permutations(inst.num_schools());

  for (int i = 0; i < inst.num_students(); ++i) {
    const auto true_order = inst.effective_prefs(i);
    for (const auto& perm : perms) {
      if (perm == inst.students[i].prefs) continue;
      Instance misreported = inst;
      misreported.students[i].prefs = perm;
      const GpsResult outcome = run_gps(misreported);
      const auto& row = outcome.x.entries[i];
      if (row != truthful.x.entries[i] &&
          sd_dominates(row, truthful.x.entries[i], true_order)) {
        report.holds = false;
        report.witness_student = i;
        report.witness_misreport = perm;
        report.witness_row = row;
        report.witness = "student " + inst.students[i].id +
                         "'s misreport row stochastically dominates her truthful row";
        return report;
      }
    }
  }
  return report;
}

AuditReport check_rsd_symmetry(const Instance& inst, long n_seeds,
                               unsigned long long base_seed) {
  AuditReport report{"randomized-order symmetry"};
  const int n = inst.num_students();
  const int cols = inst.num_columns();

  std::vector<std::vector<long>> hits(n, std::vector<long>(cols, 0));
  for (long seed = 0; seed < n_seeds; ++seed) {
    const SdmResult run = run_sdm_seeded(inst, base_seed + static_cast<unsigned long long>(seed));
    for (int i = 0; i < n; ++i) ++hits[i][run.allocation[i]];
  }

  const double tolerance =
      4.0 * std::sqrt(std::log(static_cast<double>(n_seeds)) /
                      static_cast<double>(n_seeds));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (inst.students[i].type != inst.students[j].type ||
          inst.students[i].prefs != inst.students[j].prefs)
        continue;
      for (int s = 0; s < cols; ++s) {
        const double gap = std::abs(static_cast<double>(hits[i][s] - hits[j][s])) /
                           static_cast<double>(n_seeds);
        if (gap > tolerance) {
          report.holds = false;
          report.witness_student = i;
          report.witness = "students " + inst.students[i].id + " and " +
                           inst.students[j].id + " differ by " + std::to_string(gap) +
                           " at " + inst.school_name(s) + " (tolerance " +
                           std::to_string(tolerance) + ")";
          return report;
        }
      }
    }
  return report;
}

}  // namespace dcm
