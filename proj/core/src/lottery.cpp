#include "dcm/lottery.hpp"

#include <random>

#include "dcm/errors.hpp"
#include "dcm/flows.hpp"

namespace dcm {

bool RoundingPolytope::contains(const std::vector<int>& alloc,
                                const Instance& inst) const {
  std::vector<std::vector<long>> count(inst.num_types(),
                                       std::vector<long>(inst.num_schools(), 0));
  long at_phi = 0;
  for (int i = 0; i < inst.num_students(); ++i) {
    const int s = alloc[i];
    if (s == inst.phi())
      ++at_phi;
    else
      ++count[inst.students[i].type][s];
  }
  for (int t = 0; t < inst.num_types(); ++t)
    for (int s = 0; s < inst.num_schools(); ++s)
      if (count[t][s] < lower[t][s] || count[t][s] > upper[t][s]) return false;
  return at_phi >= phi_lower && at_phi <= phi_upper;
}

RoundingPolytope build_polytope(const StudentAssignment& x, const Instance& inst) {
  for (int i = 0; i < inst.num_students(); ++i)
    if (x.row_sum(i) != 1)
      throw ContractError("assignment rows must sum to 1");

  RoundingPolytope p;
  p.lower.assign(inst.num_types(), std::vector<long>(inst.num_schools(), 0));
  p.upper.assign(inst.num_types(), std::vector<long>(inst.num_schools(), 0));
  for (int t = 0; t < inst.num_types(); ++t)
    for (int s = 0; s < inst.num_schools(); ++s) {
      Rational mass(0);
      for (int i = 0; i < inst.num_students(); ++i)
        if (inst.students[i].type == t) mass += x.at(i, s);
      p.lower[t][s] = rat_floor(mass).get_si();
      p.upper[t][s] = rat_ceil(mass).get_si();
    }
  Rational phi_mass(0);
  for (int i = 0; i < inst.num_students(); ++i) phi_mass += x.at(i, inst.phi());
  p.phi_lower = rat_floor(phi_mass).get_si();
  p.phi_upper = rat_ceil(phi_mass).get_si();
  return p;
}

ApproxFeasibilityCert certify_approx_feasible(const std::vector<int>& alloc,
                                              const Instance& inst,
                                              const Rational& opt) {
  ApproxFeasibilityCert cert;
  long regular = 0;
  for (int s : alloc)
    if (s != inst.phi()) ++regular;
  cert.regular_assigned = regular;

  const Rational limit(inst.num_types());
  for (const auto& c : inst.constraints) {
    long mass = 0;
    for (int i = 0; i < inst.num_students(); ++i)
      if (alloc[i] == c.school)
        for (int t : c.types)
          if (t == inst.students[i].type) ++mass;
    Rational violation(0);
    if (Rational(mass) > c.upper) violation = Rational(mass) - c.upper;
    if (Rational(mass) < c.lower) violation = c.lower - Rational(mass);
    if (violation > limit)
      throw ApproxFeasibilityViolated("quota violated by more than the type count");
    cert.violations.push_back(violation);
  }
  if (Rational(regular) < rat_floor(opt))
    throw ApproxFeasibilityViolated("fewer than floor(OPT) students at regular schools");
  return cert;
}

namespace {

bool assignment_is_integral(const StudentAssignment& x) {
  for (const auto& row : x.entries)
    for (const auto& v : row)
      if (v != 0 && v != 1) return false;
  return true;
}

std::vector<int> to_allocation(const StudentAssignment& x, const Instance& inst) {
  std::vector<int> alloc(inst.num_students(), -1);
  for (int i = 0; i < inst.num_students(); ++i)
    for (int s = 0; s < inst.num_columns(); ++s)
      if (x.at(i, s) == 1) alloc[i] = s;
  return alloc;
}

}  // namespace

Lottery decompose(const StudentAssignment& x, const Instance& inst,
                  const Rational& opt) {
  const RoundingPolytope original = build_polytope(x, inst);

  Lottery lottery;
  StudentAssignment residual = x;
  Rational scale(1);  // product of (1 - lambda) so far

  const int n = inst.num_students();
  const int cols = inst.num_columns();
  long rounds = 0;
  const long round_budget = static_cast<long>(n) * cols + 1;

  while (!assignment_is_integral(residual)) {
    if (++rounds > round_budget)
      throw InternalInvariantError("vertex peeling failed to terminate");

    // Vertex search runs against the floor/ceil box of the current residual
    // (a sub-box of the original polytope), which guarantees a positive step.
    const RoundingPolytope box = build_polytope(residual, inst);
    std::vector<std::vector<bool>> support(n, std::vector<bool>(cols, false));
    for (int i = 0; i < n; ++i)
      for (int s = 0; s < cols; ++s) support[i][s] = residual.at(i, s) > 0;
    const std::vector<int> vertex = integral_point_in_polytope(box, support, inst);
    if (!original.contains(vertex, inst))
      throw InternalInvariantError("peeled vertex left the rounding polytope");

    // Largest lambda keeping (residual - lambda * vertex) / (1 - lambda)
    // inside the residual's box.
    Rational lambda(-1);
    auto tighten = [&lambda](const Rational& cand) {
      if (lambda < 0 || cand < lambda) lambda = cand;
    };
    for (int i = 0; i < n; ++i) tighten(residual.at(i, vertex[i]));
    std::vector<std::vector<long>> count(inst.num_types(),
                                         std::vector<long>(inst.num_schools(), 0));
    long at_phi = 0;
    for (int i = 0; i < n; ++i) {
      if (vertex[i] == inst.phi())
        ++at_phi;
      else
        ++count[inst.students[i].type][vertex[i]];
    }
    for (int t = 0; t < inst.num_types(); ++t)
      for (int s = 0; s < inst.num_schools(); ++s) {
        Rational mass(0);
        for (int i = 0; i < n; ++i)
          if (inst.students[i].type == t) mass += residual.at(i, s);
        const long k = count[t][s];
        if (k > box.lower[t][s])
          tighten((mass - Rational(box.lower[t][s])) / Rational(k - box.lower[t][s]));
        if (k < box.upper[t][s])
          tighten((Rational(box.upper[t][s]) - mass) / Rational(box.upper[t][s] - k));
      }
    {
      Rational mass(0);
      for (int i = 0; i < n; ++i) mass += residual.at(i, inst.phi());
      if (at_phi > box.phi_lower)
        tighten((mass - Rational(box.phi_lower)) / Rational(at_phi - box.phi_lower));
      if (at_phi < box.phi_upper)
        tighten((Rational(box.phi_upper) - mass) / Rational(box.phi_upper - at_phi));
    }
    if (!(lambda > 0 && lambda < 1))
      throw InternalInvariantError("peeling step size must lie in (0, 1)");

    lottery.push_back({scale * lambda, vertex});
    for (int i = 0; i < n; ++i)
      for (int s = 0; s < cols; ++s) {
        Rational v = residual.at(i, s);
        if (vertex[i] == s) v -= lambda;
        residual.at(i, s) = v / (Rational(1) - lambda);
      }
    scale *= Rational(1) - lambda;
  }

  lottery.push_back({scale, to_allocation(residual, inst)});
  if (!original.contains(lottery.back().allocation, inst))
    throw InternalInvariantError("terminal residual left the rounding polytope");

  // Certificates and the exact-expectation identity.
  Rational total(0);
  StudentAssignment expectation = StudentAssignment::zero(inst);
  for (const auto& entry : lottery) {
    certify_approx_feasible(entry.allocation, inst, opt);
    total += entry.weight;
    for (int i = 0; i < n; ++i)
      expectation.at(i, entry.allocation[i]) += entry.weight;
  }
  if (total != 1) throw InternalInvariantError("lottery weights must sum to 1");
  if (!(expectation == x))
    throw InternalInvariantError("lottery expectation differs from the input");
  return lottery;
}

const LotteryEntry& sample(const Lottery& lottery, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  // 64-bit dyadic draw compared against the exact cumulative weights.
  const Rational u = rat(static_cast<long>(rng() >> 11), 1L << 53);
  Rational cumulative(0);
  for (const auto& entry : lottery) {
    cumulative += entry.weight;
    if (u < cumulative) return entry;
  }
  return lottery.back();
}

}  // namespace dcm
