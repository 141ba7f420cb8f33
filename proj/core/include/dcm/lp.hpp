#pragma once

#include <map>
#include <string>
#include <vector>

#include "dcm/rational.hpp"

namespace dcm {

enum class Relation { LessEq, GreaterEq, Equal };
enum class Sense { Maximize, Minimize };

/// Sparse linear form over declared variables.
using LinearForm = std::map<int, Rational>;

struct LpConstraint {
  LinearForm form;
  Relation relation;
  Rational rhs;
};

/// Carrier for exact LPs. Variables are nonnegative unless declared free.
class LpProblem {
 public:
  int add_variable(const std::string& name = {}, bool free = false);
  void add_constraint(LinearForm form, Relation rel, Rational rhs);
  void set_objective(Sense sense, LinearForm form);

  int num_vars() const { return static_cast<int>(free_.size()); }
  const std::vector<LpConstraint>& constraints() const { return constraints_; }
  bool is_free(int v) const { return free_[v]; }
  Sense sense() const { return sense_; }
  const LinearForm& objective() const { return objective_; }
  const std::string& var_name(int v) const { return names_[v]; }

 private:
  std::vector<bool> free_;
  std::vector<std::string> names_;
  std::vector<LpConstraint> constraints_;
  Sense sense_ = Sense::Maximize;
  LinearForm objective_;
};

struct LpOutcome {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status;
  Rational value;                // meaningful for Optimal
  std::vector<Rational> point;   // per declared variable, for Optimal

  bool optimal() const { return status == Status::Optimal; }
};

/// Two-phase primal simplex over exact rationals with Bland's anti-cycling
/// pivot rule. Deterministic: identical problems yield identical outcomes.
LpOutcome solve(const LpProblem& p);

/// Phase-1 feasibility test only.
bool feasible(const LpProblem& p);

}  // namespace dcm
