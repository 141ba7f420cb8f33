#pragma once

#include <string>

#include "dcm/instance.hpp"

namespace dcm {

enum class ConstraintStyle { Pairs, Laminar, RandomSubsets };

ConstraintStyle constraint_style_from_name(const std::string& name);

struct GenParams {
  unsigned long long seed = 0;
  int n_students = 4;
  int n_schools = 2;
  int n_types = 2;
  ConstraintStyle style = ConstraintStyle::Pairs;
  /// 0 = loose bounds, 1 = tight bounds around a uniform split.
  double bound_tightness = 0.5;
  int max_retries = 200;
  /// Laminar style additionally forces integral bounds only; set this to
  /// force every fractional optimum to be integral-friendly for the laminar
  /// fast-path tests.
};

/// Deterministic seeded instance generator. Retries (re-deriving all random
/// choices from the stream) until the fractional relaxation is feasible;
/// throws InfeasibleInstance after max_retries failures.
Instance gen_instance(const GenParams& params);

}  // namespace dcm
