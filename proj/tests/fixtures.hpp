#pragma once

#include <string>

#include "dcm/instance.hpp"
#include "dcm/io.hpp"

namespace fixtures {

inline std::string path(const std::string& name) {
  return std::string(DCM_FIXTURE_DIR) + "/" + name;
}

inline dcm::Instance load(const std::string& name) {
  return dcm::io::parse_instance(path(name));
}

/// Two schools; three students of distinct types; every type pair bounded
/// by [1, 2] at both schools. Unique fractional optimum is uniform 1/2.
inline dcm::Instance pairwise_three_types() { return load("pairwise_three_types.json"); }

/// Two schools, seven students over five types; pairwise [1,1] quotas force
/// half shares; one student ends at the outside option.
inline dcm::Instance seven_students() { return load("seven_students.json"); }

/// Three schools; two students of a shared type plus three auxiliary types
/// pinned to half shares at s1 and s2; s3 unconstrained.
inline dcm::Instance impossibility() { return load("impossibility.json"); }

/// One school, one seat, two identical students.
inline dcm::Instance twins() { return load("twins.json"); }

/// One school; overlapping pair quotas make many Pareto-efficient outcomes
/// leave students unassigned.
inline dcm::Instance overlap_capacity() { return load("overlap_capacity.json"); }

}  // namespace fixtures
