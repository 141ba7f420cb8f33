#pragma once

#include <string>
#include <vector>

#include "dcm/rational.hpp"

namespace dcm {

/// One distributional constraint: bounds on the total mass of types in
/// `types` assigned to regular school `school`.
struct QuotaConstraint {
  int school;               // regular school index
  std::vector<int> types;   // sorted, distinct type indices (the subset R)
  Rational lower;
  Rational upper;
};

struct Student {
  std::string id;
  int type;
  std::vector<int> prefs;  // permutation of all regular school indices, best first
};

/// A school choice problem. Regular schools are indexed 0..num_schools()-1;
/// the outside option is the extra column phi() at the end. The outside
/// option carries no constraints and is ranked below every regular school.
class Instance {
 public:
  std::vector<std::string> schools;  // regular school ids, index order
  std::vector<std::string> types;    // type ids, index order
  std::vector<long> type_counts;     // C_t, parallel to types
  std::vector<QuotaConstraint> constraints;
  std::vector<Student> students;

  int num_schools() const { return static_cast<int>(schools.size()); }
  int num_types() const { return static_cast<int>(types.size()); }
  int num_students() const { return static_cast<int>(students.size()); }
  int phi() const { return num_schools(); }
  int num_columns() const { return num_schools() + 1; }  // regular + phi

  long total_students() const;
  std::string school_name(int s) const { return s == phi() ? "phi" : schools[s]; }
  int school_index(const std::string& name) const;  // -1 if unknown, phi() for "phi"
  int type_index(const std::string& name) const;    // -1 if unknown
  int student_index(const std::string& id) const;   // -1 if unknown

  /// Effective preference list of a student: regular prefs then phi.
  std::vector<int> effective_prefs(int student) const;

  /// Throws ValidationError on any model violation (incomplete preference
  /// lists, count mismatches, duplicate (s, R) constraints, lower > upper,
  /// negative lower bounds, unknown ids).
  void validate() const;
};

}  // namespace dcm
