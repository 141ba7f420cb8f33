#include "dcm/instance.hpp"

#include <algorithm>
#include <set>

#include "dcm/errors.hpp"

namespace dcm {

long Instance::total_students() const {
  long n = 0;
  for (long c : type_counts) n += c;
  return n;
}

int Instance::school_index(const std::string& name) const {
  if (name == "phi") return phi();
  for (int s = 0; s < num_schools(); ++s)
    if (schools[s] == name) return s;
  return -1;
}

int Instance::type_index(const std::string& name) const {
  for (int t = 0; t < num_types(); ++t)
    if (types[t] == name) return t;
  return -1;
}

int Instance::student_index(const std::string& id) const {
  for (int i = 0; i < num_students(); ++i)
    if (students[i].id == id) return i;
  return -1;
}

std::vector<int> Instance::effective_prefs(int student) const {
  std::vector<int> order = students[student].prefs;
  order.push_back(phi());
  return order;
}

void Instance::validate() const {
  const int m = num_schools();
  const int k = num_types();

  if (types.size() != type_counts.size())
    throw ValidationError("types and type_counts differ in length");
  for (int t = 0; t < k; ++t)
    if (type_counts[t] <= 0)
      throw ValidationError("type '" + types[t] + "' has non-positive count");
  {
    std::set<std::string> seen(schools.begin(), schools.end());
    if (static_cast<int>(seen.size()) != m)
      throw ValidationError("duplicate school id");
    if (seen.count("phi"))
      throw ValidationError("'phi' is reserved for the outside option");
  }
  {
    std::set<std::string> seen(types.begin(), types.end());
    if (static_cast<int>(seen.size()) != k) throw ValidationError("duplicate type id");
  }

  std::set<std::pair<int, std::vector<int>>> seen_constraints;
  for (const auto& c : constraints) {
    if (c.school < 0 || c.school >= m)
      throw ValidationError("constraint references unknown or outside school");
    if (c.types.empty()) throw ValidationError("constraint with empty type subset");
    std::vector<int> sorted = c.types;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ValidationError("constraint with repeated type");
    for (int t : sorted)
      if (t < 0 || t >= k) throw ValidationError("constraint references unknown type");
    if (!seen_constraints.insert({c.school, sorted}).second)
      throw ValidationError("duplicate (school, type-subset) constraint at school '" +
                            schools[c.school] + "'");
    if (c.lower > c.upper)
      throw ValidationError("constraint at school '" + schools[c.school] +
                            "' has lower > upper");
    if (c.lower < 0)
      throw ValidationError("constraint at school '" + schools[c.school] +
                            "' has negative lower bound");
  }

  std::vector<long> counted(k, 0);
  std::set<std::string> ids;
  for (const auto& st : students) {
    if (!ids.insert(st.id).second)
      throw ValidationError("duplicate student id '" + st.id + "'");
    if (st.type < 0 || st.type >= k)
      throw ValidationError("student '" + st.id + "' has unknown type");
    ++counted[st.type];
    if (static_cast<int>(st.prefs.size()) != m)
      throw ValidationError("student '" + st.id +
                            "' prefs must rank every regular school");
    std::vector<bool> hit(m, false);
    for (int s : st.prefs) {
      if (s < 0 || s >= m)
        throw ValidationError("student '" + st.id + "' prefs reference unknown school");
      if (hit[s])
        throw ValidationError("student '" + st.id + "' prefs repeat a school");
      hit[s] = true;
    }
  }
  for (int t = 0; t < k; ++t)
    if (counted[t] != type_counts[t])
      throw ValidationError("type '" + types[t] + "' count " +
                            std::to_string(type_counts[t]) + " but " +
                            std::to_string(counted[t]) + " students have it");
}

}  // namespace dcm
