#include "dcm/io.hpp"

#include <algorithm>
#include <fstream>

#include "dcm/errors.hpp"

namespace dcm::io {

Rational rational_from_json(const json& v) {
  if (v.is_number_integer()) return rat(v.get<long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ValidationError(e.what());
    }
  }
  throw ValidationError("expected an integer or a \"p/q\" string, got " + v.dump());
}

json rational_to_json(const Rational& r) {
  if (is_integral(r) && r.get_num().fits_slong_p()) return r.get_num().get_si();
  return rational_str(r);
}

namespace {

const json& require(const json& j, const char* key, const char* where) {
  auto it = j.find(key);
  if (it == j.end())
    throw ValidationError(std::string(where) + ": missing key '" + key + "'");
  return *it;
}

int require_school(const Instance& inst, const std::string& name, const char* where) {
  const int s = inst.school_index(name);
  if (s < 0) throw ValidationError(std::string(where) + ": unknown school '" + name + "'");
  return s;
}

int require_type(const Instance& inst, const std::string& name, const char* where) {
  const int t = inst.type_index(name);
  if (t < 0) throw ValidationError(std::string(where) + ": unknown type '" + name + "'");
  return t;
}

}  // namespace

Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("instance document must be an object");
  Instance inst;

  for (const auto& s : require(j, "schools", "instance")) {
    if (!s.is_string()) throw ValidationError("schools: entries must be strings");
    inst.schools.push_back(s.get<std::string>());
  }

  const json& types = require(j, "types", "instance");
  if (!types.is_object()) throw ValidationError("types: must map type id to count");
  for (const auto& [name, count] : types.items()) {
    if (!count.is_number_integer() || count.get<long>() < 0)
      throw ValidationError("types: count of '" + name + "' must be a non-negative integer");
    inst.types.push_back(name);
    inst.type_counts.push_back(count.get<long>());
  }

  for (const auto& c : require(j, "constraints", "instance")) {
    QuotaConstraint con;
    con.school =
        require_school(inst, require(c, "school", "constraints").get<std::string>(),
                       "constraints");
    for (const auto& t : require(c, "types", "constraints"))
      con.types.push_back(
          require_type(inst, t.get<std::string>(), "constraints"));
    std::sort(con.types.begin(), con.types.end());
    con.lower = rational_from_json(require(c, "lower", "constraints"));
    con.upper = rational_from_json(require(c, "upper", "constraints"));
    inst.constraints.push_back(std::move(con));
  }

  for (const auto& s : require(j, "students", "instance")) {
    Student st;
    st.id = require(s, "id", "students").get<std::string>();
    st.type = require_type(inst, require(s, "type", "students").get<std::string>(),
                           "students");
    for (const auto& p : require(s, "prefs", "students")) {
      const std::string name = p.get<std::string>();
      const int idx = inst.school_index(name);
      if (idx < 0 || idx == inst.phi())
        throw ValidationError("student " + st.id + ": prefs name unknown school '" +
                              name + "'");
      st.prefs.push_back(idx);
    }
    inst.students.push_back(std::move(st));
  }

  inst.validate();
  return inst;
}

json instance_to_json(const Instance& inst) {
  json j;
  j["schools"] = inst.schools;
  json types = json::object();
  for (int t = 0; t < inst.num_types(); ++t) types[inst.types[t]] = inst.type_counts[t];
  j["types"] = std::move(types);
  json cons = json::array();
  for (const auto& c : inst.constraints) {
    json con;
    con["school"] = inst.schools[c.school];
    json names = json::array();
    for (int t : c.types) names.push_back(inst.types[t]);
    con["types"] = std::move(names);
    con["lower"] = rational_to_json(c.lower);
    con["upper"] = rational_to_json(c.upper);
    cons.push_back(std::move(con));
  }
  j["constraints"] = std::move(cons);
  json students = json::array();
  for (const auto& s : inst.students) {
    json st;
    st["id"] = s.id;
    st["type"] = inst.types[s.type];
    json prefs = json::array();
    for (int p : s.prefs) prefs.push_back(inst.schools[p]);
    st["prefs"] = std::move(prefs);
    students.push_back(std::move(st));
  }
  j["students"] = std::move(students);
  return j;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return j;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open file for writing: " + path);
  out << j.dump(2) << '\n';
}

Instance parse_instance(const std::string& path) {
  return instance_from_json(read_json(path));
}

void write_instance(const std::string& path, const Instance& inst) {
  write_json(path, instance_to_json(inst));
}

namespace {

json type_table_to_json(const TypeAssignment& y, const Instance& inst) {
  json table = json::object();
  for (int t = 0; t < inst.num_types(); ++t) {
    json row = json::object();
    for (int s = 0; s < inst.num_columns(); ++s)
      row[inst.school_name(s)] = rational_to_json(y.at(t, s));
    table[inst.types[t]] = std::move(row);
  }
  return table;
}

json allocation_to_json(const std::vector<int>& alloc, const Instance& inst) {
  json out = json::object();
  for (size_t i = 0; i < alloc.size(); ++i)
    out[inst.students[i].id] = inst.school_name(alloc[i]);
  return out;
}

json quota_snapshot_to_json(const std::vector<Rational>& lower,
                            const std::vector<Rational>& upper,
                            const Instance& inst) {
  json rows = json::array();
  for (size_t c = 0; c < inst.constraints.size(); ++c) {
    const auto& con = inst.constraints[c];
    json row;
    row["school"] = inst.schools[con.school];
    json names = json::array();
    for (int t : con.types) names.push_back(inst.types[t]);
    row["types"] = std::move(names);
    row["lower"] = rational_to_json(lower[c]);
    row["upper"] = rational_to_json(upper[c]);
    rows.push_back(std::move(row));
  }
  return rows;
}

json sdm_trace_to_json(const std::vector<SdmEvent>& trace, const Instance& inst) {
  json out = json::array();
  for (const auto& ev : trace) {
    json e;
    if (const auto* a = std::get_if<AssignEvent>(&ev)) {
      e["event"] = a->partial ? "partial-assign" : "assign";
      e["student"] = inst.students[a->student].id;
      e["school"] = inst.school_name(a->school);
      e["fraction"] = rational_to_json(a->fraction);
    } else {
      const auto& u = std::get<UpdateEvent>(ev);
      e["event"] = "update";
      e["student"] = inst.students[u.student].id;
      e["school"] = inst.school_name(u.school);
      e["rho"] = rational_to_json(u.rho);
      e["resolved"] = u.resolved;
      e["adjusted_quotas"] =
          quota_snapshot_to_json(u.adjusted_lower, u.adjusted_upper, inst);
    }
    out.push_back(std::move(e));
  }
  return out;
}

json fractional_matrix_to_json(const StudentAssignment& x, const Instance& inst) {
  json m = json::object();
  for (int i = 0; i < inst.num_students(); ++i) {
    json row = json::object();
    for (int s = 0; s < inst.num_columns(); ++s)
      row[inst.school_name(s)] = rational_to_json(x.at(i, s));
    m[inst.students[i].id] = std::move(row);
  }
  return m;
}

}  // namespace

json sdm_result_to_json(const SdmResult& result, const Instance& inst,
                        std::optional<unsigned long long> seed, bool include_trace) {
  json j;
  j["mechanism"] = "sd";
  if (seed) j["seed"] = *seed;
  json order = json::array();
  for (int i : result.order) order.push_back(inst.students[i].id);
  j["order"] = std::move(order);
  j["opt"] = rational_to_json(result.opt);
  j["allocation"] = allocation_to_json(result.allocation, inst);
  j["regular_assigned"] = result.regular_assigned(inst);
  j["y"] = type_table_to_json(result.y, inst);
  j["delta"] = type_table_to_json(result.delta, inst);
  if (include_trace) j["trace"] = sdm_trace_to_json(result.trace, inst);
  return j;
}

json gps_result_to_json(const GpsResult& result, const Instance& inst,
                        bool include_trace) {
  json j;
  j["mechanism"] = "gps";
  j["opt"] = rational_to_json(result.opt);
  j["matrix"] = fractional_matrix_to_json(result.x, inst);
  if (include_trace) {
    json trace = json::array();
    for (const auto& ev : result.trace) {
      json e;
      e["time"] = rational_to_json(ev.time);
      json switches = json::array();
      for (const auto& sw : ev.switches) {
        json s;
        s["student"] = inst.students[sw.student].id;
        s["from"] = inst.school_name(sw.from);
        s["to"] = inst.school_name(sw.to);
        switches.push_back(std::move(s));
      }
      e["switches"] = std::move(switches);
      trace.push_back(std::move(e));
    }
    j["trace"] = std::move(trace);
  }
  return j;
}

json lottery_to_json(const Lottery& lottery, const Instance& inst) {
  json out = json::array();
  for (const auto& entry : lottery) {
    json e;
    e["weight"] = rational_to_json(entry.weight);
    e["allocation"] = allocation_to_json(entry.allocation, inst);
    out.push_back(std::move(e));
  }
  return out;
}

StudentAssignment fractional_matrix_from_result(const json& j, const Instance& inst) {
  const json& m = require(j, "matrix", "result");
  StudentAssignment x = StudentAssignment::zero(inst);
  for (const auto& [id, row] : m.items()) {
    const int i = inst.student_index(id);
    if (i < 0) throw ValidationError("result matrix: unknown student '" + id + "'");
    for (const auto& [school, value] : row.items()) {
      const int s = inst.school_index(school);
      if (s < 0)
        throw ValidationError("result matrix: unknown school '" + school + "'");
      x.at(i, s) = rational_from_json(value);
    }
  }
  return x;
}

}  // namespace dcm::io
