#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "dcm/assignment.hpp"
#include "dcm/gps.hpp"
#include "dcm/instance.hpp"
#include "dcm/lottery.hpp"
#include "dcm/sdm.hpp"

namespace dcm::io {

using json = nlohmann::ordered_json;

/// Rationals on the wire: plain integers or "p/q" strings; emitted in the
/// canonical lowest-terms form.
Rational rational_from_json(const json& v);
json rational_to_json(const Rational& r);

Instance instance_from_json(const json& j);
json instance_to_json(const Instance& inst);

/// Reads and validates an instance file. Error messages name the offending
/// key or file.
Instance parse_instance(const std::string& path);
void write_instance(const std::string& path, const Instance& inst);

json sdm_result_to_json(const SdmResult& result, const Instance& inst,
                        std::optional<unsigned long long> seed, bool include_trace);
json gps_result_to_json(const GpsResult& result, const Instance& inst,
                        bool include_trace);
json lottery_to_json(const Lottery& lottery, const Instance& inst);

/// Recovers the fractional matrix from a result file written by
/// gps_result_to_json (used to feed a stored run into the lottery).
StudentAssignment fractional_matrix_from_result(const json& j, const Instance& inst);

json read_json(const std::string& path);
void write_json(const std::string& path, const json& j);

}  // namespace dcm::io
