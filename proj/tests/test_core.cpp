#include <doctest.h>

#include "dcm/assignment.hpp"
#include "dcm/errors.hpp"
#include "dcm/instance.hpp"
#include "dcm/io.hpp"
#include "dcm/rational.hpp"
#include "fixtures.hpp"

using namespace dcm;

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/2") == rat(3, 2));
  CHECK(parse_rational("-7") == rat(-7));
  CHECK(rational_str(rat(6, 4)) == "3/2");
  CHECK(rational_str(rat(4, 2)) == "2");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK(rat_floor(rat(-3, 2)) == -2);
  CHECK(rat_ceil(rat(-3, 2)) == -1);
  CHECK(rat_floor(rat(3, 2)) == 1);
  CHECK(rat_ceil(rat(3, 2)) == 2);
}

TEST_CASE("instance validation rejects malformed input") {
  Instance inst = fixtures::pairwise_three_types();
  CHECK_NOTHROW(inst.validate());

  SUBCASE("truncated preference list") {
    inst.students[0].prefs = {0};
    CHECK_THROWS_AS(inst.validate(), ValidationError);
  }
  SUBCASE("duplicate school in prefs") {
    inst.students[0].prefs = {0, 0};
    CHECK_THROWS_AS(inst.validate(), ValidationError);
  }
  SUBCASE("type count mismatch") {
    inst.type_counts[0] = 5;
    CHECK_THROWS_AS(inst.validate(), ValidationError);
  }
  SUBCASE("lower above upper") {
    inst.constraints[0].lower = rat(3);
    CHECK_THROWS_AS(inst.validate(), ValidationError);
  }
  SUBCASE("negative lower bound") {
    inst.constraints[0].lower = rat(-1);
    CHECK_THROWS_AS(inst.validate(), ValidationError);
  }
  SUBCASE("duplicate (school, subset) constraint") {
    inst.constraints.push_back(inst.constraints[0]);
    CHECK_THROWS_AS(inst.validate(), ValidationError);
  }
  SUBCASE("reserved school id") {
    inst.schools[0] = "phi";
    CHECK_THROWS_AS(inst.validate(), ValidationError);
  }
}

TEST_CASE("effective preferences append the outside option") {
  const Instance inst = fixtures::pairwise_three_types();
  CHECK(inst.effective_prefs(0) == std::vector<int>{0, 1, 2});
  CHECK(inst.effective_prefs(2) == std::vector<int>{1, 0, 2});
  CHECK(inst.phi() == 2);
  CHECK(inst.school_name(inst.phi()) == "phi");
}

TEST_CASE("instance JSON round trip is the identity") {
  for (const char* name :
       {"pairwise_three_types.json", "seven_students.json", "impossibility.json",
        "twins.json", "overlap_capacity.json"}) {
    CAPTURE(name);
    const auto j = dcm::io::read_json(fixtures::path(name));
    const Instance inst = dcm::io::instance_from_json(j);
    const auto round = dcm::io::instance_to_json(inst);
    CHECK(dcm::io::instance_from_json(round).students.size() == inst.students.size());
    CHECK(round == dcm::io::instance_to_json(dcm::io::instance_from_json(round)));
  }
}

TEST_CASE("rational wire format accepts integers and p/q strings") {
  using dcm::io::rational_from_json;
  CHECK(rational_from_json(dcm::io::json(5)) == rat(5));
  CHECK(rational_from_json(dcm::io::json("3/2")) == rat(3, 2));
  CHECK_THROWS_AS(rational_from_json(dcm::io::json(1.5)), ValidationError);
  CHECK(dcm::io::rational_to_json(rat(3, 2)) == dcm::io::json("3/2"));
  CHECK(dcm::io::rational_to_json(rat(2)) == dcm::io::json(2));
}

TEST_CASE("parse errors name the offending key") {
  dcm::io::json j;
  j["schools"] = {"s1"};
  CHECK_THROWS_WITH_AS(dcm::io::instance_from_json(j),
                       doctest::Contains("types"), ValidationError);
}

TEST_CASE("feasibility checker reports exact exceedances") {
  const Instance inst = fixtures::pairwise_three_types();
  TypeAssignment y = TypeAssignment::zero(inst);
  // everything at phi: all six [1,2] lower bounds violated by exactly 1
  for (int t = 0; t < inst.num_types(); ++t) y.at(t, inst.phi()) = rat(1);
  const auto report = check_feasible(y, inst);
  REQUIRE(report.size() == 6);
  for (const auto& v : report) {
    CHECK(v.direction == Direction::Lower);
    CHECK(v.magnitude == rat(1));
  }
  // the uniform half assignment is exactly feasible
  TypeAssignment u = TypeAssignment::zero(inst);
  for (int t = 0; t < inst.num_types(); ++t)
    for (int s = 0; s < inst.num_schools(); ++s) u.at(t, s) = rat(1, 2);
  CHECK(check_feasible(u, inst).empty());
}

TEST_CASE("type profile aggregates students by type") {
  const Instance inst = fixtures::twins();
  StudentAssignment x = StudentAssignment::zero(inst);
  x.at(0, 0) = rat(1, 2);
  x.at(0, 1) = rat(1, 2);
  x.at(1, 0) = rat(1, 2);
  x.at(1, 1) = rat(1, 2);
  const TypeAssignment y = type_profile(x, inst);
  CHECK(y.at(0, 0) == rat(1));
  CHECK(y.at(0, 1) == rat(1));
}
