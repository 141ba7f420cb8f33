#include <doctest.h>

#include <vector>

#include "dcm/opt.hpp"
#include "dcm/sdm.hpp"
#include "fixtures.hpp"

using namespace dcm;

namespace {

std::vector<const UpdateEvent*> update_events(const SdmResult& r) {
  std::vector<const UpdateEvent*> out;
  for (const auto& ev : r.trace)
    if (const auto* u = std::get_if<UpdateEvent>(&ev)) out.push_back(u);
  return out;
}

void check_table(const UpdateEvent& u, const std::vector<Rational>& lower,
                 const std::vector<Rational>& upper) {
  REQUIRE(u.adjusted_lower.size() == lower.size());
  for (size_t c = 0; c < lower.size(); ++c) {
    CAPTURE(c);
    CHECK(u.adjusted_lower[c] == lower[c]);
    CHECK(u.adjusted_upper[c] == upper[c]);
  }
}

}  // namespace

TEST_CASE("three-student walkthrough reproduces every adjusted-quota table") {
  const Instance inst = fixtures::pairwise_three_types();
  const SdmResult r = run_sdm(inst, {0, 1, 2});  // i, j, k

  CHECK(r.opt == rat(3));
  CHECK(r.allocation == std::vector<int>{0, 0, 1});  // i->s1, j->s1, k->s2
  CHECK(r.regular_assigned(inst) == 3);

  const auto updates = update_events(r);
  REQUIRE(updates.size() == 3);

  // after resolving i's half-assignment to s1 through s2
  check_table(*updates[0],
              {rat(3, 2), rat(1), rat(3, 2), rat(1, 2), rat(1), rat(1, 2)},
              {rat(5, 2), rat(2), rat(5, 2), rat(3, 2), rat(2), rat(3, 2)});
  CHECK(updates[0]->student == 0);
  CHECK(updates[0]->school == 1);  // s2 is the critical school
  CHECK(updates[0]->rho == rat(1, 2));
  CHECK(updates[0]->resolved);

  // after resolving j through s2
  check_table(*updates[1],
              {rat(2), rat(3, 2), rat(3, 2), rat(0), rat(1, 2), rat(1, 2)},
              {rat(3), rat(5, 2), rat(5, 2), rat(1), rat(3, 2), rat(3, 2)});

  // after resolving k through s1
  check_table(*updates[2],
              {rat(2), rat(1), rat(1), rat(0), rat(1), rat(1)},
              {rat(3), rat(2), rat(2), rat(1), rat(2), rat(2)});
  CHECK(updates[2]->student == 2);
  CHECK(updates[2]->school == 0);
}

TEST_CASE("seven-student walkthrough reproduces outcomes and all five tables") {
  const Instance inst = fixtures::seven_students();
  const SdmResult r = run_sdm(inst, {0, 1, 2, 3, 4, 5, 6});

  CHECK(r.opt == rat(11, 2));
  // i1->s1, i2->s2, i3->s1, i4->s2, i5->s1, i6->phi, i7->s1
  CHECK(r.allocation == std::vector<int>{0, 1, 0, 1, 0, inst.phi(), 0});
  CHECK(r.regular_assigned(inst) == 6);

  // per-step outcomes stated in prose
  {
    int full_i2 = 0, phi_i6 = 0;
    for (const auto& ev : r.trace)
      if (const auto* a = std::get_if<AssignEvent>(&ev)) {
        if (a->student == 1) {
          CHECK_FALSE(a->partial);  // i2 completely assigned
          CHECK(a->school == 1);    // to s2
          ++full_i2;
        }
        if (a->student == 5) {
          CHECK(a->school == inst.phi());  // i6 to the outside option
          ++phi_i6;
        }
      }
    CHECK(full_i2 == 1);
    CHECK(phi_i6 == 1);
  }

  const auto updates = update_events(r);
  REQUIRE(updates.size() == 5);

  // constraint order: s1{t1,t2} s1{t2,t3} s1{t1,t3} s1{t1,t2,t3}
  //                   s2{t3,t4} s2{t4,t5} s2{t3,t5} s2{t1,t2,t3}
  check_table(*updates[0],
              {rat(3, 2), rat(1), rat(3, 2), rat(1, 2), rat(1), rat(1), rat(1),
               rat(-1, 2)},
              {rat(3, 2), rat(1), rat(3, 2), rat(5, 2), rat(1), rat(1), rat(1),
               rat(3, 2)});
  CHECK(updates[0]->student == 0);  // i1 resolved through s2
  CHECK(updates[0]->school == 1);

  check_table(*updates[1],
              {rat(3, 2), rat(3, 2), rat(2), rat(1), rat(1, 2), rat(1), rat(1, 2),
               rat(-1)},
              {rat(3, 2), rat(3, 2), rat(2), rat(3), rat(1, 2), rat(1), rat(1, 2),
               rat(1)});

  check_table(*updates[2],
              {rat(3, 2), rat(3, 2), rat(2), rat(1), rat(1), rat(3, 2), rat(1, 2),
               rat(-1)},
              {rat(3, 2), rat(3, 2), rat(2), rat(3), rat(1), rat(3, 2), rat(1, 2),
               rat(1)});
  CHECK(updates[2]->student == 3);  // i4 resolved through s1
  CHECK(updates[2]->school == 0);

  check_table(*updates[3],
              {rat(3, 2), rat(3, 2), rat(2), rat(1), rat(1), rat(1), rat(0),
               rat(-1)},
              {rat(3, 2), rat(3, 2), rat(2), rat(3), rat(1), rat(1), rat(0),
               rat(1)});

  check_table(*updates[4],
              {rat(2), rat(2), rat(2), rat(3, 2), rat(1), rat(1), rat(0), rat(-1)},
              {rat(2), rat(2), rat(2), rat(7, 2), rat(1), rat(1), rat(0), rat(1)});
  CHECK(updates[4]->student == 6);      // i7 resolved through the outside option
  CHECK(updates[4]->school == inst.phi());
}

TEST_CASE("run invariants hold on the walkthrough fixtures") {
  for (const Instance& inst :
       {fixtures::pairwise_three_types(), fixtures::seven_students(),
        fixtures::overlap_capacity()}) {
    std::vector<int> order(inst.num_students());
    for (int i = 0; i < inst.num_students(); ++i) order[i] = i;
    const SdmResult r = run_sdm(inst, order);

    // delta rows cancel, entries stay within one student
    for (int t = 0; t < inst.num_types(); ++t) {
      Rational row(0);
      for (int s = 0; s < inst.num_columns(); ++s) {
        row += r.delta.at(t, s);
        CHECK(rat_abs(r.delta.at(t, s)) <= rat(1));
        CHECK(r.y.at(t, s) >= rat(0));
      }
      CHECK(row == rat(0));
      CHECK(r.y.row_sum(t) == rat(inst.type_counts[t]));
    }

    // allocative efficiency against the fractional optimum
    CHECK(rat(r.regular_assigned(inst)) >= r.opt);

    // final allocation feasible for the adjusted quotas
    const auto [lo, hi] =
        SdmState{r.y, r.delta, {}, {}, r.opt}.adjusted_quotas(inst);
    CHECK(check_feasible(r.y, lo, hi, inst).empty());
  }
}

TEST_CASE("seeded order is a deterministic permutation") {
  const auto a = shuffled_order(7, 42);
  const auto b = shuffled_order(7, 42);
  const auto c = shuffled_order(7, 43);
  CHECK(a == b);
  CHECK(a != c);
  std::vector<bool> seen(7, false);
  for (int i : a) {
    REQUIRE(i >= 0);
    REQUIRE(i < 7);
    CHECK_FALSE(seen[i]);
    seen[i] = true;
  }
}

TEST_CASE("order changes who wins but never breaks efficiency") {
  const Instance inst = fixtures::twins();
  const SdmResult ab = run_sdm(inst, {0, 1});
  const SdmResult ba = run_sdm(inst, {1, 0});
  CHECK(ab.allocation == std::vector<int>{0, inst.phi()});
  CHECK(ba.allocation == std::vector<int>{inst.phi(), 0});
  CHECK(ab.regular_assigned(inst) == 1);
  CHECK(ba.regular_assigned(inst) == 1);
}
