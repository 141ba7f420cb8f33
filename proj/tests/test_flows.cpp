#include <doctest.h>

#include "dcm/errors.hpp"
#include "dcm/flows.hpp"
#include "dcm/gen.hpp"
#include "dcm/opt.hpp"
#include "dcm/sdm.hpp"
#include "fixtures.hpp"

using namespace dcm;

TEST_CASE("max flow with lower bounds on hand-checked networks") {
  SUBCASE("plain max flow") {
    FlowNetwork net;
    const int s = net.add_node("s"), a = net.add_node("a"), b = net.add_node("b"),
              t = net.add_node("t");
    net.source = s;
    net.sink = t;
    net.add_arc(s, a, 0, 3);
    net.add_arc(s, b, 0, 2);
    net.add_arc(a, t, 0, 2);
    net.add_arc(b, t, 0, 3);
    net.add_arc(a, b, 0, 5);
    const auto flow = max_flow_lb(net);
    REQUIRE(flow.has_value());
    // value 5: route s->a->b->t carries the extra unit past a's direct cap
    CHECK((*flow)[2] + (*flow)[3] == 5);
  }
  SUBCASE("binding lower bound reroutes flow") {
    FlowNetwork net;
    const int s = net.add_node(), a = net.add_node(), b = net.add_node(),
              t = net.add_node();
    net.source = s;
    net.sink = t;
    net.add_arc(s, a, 0, 4);
    net.add_arc(a, b, 2, 4);  // at least 2 must go the long way
    net.add_arc(a, t, 0, 4);
    net.add_arc(b, t, 0, 4);
    const auto flow = max_flow_lb(net);
    REQUIRE(flow.has_value());
    CHECK((*flow)[1] >= 2);
    CHECK((*flow)[2] + (*flow)[3] == 4);
  }
  SUBCASE("unsatisfiable lower bound") {
    FlowNetwork net;
    const int s = net.add_node(), a = net.add_node(), t = net.add_node();
    net.source = s;
    net.sink = t;
    net.add_arc(s, a, 0, 1);
    net.add_arc(a, t, 3, 5);  // needs 3, can receive at most 1
    CHECK_FALSE(max_flow_lb(net).has_value());
  }
}

TEST_CASE("laminarity detection") {
  CHECK(is_laminar(fixtures::twins()));
  CHECK(is_laminar(fixtures::seven_students()) == false);  // pairwise overlaps
  CHECK_FALSE(is_laminar(fixtures::pairwise_three_types()));
  CHECK_FALSE(is_laminar(fixtures::overlap_capacity()));

  // nested families are laminar
  Instance inst = fixtures::overlap_capacity();
  inst.constraints[1].types = {0};  // {t1} nests inside {t1, t2}
  CHECK(is_laminar(inst));
}

TEST_CASE("laminar fast path matches the fractional optimum exactly") {
  for (unsigned long long seed = 1; seed <= 25; ++seed) {
    GenParams p;
    p.seed = seed;
    p.n_students = 3 + static_cast<int>(seed % 6);
    p.n_schools = 1 + static_cast<int>(seed % 4);
    p.n_types = 1 + static_cast<int>(seed % 5);
    p.style = ConstraintStyle::Laminar;
    const Instance inst = gen_instance(p);
    CAPTURE(seed);
    REQUIRE(is_laminar(inst));

    const Rational opt = compute_opt(inst);
    const std::vector<int> alloc = integral_opt_laminar(inst);

    long regular = 0;
    TypeAssignment y = TypeAssignment::zero(inst);
    for (int i = 0; i < inst.num_students(); ++i) {
      y.at(inst.students[i].type, alloc[i]) += 1;
      if (alloc[i] != inst.phi()) ++regular;
    }
    CHECK(rat(regular) == opt);  // integral instances have integral optima
    CHECK(check_feasible(y, inst).empty());
  }
}

TEST_CASE("serial dictatorship never goes fractional on laminar instances") {
  for (unsigned long long seed = 100; seed < 115; ++seed) {
    GenParams p;
    p.seed = seed;
    p.n_students = 4 + static_cast<int>(seed % 4);
    p.n_schools = 2;
    p.n_types = 1 + static_cast<int>(seed % 4);
    p.style = ConstraintStyle::Laminar;
    const Instance inst = gen_instance(p);
    CAPTURE(seed);

    std::vector<int> order(inst.num_students());
    for (int i = 0; i < inst.num_students(); ++i) order[i] = i;
    const SdmResult r = run_sdm(inst, order);
    for (const auto& ev : r.trace) {
      if (const auto* a = std::get_if<AssignEvent>(&ev)) CHECK_FALSE(a->partial);
    }
    CHECK(r.delta == TypeAssignment::zero(inst));
  }
}
