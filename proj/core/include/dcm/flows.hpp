#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dcm/instance.hpp"

namespace dcm {

struct RoundingPolytope;  // lottery.hpp

struct FlowArc {
  int from;
  int to;
  long lower;
  long upper;  // kUncapped = no upper bound
};

inline constexpr long kUncapped = -1;

struct FlowNetwork {
  int num_nodes = 0;
  int source = -1;
  int sink = -1;
  std::vector<FlowArc> arcs;
  std::vector<std::string> node_names;  // diagnostics only

  int add_node(std::string name = {});
  void add_arc(int from, int to, long lower, long upper);
};

/// A maximum source->sink flow respecting all lower bounds, per-arc values;
/// nullopt when no flow satisfies the lower bounds.
std::optional<std::vector<long>> max_flow_lb(const FlowNetwork& net);

/// True iff every school's constraint family is laminar: overlapping
/// subsets are nested.
bool is_laminar(const Instance& inst);

/// The laminar-instance reduction: constraint nodes chained by set
/// inclusion, one auxiliary node per type, integer bounds taken from the
/// quotas. Requires a laminar instance with integral quotas. Schools without
/// constraints are routed through a synthetic all-types node with bounds
/// [0, total students].
FlowNetwork build_laminar_network(const Instance& inst);

/// Where arc (type entry into school s) lives in the laminar network, for
/// reading type->school masses out of a flow. -1 when the type has no route.
struct LaminarNetwork {
  FlowNetwork net;
  std::vector<std::vector<int>> entry_arc;  // types x regular schools
};

LaminarNetwork build_laminar_network_indexed(const Instance& inst);

/// Exactly feasible integral allocation assigning OPT students to regular
/// schools (the laminar fast path). Returns student -> school.
std::vector<int> integral_opt_laminar(const Instance& inst);

/// An integral member of the rounding polytope using only cells allowed by
/// `support` (students x columns). Throws InfeasibleInstance when the
/// restricted polytope is empty.
std::vector<int> integral_point_in_polytope(const RoundingPolytope& p,
                                            const std::vector<std::vector<bool>>& support,
                                            const Instance& inst);

}  // namespace dcm
