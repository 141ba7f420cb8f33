#include "dcm/flows.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "dcm/errors.hpp"
#include "dcm/lottery.hpp"
#include "dcm/opt.hpp"

namespace dcm {

int FlowNetwork::add_node(std::string name) {
  node_names.push_back(std::move(name));
  return num_nodes++;
}

void FlowNetwork::add_arc(int from, int to, long lower, long upper) {
  if (upper != kUncapped && lower > upper)
    throw ContractError("arc lower bound exceeds upper bound");
  if (lower < 0) throw ContractError("negative arc lower bound");
  arcs.push_back({from, to, lower, upper});
}

namespace {

constexpr long kBig = std::numeric_limits<long>::max() / 4;

// Residual-graph max flow (Edmonds-Karp).
struct Residual {
  struct Edge {
    int to;
    long cap;
    int rev;
    int orig;  // index into FlowNetwork::arcs, -1 for helper edges
  };
  std::vector<std::vector<Edge>> adj;

  explicit Residual(int n) : adj(n) {}

  void add(int u, int v, long cap, int orig) {
    adj[u].push_back({v, cap, static_cast<int>(adj[v].size()), orig});
    adj[v].push_back({u, 0, static_cast<int>(adj[u].size()) - 1, -1});
  }

  long augment(int s, int t) {
    long total = 0;
    for (;;) {
      std::vector<std::pair<int, int>> parent(adj.size(), {-1, -1});
      std::queue<int> bfs;
      bfs.push(s);
      parent[s] = {s, -1};
      while (!bfs.empty() && parent[t].first < 0) {
        const int u = bfs.front();
        bfs.pop();
        for (size_t e = 0; e < adj[u].size(); ++e)
          if (adj[u][e].cap > 0 && parent[adj[u][e].to].first < 0) {
            parent[adj[u][e].to] = {u, static_cast<int>(e)};
            bfs.push(adj[u][e].to);
          }
      }
      if (parent[t].first < 0) return total;
      long bottleneck = kBig;
      for (int v = t; v != s;) {
        auto [u, e] = parent[v];
        bottleneck = std::min(bottleneck, adj[u][e].cap);
        v = u;
      }
      for (int v = t; v != s;) {
        auto [u, e] = parent[v];
        adj[u][e].cap -= bottleneck;
        adj[adj[u][e].to][adj[u][e].rev].cap += bottleneck;
        v = u;
      }
      total += bottleneck;
    }
  }
};

}  // namespace

std::optional<std::vector<long>> max_flow_lb(const FlowNetwork& net) {
  // Lower-bound elimination: route mandatory flow through a helper
  // source/sink pair, with a return arc closing the circulation.
  const int helper_source = net.num_nodes;
  const int helper_sink = net.num_nodes + 1;
  Residual res(net.num_nodes + 2);

  std::vector<long> excess(net.num_nodes, 0);
  std::vector<int> arc_edge(net.arcs.size());  // position of each arc's edge
  for (size_t a = 0; a < net.arcs.size(); ++a) {
    const auto& arc = net.arcs[a];
    const long cap = arc.upper == kUncapped ? kBig : arc.upper - arc.lower;
    arc_edge[a] = static_cast<int>(res.adj[arc.from].size());
    res.add(arc.from, arc.to, cap, static_cast<int>(a));
    excess[arc.to] += arc.lower;
    excess[arc.from] -= arc.lower;
  }
  const int return_edge = static_cast<int>(res.adj[net.sink].size());
  res.add(net.sink, net.source, kBig, -1);

  long need = 0;
  for (int v = 0; v < net.num_nodes; ++v) {
    if (excess[v] > 0) {
      res.add(helper_source, v, excess[v], -1);
      need += excess[v];
    } else if (excess[v] < 0) {
      res.add(v, helper_sink, -excess[v], -1);
    }
  }
  if (res.augment(helper_source, helper_sink) != need) return std::nullopt;

  // Drop the return arc, then push as much extra source->sink flow as the
  // residual graph allows.
  {
    auto& fwd = res.adj[net.sink][return_edge];
    res.adj[net.source][fwd.rev].cap = 0;
    fwd.cap = 0;
  }
  res.augment(net.source, net.sink);

  std::vector<long> flow(net.arcs.size());
  for (size_t a = 0; a < net.arcs.size(); ++a) {
    const auto& arc = net.arcs[a];
    const auto& edge = res.adj[arc.from][arc_edge[a]];
    const long cap = arc.upper == kUncapped ? kBig : arc.upper - arc.lower;
    flow[a] = arc.lower + (cap - edge.cap);
  }

  // Conservation and bound recheck on the returned flow.
  std::vector<long> net_flow(net.num_nodes, 0);
  for (size_t a = 0; a < net.arcs.size(); ++a) {
    const auto& arc = net.arcs[a];
    if (flow[a] < arc.lower || (arc.upper != kUncapped && flow[a] > arc.upper))
      throw InternalInvariantError("flow violates arc bounds");
    net_flow[arc.from] -= flow[a];
    net_flow[arc.to] += flow[a];
  }
  for (int v = 0; v < net.num_nodes; ++v)
    if (v != net.source && v != net.sink && net_flow[v] != 0)
      throw InternalInvariantError("flow conservation failed");

  return flow;
}

bool is_laminar(const Instance& inst) {
  for (int s = 0; s < inst.num_schools(); ++s) {
    std::vector<const QuotaConstraint*> at;
    for (const auto& c : inst.constraints)
      if (c.school == s) at.push_back(&c);
    for (size_t a = 0; a < at.size(); ++a)
      for (size_t b = a + 1; b < at.size(); ++b) {
        std::vector<int> ra = at[a]->types, rb = at[b]->types;
        std::sort(ra.begin(), ra.end());
        std::sort(rb.begin(), rb.end());
        std::vector<int> inter;
        std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(),
                              std::back_inserter(inter));
        if (inter.empty()) continue;
        if (!std::includes(ra.begin(), ra.end(), rb.begin(), rb.end()) &&
            !std::includes(rb.begin(), rb.end(), ra.begin(), ra.end()))
          return false;
      }
  }
  return true;
}

namespace {

long to_long_quota(const Rational& q) {
  if (!is_integral(q)) throw ContractError("laminar reduction requires integral quotas");
  return static_cast<long>(q.get_num().get_si());
}

}  // namespace

LaminarNetwork build_laminar_network_indexed(const Instance& inst) {
  if (!is_laminar(inst)) throw ContractError("instance is not laminar");

  LaminarNetwork out;
  FlowNetwork& net = out.net;
  net.source = net.add_node("A");
  net.sink = net.add_node("B");

  const long total = inst.total_students();
  std::vector<int> type_node(inst.num_types());
  for (int t = 0; t < inst.num_types(); ++t) {
    type_node[t] = net.add_node("s_" + inst.types[t]);
    net.add_arc(net.source, type_node[t], 0, inst.type_counts[t]);
  }
  out.entry_arc.assign(inst.num_types(),
                       std::vector<int>(inst.num_schools(), -1));

  for (int s = 0; s < inst.num_schools(); ++s) {
    // Per-school constraint list; synthetic all-types node when empty.
    struct Node {
      std::vector<int> set;  // sorted type subset
      long lo, hi;
      int node = -1;
      int parent = -1;  // index into `local`, -1 = outermost
    };
    std::vector<Node> local;
    for (const auto& c : inst.constraints)
      if (c.school == s) {
        std::vector<int> sorted = c.types;
        std::sort(sorted.begin(), sorted.end());
        local.push_back(
            {std::move(sorted), to_long_quota(c.lower), to_long_quota(c.upper)});
      }
    if (local.empty()) {
      std::vector<int> all(inst.num_types());
      for (int t = 0; t < inst.num_types(); ++t) all[t] = t;
      local.push_back({std::move(all), 0, total});
    }

    // Parent = smallest strict superset within the family.
    for (size_t a = 0; a < local.size(); ++a) {
      int best = -1;
      for (size_t b = 0; b < local.size(); ++b) {
        if (a == b || local[b].set.size() <= local[a].set.size()) continue;
        if (!std::includes(local[b].set.begin(), local[b].set.end(),
                           local[a].set.begin(), local[a].set.end()))
          continue;
        if (local[b].set.size() == local[a].set.size() &&
            local[b].set == local[a].set)
          continue;
        if (best < 0 || local[b].set.size() < local[best].set.size())
          best = static_cast<int>(b);
      }
      local[a].parent = best;
    }

    for (auto& nd : local)
      nd.node = net.add_node("u[" + inst.schools[s] + "]");
    for (size_t a = 0; a < local.size(); ++a) {
      const int target = local[a].parent < 0 ? net.sink : local[local[a].parent].node;
      net.add_arc(local[a].node, target, local[a].lo, local[a].hi);
    }

    // Each type enters at the innermost constraint containing it.
    for (int t = 0; t < inst.num_types(); ++t) {
      int best = -1;
      for (size_t a = 0; a < local.size(); ++a) {
        if (!std::binary_search(local[a].set.begin(), local[a].set.end(), t)) continue;
        if (best < 0 || local[a].set.size() < local[best].set.size())
          best = static_cast<int>(a);
      }
      if (best < 0) continue;  // type has no route into this school
      out.entry_arc[t][s] = static_cast<int>(net.arcs.size());
      net.add_arc(type_node[t], local[best].node, 0, kUncapped);
    }
  }
  return out;
}

FlowNetwork build_laminar_network(const Instance& inst) {
  return build_laminar_network_indexed(inst).net;
}

std::vector<int> integral_opt_laminar(const Instance& inst) {
  const LaminarNetwork lam = build_laminar_network_indexed(inst);
  const auto flow = max_flow_lb(lam.net);
  if (!flow) throw InfeasibleInstance("laminar flow network has no feasible flow");

  // Type-level seat counts per school.
  std::vector<std::vector<long>> seats(inst.num_types(),
                                       std::vector<long>(inst.num_schools(), 0));
  for (int t = 0; t < inst.num_types(); ++t)
    for (int s = 0; s < inst.num_schools(); ++s)
      if (lam.entry_arc[t][s] >= 0) seats[t][s] = (*flow)[lam.entry_arc[t][s]];

  // Students claim their best designated seat in instance order.
  std::vector<int> alloc(inst.num_students(), inst.phi());
  for (int i = 0; i < inst.num_students(); ++i) {
    const int t = inst.students[i].type;
    for (int s : inst.students[i].prefs)
      if (seats[t][s] > 0) {
        --seats[t][s];
        alloc[i] = s;
        break;
      }
  }
  return alloc;
}

std::vector<int> integral_point_in_polytope(
    const RoundingPolytope& p, const std::vector<std::vector<bool>>& support,
    const Instance& inst) {
  FlowNetwork net;
  net.source = net.add_node("A");
  net.sink = net.add_node("B");

  const int n = inst.num_students();
  const int m = inst.num_schools();
  std::vector<int> student_node(n);
  for (int i = 0; i < n; ++i) {
    student_node[i] = net.add_node(inst.students[i].id);
    net.add_arc(net.source, student_node[i], 1, 1);
  }
  std::vector<std::vector<int>> group_node(inst.num_types(), std::vector<int>(m, -1));
  for (int t = 0; t < inst.num_types(); ++t)
    for (int s = 0; s < m; ++s) {
      group_node[t][s] = net.add_node("g");
      net.add_arc(group_node[t][s], net.sink, p.lower[t][s], p.upper[t][s]);
    }
  const int phi_node = net.add_node("g_phi");
  net.add_arc(phi_node, net.sink, p.phi_lower, p.phi_upper);

  std::vector<std::vector<int>> cell_arc(n, std::vector<int>(m + 1, -1));
  for (int i = 0; i < n; ++i) {
    const int t = inst.students[i].type;
    for (int s = 0; s <= m; ++s) {
      if (!support[i][s]) continue;
      cell_arc[i][s] = static_cast<int>(net.arcs.size());
      net.add_arc(student_node[i], s == m ? phi_node : group_node[t][s], 0, 1);
    }
  }

  const auto flow = max_flow_lb(net);
  if (!flow) throw InfeasibleInstance("restricted rounding polytope is empty");

  std::vector<int> alloc(n, -1);
  for (int i = 0; i < n; ++i)
    for (int s = 0; s <= m; ++s)
      if (cell_arc[i][s] >= 0 && (*flow)[cell_arc[i][s]] == 1) alloc[i] = s;
  for (int i = 0; i < n; ++i)
    if (alloc[i] < 0) throw InternalInvariantError("student left without a seat");
  return alloc;
}

}  // namespace dcm
