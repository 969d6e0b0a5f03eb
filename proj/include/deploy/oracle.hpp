#pragma once

// Exhaustive reference solver. Feasibility of a crew of size k is decided by
// reachability over (vertex, settled-set) states; the optimum is found by
// binary search on k, which is sound because feasibility is monotone in k
// (any walk that works for k works for k + 1). Exponential in |V|, so calls
// are guarded by a vertex cap.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "deploy/instance.hpp"
#include "deploy/schedule.hpp"

namespace deploy {

class OracleLimitError : public std::runtime_error {
 public:
  explicit OracleLimitError(const std::string& what)
      : std::runtime_error(what) {}
};

namespace detail {

struct OracleGraph {
  int n = 0;
  int start = 0;
  std::uint32_t full = 0;
  std::vector<Weight> vertex_w;
  // adjacency: (edge weight, neighbor, edge index)
  std::vector<std::vector<std::tuple<Weight, int, int>>> adj;
  std::vector<Weight> demand;  // demand[mask] = sum of weights in mask

  explicit OracleGraph(const Instance& inst, int cap) {
    n = static_cast<int>(inst.vertex_count());
    if (n > cap)
      throw OracleLimitError("oracle limited to " + std::to_string(cap) +
                             " vertices, instance has " + std::to_string(n));
    start = inst.start_index();
    full = (n == 32) ? ~0u : ((1u << n) - 1u);
    vertex_w.resize(n);
    adj.resize(n);
    for (int v = 0; v < n; ++v) {
      vertex_w[v] = inst.vertex_weight(v);
      for (auto [e, u] : inst.incident(v))
        adj[v].emplace_back(inst.edge_weight(e), u, e);
    }
    demand.assign(std::size_t(1) << n, 0);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      int low = __builtin_ctz(mask);
      demand[mask] = demand[mask & (mask - 1)] + vertex_w[low];
    }
  }
};

enum class OracleGoal { AnyEnd, StartEnd, FixedEnd };

// reach[mask] = bitset of vertices occupiable once exactly `mask` is settled.
inline bool oracle_feasible(const OracleGraph& g, Weight k, OracleGoal goal,
                            int goal_vertex) {
  if (k < g.vertex_w[g.start]) return false;
  std::vector<std::uint32_t> reach(std::size_t(1) << g.n, 0);
  reach[1u << g.start] = 1u << g.start;
  std::vector<int> stack;
  stack.reserve(g.n);
  for (std::uint32_t mask = 1u << g.start; mask <= g.full; ++mask) {
    std::uint32_t set = reach[mask];
    if (!set) continue;
    Weight unsettled = k - g.demand[mask];
    // close under movement between already-settled vertices
    stack.clear();
    for (std::uint32_t s = set; s; s &= s - 1)
      stack.push_back(__builtin_ctz(s));
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [we, u, e] : g.adj[v]) {
        (void)e;
        if (we > unsettled) continue;
        std::uint32_t bit = 1u << u;
        if ((mask & bit) && !(set & bit)) {
          set |= bit;
          stack.push_back(u);
        }
      }
    }
    reach[mask] = set;
    if (mask == g.full) break;
    // expand into unsettled vertices
    for (std::uint32_t s = set; s; s &= s - 1) {
      int v = __builtin_ctz(s);
      for (auto [we, u, e] : g.adj[v]) {
        (void)e;
        std::uint32_t bit = 1u << u;
        if ((mask & bit) || we > unsettled || g.vertex_w[u] > unsettled)
          continue;
        reach[mask | bit] |= bit;
      }
    }
  }
  std::uint32_t done = reach[g.full];
  switch (goal) {
    case OracleGoal::AnyEnd:
      return done != 0;
    case OracleGoal::StartEnd:
      return (done >> g.start) & 1u;
    case OracleGoal::FixedEnd:
      return (done >> goal_vertex) & 1u;
  }
  return false;
}

inline Weight oracle_search(const OracleGraph& g, const Instance& inst,
                            OracleGoal goal, int goal_vertex) {
  auto [lo, hi] = inst.trivial_bounds();
  if (lo < hi && !oracle_feasible(g, hi, goal, goal_vertex))
    throw std::logic_error("oracle: upper bound infeasible");
  while (lo < hi) {
    Weight mid = lo + (hi - lo) / 2;
    if (oracle_feasible(g, mid, goal, goal_vertex))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

}  // namespace detail

inline Weight exact_min_agents(const Instance& inst, int cap = 20) {
  detail::OracleGraph g(inst, cap);
  auto goal = inst.variant() == Variant::Return ? detail::OracleGoal::StartEnd
                                                : detail::OracleGoal::AnyEnd;
  return detail::oracle_search(g, inst, goal, -1);
}

// Minimal crew over walks that settle everything and end at `end` (the
// return-home leg is not required, whatever the instance's variant says).
inline Weight exact_min_agents_ending_at(const Instance& inst,
                                         const std::string& end,
                                         int cap = 20) {
  detail::OracleGraph g(inst, cap);
  return detail::oracle_search(g, inst, detail::OracleGoal::FixedEnd,
                               inst.vertex_index(end));
}

// Feasibility probe with an explicit crew size; exposed for property tests.
inline bool exact_feasible(const Instance& inst, Weight k, int cap = 20) {
  detail::OracleGraph g(inst, cap);
  auto goal = inst.variant() == Variant::Return ? detail::OracleGoal::StartEnd
                                                : detail::OracleGoal::AnyEnd;
  return detail::oracle_feasible(g, k, goal, -1);
}

// Optimal witness walk, reconstructed from a state-space BFS with parent
// pointers. Tighter cap: the parent table is per (vertex, mask) state.
inline Schedule exact_schedule(const Instance& inst, int cap = 16) {
  detail::OracleGraph g(inst, cap);
  auto goal = inst.variant() == Variant::Return ? detail::OracleGoal::StartEnd
                                                : detail::OracleGoal::AnyEnd;
  Weight k = detail::oracle_search(g, inst, goal, -1);

  const std::size_t states = std::size_t(g.n) << g.n;
  std::vector<std::int32_t> parent(states, -2);  // -2 unseen, -1 source
  std::vector<std::int32_t> via_edge(states, -1);
  auto id = [&](int v, std::uint32_t mask) {
    return (std::size_t(mask) * g.n) + v;
  };
  std::vector<std::size_t> queue;
  std::size_t src = id(g.start, 1u << g.start);
  parent[src] = -1;
  queue.push_back(src);
  std::size_t accept = states;
  for (std::size_t head = 0; head < queue.size() && accept == states; ++head) {
    std::size_t cur = queue[head];
    int v = static_cast<int>(cur % g.n);
    std::uint32_t mask = static_cast<std::uint32_t>(cur / g.n);
    if (mask == g.full &&
        (goal == detail::OracleGoal::AnyEnd || v == g.start)) {
      accept = cur;
      break;
    }
    Weight unsettled = k - g.demand[mask];
    for (auto [we, u, e] : g.adj[v]) {
      if (we > unsettled) continue;
      std::uint32_t bit = 1u << u;
      std::uint32_t nmask = mask;
      if (!(mask & bit)) {
        if (g.vertex_w[u] > unsettled) continue;
        nmask = mask | bit;
      }
      std::size_t nxt = id(u, nmask);
      if (parent[nxt] != -2) continue;
      parent[nxt] = static_cast<std::int32_t>(cur);
      via_edge[nxt] = e;
      queue.push_back(nxt);
    }
  }
  if (accept == states)
    throw std::logic_error("oracle: no accepting walk at the computed optimum");

  Schedule out;
  out.start = inst.start();
  std::vector<ScheduleStep> rev;
  for (std::size_t cur = accept; parent[cur] != -1;
       cur = static_cast<std::size_t>(parent[cur])) {
    int v = static_cast<int>(cur % g.n);
    rev.push_back({inst.edge_id(via_edge[cur]), inst.vertex_id(v)});
  }
  out.steps.assign(rev.rbegin(), rev.rend());
  return out;
}

}  // namespace deploy
