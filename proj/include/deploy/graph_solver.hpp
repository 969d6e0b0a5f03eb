#pragma once

// General graphs: solve on a minimum spanning tree. Any crew must cross some
// edge of every cut separating settled from unsettled territory, and the MST
// minimizes the bottleneck over each cut, so max(N, heaviest MST edge) lower-
// bounds the optimum. The tree walk needs at most N + heaviest MST edge, which
// is at most twice that bound.

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "deploy/instance.hpp"
#include "deploy/schedule.hpp"
#include "deploy/tree_solver.hpp"

namespace deploy {

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

// Kruskal's algorithm; ties broken by edge id so the result is deterministic.
inline TreeInstance minimum_spanning_tree(const Instance& inst) {
  std::vector<int> order(inst.edge_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto &ea = inst.edges()[a], &eb = inst.edges()[b];
    if (ea.weight != eb.weight) return ea.weight < eb.weight;
    return ea.id < eb.id;
  });
  detail::DisjointSets dsu(inst.vertex_count());
  std::vector<EdgeSpec> chosen;
  chosen.reserve(inst.vertex_count() - 1);
  for (int e : order) {
    const auto& spec = inst.edges()[e];
    if (dsu.unite(inst.vertex_index(spec.u), inst.vertex_index(spec.v)))
      chosen.push_back(spec);
  }
  Instance mst(inst.vertices(), chosen, inst.start(), inst.variant());
  return as_tree(mst);
}

struct ApproxSolution {
  Solution solution;
  Weight lower_bound = 0;
  double ratio_certificate = 1.0;
};

inline ApproxSolution solve_mst_approx(const Instance& inst,
                                       const SolveOptions& opts = {}) {
  TreeInstance tree =
      inst.is_tree() ? as_tree(inst) : minimum_spanning_tree(inst);

  ApproxSolution out;
  out.solution = inst.variant() == Variant::Return ? solve_return(tree, opts)
                                                   : solve_noreturn(tree, opts);
  out.solution.method = "mst-approx";
  out.lower_bound =
      std::max(inst.total_demand(), tree.instance().max_edge_weight());
  out.ratio_certificate =
      out.lower_bound > 0
          ? static_cast<double>(out.solution.total) / out.lower_bound
          : 1.0;
  return out;
}

// Depth-first double cover from the start vertex; never needs more than
// N + w_max agents. Useful as a sanity reference, not competitive.
inline Solution dfs_baseline(const Instance& inst) {
  const std::size_t n = inst.vertex_count();
  std::vector<char> visited(n, 0);
  Schedule walk;
  walk.start = inst.start();

  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (std::size_t v = 0; v < n; ++v) {
    adj[v] = inst.incident(static_cast<int>(v));
    std::sort(adj[v].begin(), adj[v].end(), [&](auto a, auto b) {
      const std::string &va = inst.vertex_id(a.second),
                        &vb = inst.vertex_id(b.second);
      if (va != vb) return va < vb;
      return inst.edge_id(a.first) < inst.edge_id(b.first);
    });
  }

  Solution sol;
  sol.method = "dfs";
  std::vector<std::pair<int, std::size_t>> stack{{inst.start_index(), 0}};
  visited[inst.start_index()] = 1;
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next == adj[v].size()) {
      stack.pop_back();
      if (!stack.empty()) {
        auto [par, used] = stack.back();
        int e = adj[par][used - 1].first;
        walk.steps.push_back({inst.edge_id(e), inst.vertex_id(par)});
      }
      continue;
    }
    auto [e, u] = adj[v][next++];
    if (visited[u]) continue;
    visited[u] = 1;
    walk.steps.push_back({inst.edge_id(e), inst.vertex_id(u)});
    stack.push_back({u, 0});
  }

  AgentCount count = count_agents(inst, walk);
  sol.total = count.total;
  sol.final_unsettled = count.final_unsettled;
  sol.end_vertex = walk.start;
  sol.schedule = std::move(walk);
  return sol;
}

}  // namespace deploy
