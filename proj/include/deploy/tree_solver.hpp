#pragma once

// Exact tree solvers.
//
// Return: visit the top-level collected subtrees in decreasing dominating
// weight. Settling subtree k costs its attributed demand y_k, and leaving it
// re-crosses its dominating edge, so the crew must satisfy
// total >= x_k + (y_1 + ... + y_k) for every k; the loop below accumulates
// exactly that as top-ups.
//
// No-return: the walk saves one exit by ending inside the subtree it enters
// last, recursively. For a node T with children C_1..C_c (decreasing x),
// ending inside C_i costs
//   max( S_T + max_{j<i}(x_j + P_j),   exits of the children left early
//        N - R(C_i) + x(C_i),          entering C_i after everything else
//        phi(C_i) )                    the same choice one level down
// where P_j are prefix sums of the children's y, S_T = N - R(T) is the
// demand outside T, and children after position i are dominated by the entry
// term. phi(T) is the best choice; leaves have none.

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "deploy/decomposition.hpp"
#include "deploy/instance.hpp"
#include "deploy/schedule.hpp"

namespace deploy {

struct Solution {
  Weight total = 0;
  std::vector<std::string> visit_order;  // leaves in visiting order
  std::string end_vertex;
  std::optional<Schedule> schedule;
  std::string method;
  Weight final_unsettled = 0;
  // (curr, add) milestones of the accumulation, starting at (N, 0); an extra
  // entry after each top-up. Filled by the return solver.
  std::vector<std::pair<Weight, Weight>> trace;
};

struct SolveOptions {
  bool emit_schedule = false;
};

namespace detail {

constexpr Weight kNoPhi = std::numeric_limits<Weight>::min();

inline void walk_between(const TreeInstance& tree, int from, int to,
                         std::vector<ScheduleStep>& steps) {
  std::vector<ScheduleStep> down;
  int a = from, b = to;
  while (tree.depth(a) > tree.depth(b)) {
    steps.push_back(
        {tree.edge_id(tree.parent_edge(a)), tree.vertex_id(tree.parent(a))});
    a = tree.parent(a);
  }
  while (tree.depth(b) > tree.depth(a)) {
    down.push_back({tree.edge_id(tree.parent_edge(b)), tree.vertex_id(b)});
    b = tree.parent(b);
  }
  while (a != b) {
    steps.push_back(
        {tree.edge_id(tree.parent_edge(a)), tree.vertex_id(tree.parent(a))});
    a = tree.parent(a);
    down.push_back({tree.edge_id(tree.parent_edge(b)), tree.vertex_id(b)});
    b = tree.parent(b);
  }
  steps.insert(steps.end(), down.rbegin(), down.rend());
}

inline Schedule emit_walk(const TreeInstance& tree,
                          const std::vector<int>& leaf_order,
                          Variant variant) {
  Schedule s;
  s.start = tree.vertex_id(tree.root());
  int pos = tree.root();
  for (int leaf : leaf_order) {
    walk_between(tree, pos, leaf, s.steps);
    pos = leaf;
  }
  if (variant == Variant::Return) walk_between(tree, pos, tree.root(), s.steps);
  return s;
}

// Leaves below `node`, children in decreasing-x order except that a node's
// chain child (if any) goes last.
inline void collect_leaves(const Decomposition& dec, int start,
                           const std::vector<int>& chain_child,
                           std::vector<int>& out) {
  std::vector<int> stack{start};
  while (!stack.empty()) {
    int node = stack.back();
    stack.pop_back();
    const auto& nd = dec.nodes[node];
    if (nd.leaf != -1) {
      out.push_back(nd.leaf);
      continue;
    }
    int last = chain_child[node];
    if (last != -1) stack.push_back(last);
    for (auto it = nd.children.rbegin(); it != nd.children.rend(); ++it)
      if (*it != last) stack.push_back(*it);
  }
}

inline std::vector<std::string> leaf_ids(const TreeInstance& tree,
                                         const std::vector<int>& leaves) {
  std::vector<std::string> out;
  out.reserve(leaves.size());
  for (int v : leaves) out.push_back(tree.vertex_id(v));
  return out;
}

inline void attach_schedule(const TreeInstance& tree, Solution& sol,
                            const std::vector<int>& leaf_order,
                            Variant variant, const SolveOptions& opts) {
  if (!opts.emit_schedule) return;
  Schedule s = emit_walk(tree, leaf_order, variant);
  AgentCount recount = count_agents(tree.instance(), s);
  if (recount.total != sol.total)
    throw std::logic_error("emitted schedule counts " +
                           std::to_string(recount.total) +
                           " agents, solver computed " +
                           std::to_string(sol.total));
  sol.schedule = std::move(s);
}

}  // namespace detail

inline Solution solve_return(const TreeInstance& tree,
                             const SolveOptions& opts = {}) {
  Decomposition dec = recursive_decomposition(tree);
  const Weight n_total = tree.total_demand();
  Solution sol;
  sol.method = "tree-return";
  sol.end_vertex = tree.vertex_id(tree.root());
  Weight curr = n_total, add = 0;
  sol.trace.emplace_back(curr, add);
  for (int t : dec.top()) {
    const auto& nd = dec.nodes[t];
    curr -= nd.y;
    sol.trace.emplace_back(curr, add);
    if (curr < nd.x) {
      add += nd.x - curr;
      curr = nd.x;
      sol.trace.emplace_back(curr, add);
    }
  }
  if (dec.top().empty() && curr > 0) {
    // no subtree ledger to consume the demand: it all settles at the start
    curr = 0;
    sol.trace.emplace_back(curr, add);
  }
  sol.total = n_total + add;
  sol.final_unsettled = add;

  std::vector<int> chain(dec.nodes.size(), -1);
  std::vector<int> order;
  detail::collect_leaves(dec, dec.virtual_root, chain, order);
  sol.visit_order = detail::leaf_ids(tree, order);
  detail::attach_schedule(tree, sol, order, Variant::Return, opts);
  return sol;
}

namespace detail {

struct NoReturnEval {
  std::vector<Weight> phi;
  std::vector<int> pick;  // arg-min child per node
  // prefix exit maxima, flattened: node's entries start at pem_base[node]
  std::vector<std::size_t> pem_base;
  std::vector<Weight> pem;

  Weight pem_at(int node, int pos) const { return pem[pem_base[node] + pos]; }
};

inline NoReturnEval evaluate_noreturn(const Decomposition& dec,
                                      Weight n_total) {
  NoReturnEval ev;
  ev.phi.assign(dec.nodes.size(), kNoPhi);
  ev.pick.assign(dec.nodes.size(), -1);
  ev.pem_base.assign(dec.nodes.size() + 1, 0);
  for (std::size_t node = 0; node < dec.nodes.size(); ++node)
    ev.pem_base[node + 1] =
        ev.pem_base[node] + dec.nodes[node].children.size();
  ev.pem.assign(ev.pem_base.back(), kNoPhi);
  for (std::size_t node = 0; node < dec.nodes.size(); ++node) {
    const auto& ch = dec.nodes[node].children;
    if (ch.empty()) continue;
    const Weight outside = n_total - dec.nodes[node].demand;  // S_T
    Weight prefix_y = 0, exit_max = kNoPhi;
    Weight best = std::numeric_limits<Weight>::max();
    for (std::size_t i = 0; i < ch.size(); ++i) {
      const auto& c = dec.nodes[ch[i]];
      ev.pem[ev.pem_base[node] + i] = exit_max;
      Weight cand = n_total - c.demand + c.x;
      if (exit_max != kNoPhi) cand = std::max(cand, outside + exit_max);
      if (ev.phi[ch[i]] != kNoPhi) cand = std::max(cand, ev.phi[ch[i]]);
      if (cand < best) {
        best = cand;
        ev.pick[node] = ch[i];
      }
      prefix_y += c.y;
      exit_max = std::max(exit_max, c.x + prefix_y);
    }
    ev.phi[node] = best;
  }
  return ev;
}

}  // namespace detail

inline Solution solve_noreturn(const TreeInstance& tree,
                               const SolveOptions& opts = {}) {
  Decomposition dec = recursive_decomposition(tree);
  const Weight n_total = tree.total_demand();
  auto ev = detail::evaluate_noreturn(dec, n_total);

  Solution sol;
  sol.method = "tree-noreturn";
  Weight phi = ev.phi[dec.virtual_root];
  sol.total = std::max(n_total, phi == detail::kNoPhi ? n_total : phi);
  sol.final_unsettled = sol.total - n_total;

  std::vector<int> chain(dec.nodes.size(), -1);
  int node = dec.virtual_root;
  while (ev.pick[node] != -1) {
    chain[node] = ev.pick[node];
    node = ev.pick[node];
  }
  sol.end_vertex = tree.vertex_id(
      dec.nodes[node].leaf != -1 ? dec.nodes[node].leaf : tree.root());

  std::vector<int> order;
  detail::collect_leaves(dec, dec.virtual_root, chain, order);
  sol.visit_order = detail::leaf_ids(tree, order);
  detail::attach_schedule(tree, sol, order, Variant::NoReturn, opts);
  return sol;
}

inline Solution solve_noreturn_fixed_leaf(const TreeInstance& tree,
                                          std::string_view leaf_id,
                                          const SolveOptions& opts = {}) {
  int leaf = tree.vertex_index(leaf_id);
  if (!tree.is_leaf(leaf))
    throw ValidationError("vertex '" + std::string(leaf_id) +
                          "' is not a leaf");
  Decomposition dec = recursive_decomposition(tree);
  const Weight n_total = tree.total_demand();
  auto ev = detail::evaluate_noreturn(dec, n_total);

  Solution sol;
  sol.method = "tree-noreturn-fixed";
  sol.end_vertex = tree.vertex_id(leaf);
  Weight total = n_total;
  std::vector<int> chain(dec.nodes.size(), -1);
  for (int node = dec.leaf_node[leaf]; node != dec.virtual_root;
       node = dec.nodes[node].parent) {
    const auto& nd = dec.nodes[node];
    chain[nd.parent] = node;
    total = std::max(total, n_total - nd.demand + nd.x);
    Weight pem = ev.pem_at(nd.parent, nd.pos_in_parent);
    if (pem != detail::kNoPhi) {
      Weight outside = n_total - dec.nodes[nd.parent].demand;
      total = std::max(total, outside + pem);
    }
  }
  sol.total = total;
  sol.final_unsettled = total - n_total;

  std::vector<int> order;
  detail::collect_leaves(dec, dec.virtual_root, chain, order);
  sol.visit_order = detail::leaf_ids(tree, order);
  detail::attach_schedule(tree, sol, order, Variant::NoReturn, opts);
  return sol;
}

// Explicit walk for a full leaf visiting order: tree paths between
// consecutive leaves, plus the walk home in the return variant.
inline Schedule emit_schedule(const TreeInstance& tree,
                              const std::vector<std::string>& leaf_order,
                              Variant variant) {
  std::vector<char> seen(tree.vertex_count(), 0);
  std::vector<int> order;
  order.reserve(leaf_order.size());
  for (const auto& id : leaf_order) {
    int v = tree.vertex_index(id);
    if (!tree.is_leaf(v))
      throw ValidationError("order inconsistent with tree structure: '" + id +
                            "' is not a leaf");
    if (seen[v])
      throw ValidationError("order inconsistent with tree structure: '" + id +
                            "' listed twice");
    seen[v] = 1;
    order.push_back(v);
  }
  if (order.size() != tree.leaves().size())
    throw ValidationError(
        "order inconsistent with tree structure: not all leaves listed");
  return detail::emit_walk(tree, order, variant);
}

}  // namespace deploy
