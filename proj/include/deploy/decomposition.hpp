#pragma once

// Decomposition of a rooted weighted tree into collected subtrees.
//
// Every leaf has a dominating edge: the heaviest edge on its root path, ties
// broken toward the root. Leaves sharing a dominating edge form a collected
// subtree. top_decomposition computes the flat partition directly from
// per-leaf path maxima; recursive_decomposition builds the full hierarchy
// bottom-up with a mergeable heap, carrying the (x, y) annotations the
// solvers evaluate.
//
// Node bookkeeping: x is the dominating edge weight; y is the demand
// attributed to the node (its own collection plus vertex demands attributed
// while it sat in ancestors' heaps); above is the attributed portion lying
// strictly above the node's root; demand (frozen when the node is absorbed)
// is y - above, the unsettled demand behind the node's dominating edge when
// it is entered in processing order. A re-dominated single subtree becomes a
// wrapper node: same members, lifted x and root.

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "deploy/instance.hpp"

namespace deploy {

struct DominatingEdge {
  int leaf = -1;
  int edge = -1;
  int lower = -1;  // endpoint of edge closer to the leaf
  Weight weight = 0;
};

// Path maxima for every vertex in one root-down pass: the best edge so far
// wins ties because it is closer to the root.
inline std::vector<DominatingEdge> all_dominating_edges(
    const TreeInstance& tree) {
  const std::size_t n = tree.vertex_count();
  std::vector<DominatingEdge> best(n);
  for (int v : tree.bfs_order()) {
    if (v == tree.root()) continue;
    int e = tree.parent_edge(v);
    DominatingEdge up = best[tree.parent(v)];
    if (up.edge == -1 || tree.edge_weight(e) > up.weight)
      best[v] = {v, e, v, tree.edge_weight(e)};
    else
      best[v] = {v, up.edge, up.lower, up.weight};
  }
  return best;
}

inline DominatingEdge dominating_edge(const TreeInstance& tree,
                                      std::string_view leaf_id) {
  int leaf = tree.vertex_index(leaf_id);
  if (!tree.is_leaf(leaf))
    throw ValidationError("vertex '" + std::string(leaf_id) +
                          "' is not a leaf");
  DominatingEdge best{leaf, -1, -1, 0};
  for (int v = leaf; v != tree.root(); v = tree.parent(v)) {
    int e = tree.parent_edge(v);
    if (best.edge == -1 || tree.edge_weight(e) >= best.weight)
      best = {leaf, e, v, tree.edge_weight(e)};
  }
  return best;
}

struct CollectedSubtree {
  int root = -1;    // v(b): vertex index the subtree hangs from
  Weight x = 0;     // dominating edge weight
  Weight y = -1;    // attributed demand (unknown on the flat route)
  Weight above = 0;
  Weight demand = -1;  // frozen y - above (unknown on the flat route)
  int leaf = -1;       // tree vertex when this is a leaf singleton
  bool wrapper = false;
  int parent = -1;
  int pos_in_parent = -1;
  std::vector<int> children;  // decreasing x, ties by root id
  std::vector<int> members;   // leaf vertices; filled by the flat route only
};

struct Decomposition {
  std::vector<CollectedSubtree> nodes;  // children precede parents
  int virtual_root = -1;                // x = 0, y = N node covering the tree
  std::vector<int> owner;      // tree vertex -> owning top-level node, or -1
  std::vector<int> leaf_node;  // tree vertex -> its singleton node, or -1
  // (node, y at creation) for every collection/re-domination event.
  std::vector<std::pair<int, Weight>> events;

  const std::vector<int>& top() const { return nodes[virtual_root].children; }
};

// Leaves below a node in traversal (decreasing-x) order.
inline std::vector<int> node_members(const Decomposition& dec, int node) {
  if (!dec.nodes[node].members.empty()) return dec.nodes[node].members;
  std::vector<int> out;
  std::vector<int> stack = {node};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    const auto& nd = dec.nodes[cur];
    if (nd.leaf != -1) out.push_back(nd.leaf);
    for (auto it = nd.children.rbegin(); it != nd.children.rend(); ++it)
      stack.push_back(*it);
  }
  return out;
}

namespace detail {

inline bool prefer_for_attribution(const std::vector<int>& rank,
                                   const CollectedSubtree& a,
                                   const CollectedSubtree& b) {
  if (a.x != b.x) return a.x > b.x;
  return rank[a.root] < rank[b.root];
}

// Pairing heap over arena node indices, keys held in dense arrays. Pop
// order is increasing x; equal x pops the larger root id first so that a
// reversed extraction run lists equal-weight subtrees by ascending root id.
struct SubtreeHeap {
  std::vector<int> child, sib;
  std::vector<Weight> xkey;
  std::vector<int> rkey;  // rank of the node's root in vertex-id order
  std::vector<int> runs;  // scratch for pop

  void add(int id, Weight x, int root_rank) {
    if (static_cast<int>(child.size()) <= id) {
      child.resize(id + 1, -1);
      sib.resize(id + 1, -1);
      xkey.resize(id + 1);
      rkey.resize(id + 1);
    }
    xkey[id] = x;
    rkey[id] = root_rank;
  }

  bool before(int a, int b) const {
    if (xkey[a] != xkey[b]) return xkey[a] < xkey[b];
    return rkey[a] > rkey[b];
  }

  // attribution order: decreasing x, ties by smaller root id
  bool prefer(int a, int b) const {
    if (xkey[a] != xkey[b]) return xkey[a] > xkey[b];
    return rkey[a] < rkey[b];
  }

  int meld(int a, int b) {
    if (a == -1) return b;
    if (b == -1) return a;
    if (before(b, a)) std::swap(a, b);
    sib[b] = child[a];
    child[a] = b;
    return a;
  }

  int pop(int h) {  // removes current top, returns the remaining heap
    int c = child[h];
    child[h] = -1;
    runs.clear();
    while (c != -1) {  // first pass: pairwise
      int a = c, b = sib[c];
      if (b == -1) {
        sib[a] = -1;
        runs.push_back(a);
        break;
      }
      c = sib[b];
      sib[a] = sib[b] = -1;
      runs.push_back(meld(a, b));
    }
    int h2 = -1;
    for (auto it = runs.rbegin(); it != runs.rend(); ++it) h2 = meld(h2, *it);
    return h2;
  }
};

}  // namespace detail

// Flat partition: group leaves by dominating edge, order groups by
// decreasing weight (ties by root id). Independent of the heap construction.
inline Decomposition top_decomposition(const TreeInstance& tree) {
  const std::size_t n = tree.vertex_count();
  auto dom = all_dominating_edges(tree);
  Decomposition dec;
  dec.owner.assign(n, -1);
  dec.leaf_node.assign(n, -1);

  std::vector<int> by_edge(tree.instance().edge_count(), -1);
  for (int leaf : tree.leaves()) {
    const auto& d = dom[leaf];
    int& node = by_edge[d.edge];
    if (node == -1) {
      node = static_cast<int>(dec.nodes.size());
      CollectedSubtree s;
      s.root = d.lower;
      s.x = d.weight;
      dec.nodes.push_back(std::move(s));
    }
    dec.nodes[node].members.push_back(leaf);
  }
  std::vector<int> top;
  for (std::size_t i = 0; i < dec.nodes.size(); ++i)
    top.push_back(static_cast<int>(i));
  const auto& rank = tree.id_ranks();
  std::sort(top.begin(), top.end(), [&](int a, int b) {
    return detail::prefer_for_attribution(rank, dec.nodes[a], dec.nodes[b]);
  });

  CollectedSubtree whole;
  whole.root = tree.root();
  whole.x = 0;
  whole.y = tree.total_demand();
  whole.demand = tree.total_demand();
  whole.children = top;
  dec.virtual_root = static_cast<int>(dec.nodes.size());
  dec.nodes.push_back(std::move(whole));
  for (std::size_t i = 0; i < top.size(); ++i) {
    auto& nd = dec.nodes[top[i]];
    nd.parent = dec.virtual_root;
    nd.pos_in_parent = static_cast<int>(i);
    std::sort(nd.members.begin(), nd.members.end(), [&](int a, int b) {
      return tree.vertex_id(a) < tree.vertex_id(b);
    });
    for (int leaf : nd.members) dec.owner[leaf] = top[i];
  }
  return dec;
}

// Bottom-up heap construction of the full hierarchy. The construction works
// on flat arrays and materializes the arena in one pass at the end.
inline Decomposition recursive_decomposition(const TreeInstance& tree) {
  const std::size_t n = tree.vertex_count();
  Decomposition dec;
  dec.owner.assign(n, -1);
  dec.leaf_node.assign(n, -1);
  const auto& rank = tree.id_ranks();
  detail::SubtreeHeap heap;

  // per arena id
  std::vector<Weight> x, y, above, demand;
  std::vector<int> root, leaf_of, parent, pos;
  std::vector<char> wrapper;
  std::vector<int> cbeg, cend;  // children range in child_buf
  std::vector<int> child_buf;
  const std::size_t cap = 2 * n + 2;
  for (auto* w : {&x, &y, &above, &demand}) w->reserve(cap);
  for (auto* v : {&root, &leaf_of, &parent, &pos, &cbeg, &cend})
    v->reserve(cap);
  wrapper.reserve(cap);
  child_buf.reserve(cap);

  auto new_node = [&](int rt, Weight xv) {
    x.push_back(xv);
    y.push_back(0);
    above.push_back(0);
    demand.push_back(-1);
    root.push_back(rt);
    leaf_of.push_back(-1);
    parent.push_back(-1);
    pos.push_back(-1);
    wrapper.push_back(0);
    cbeg.push_back(static_cast<int>(child_buf.size()));
    cend.push_back(static_cast<int>(child_buf.size()));
    return static_cast<int>(x.size()) - 1;
  };
  auto freeze = [&](int c, int par, int at) {
    demand[c] = y[c] - above[c];
    parent[c] = par;
    pos[c] = at;
  };

  // Inputs regrouped by BFS position so the climb below walks every array
  // sequentially; children of the vertex at position i occupy a contiguous
  // position block.
  const auto& order = tree.bfs_order();
  std::vector<Weight> vw(n), pw(n, 0);
  std::vector<int> rankp(n), kid_beg(n, 0), kid_end(n, 0);
  std::vector<char> leafp(n, 0);
  {
    std::vector<int> pos_of(n);
    for (std::size_t i = 0; i < n; ++i) pos_of[order[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < n; ++i) {
      int v = order[i];
      vw[i] = tree.vertex_weight(v);
      rankp[i] = rank[v];
      leafp[i] = tree.is_leaf(v) ? 1 : 0;
      if (v != tree.root()) pw[i] = tree.edge_weight(tree.parent_edge(v));
    }
    for (std::size_t i = 1; i < n; ++i) {
      int pp = pos_of[tree.parent(order[i])];
      if (kid_end[pp] == 0) kid_beg[pp] = static_cast<int>(i);
      kid_end[pp] = static_cast<int>(i) + 1;
    }
  }

  // per BFS position while climbing: heap root and attribution target
  std::vector<int> hroot(n, -1), hmax(n, -1);
  std::vector<int> extracted;

  for (std::size_t i = n; i-- > 0;) {
    int h = -1, mx = -1;
    if (leafp[i]) {
      int id = new_node(order[i], pw[i]);
      leaf_of[id] = order[i];
      y[id] = vw[i];
      heap.add(id, pw[i], rankp[i]);
      dec.leaf_node[order[i]] = id;
      h = id;
      mx = id;
    } else {
      for (int j = kid_beg[i]; j < kid_end[i]; ++j) {
        h = heap.meld(h, hroot[j]);
        if (mx == -1 || (hmax[j] != -1 && heap.prefer(hmax[j], mx)))
          mx = hmax[j];
      }
      if (mx != -1) {
        y[mx] += vw[i];
        above[mx] += vw[i];
      }
    }

    if (i == 0) {
      hroot[0] = h;
      hmax[0] = mx;
      break;
    }

    const Weight we = pw[i];
    extracted.clear();
    while (h != -1 && heap.xkey[h] <= we) {
      extracted.push_back(h);
      h = heap.pop(h);
    }
    if (extracted.size() == 1) {  // re-dominate in place
      int c = extracted[0];
      int id = new_node(order[i], we);
      wrapper[id] = 1;
      y[id] = y[c];
      child_buf.push_back(c);
      cend[id] = static_cast<int>(child_buf.size());
      freeze(c, id, 0);
      heap.add(id, we, rankp[i]);
      dec.events.emplace_back(id, y[id]);
      h = heap.meld(h, id);
      if (mx == c || mx == -1) mx = id;
    } else if (extracted.size() > 1) {
      int id = new_node(order[i], we);
      for (auto r = extracted.rbegin(); r != extracted.rend(); ++r)
        child_buf.push_back(*r);
      cend[id] = static_cast<int>(child_buf.size());
      bool max_absorbed = mx == -1;
      for (std::size_t k = 0; k < extracted.size(); ++k) {
        int c = child_buf[cbeg[id] + static_cast<int>(k)];
        y[id] += y[c];
        freeze(c, id, static_cast<int>(k));
        max_absorbed = max_absorbed || extracted[k] == mx;
      }
      heap.add(id, we, rankp[i]);
      dec.events.emplace_back(id, y[id]);
      h = heap.meld(h, id);
      if (max_absorbed) mx = id;
    }
    hroot[i] = h;
    hmax[i] = mx;
  }

  // root: dump the heap into the top list (pop order is increasing x)
  std::vector<int> top;
  int h = hroot[0];
  while (h != -1) {
    top.push_back(h);
    h = heap.pop(h);
  }
  std::reverse(top.begin(), top.end());

  int vroot = new_node(tree.root(), 0);
  y[vroot] = tree.total_demand();
  demand[vroot] = tree.total_demand();
  for (int t : top) child_buf.push_back(t);
  cend[vroot] = static_cast<int>(child_buf.size());
  for (std::size_t i = 0; i < top.size(); ++i)
    freeze(top[i], vroot, static_cast<int>(i));
  dec.virtual_root = vroot;

  dec.nodes.resize(x.size());
  for (std::size_t id = 0; id < x.size(); ++id) {
    auto& nd = dec.nodes[id];
    nd.root = root[id];
    nd.x = x[id];
    nd.y = y[id];
    nd.above = above[id];
    nd.demand = demand[id];
    nd.leaf = leaf_of[id];
    nd.wrapper = wrapper[id] != 0;
    nd.parent = parent[id];
    nd.pos_in_parent = pos[id];
    nd.children.assign(child_buf.begin() + cbeg[id],
                       child_buf.begin() + cend[id]);
  }

  // ids descend from parents to children, so one backward pass pushes each
  // top-level node down to the leaves it owns
  std::vector<int> down(x.size(), -1);
  for (int t : top) down[t] = t;
  for (std::size_t id = x.size(); id-- > 0;) {
    if (static_cast<int>(id) == vroot) continue;
    if (leaf_of[id] != -1)
      dec.owner[leaf_of[id]] = down[id];
    else
      for (int k = cbeg[id]; k < cend[id]; ++k) down[child_buf[k]] = down[id];
  }
  return dec;
}

namespace detail {

inline std::string annotation_string(const TreeInstance& tree,
                                     const Decomposition& dec, int node,
                                     Weight y) {
  std::string s = "T(";
  bool first = true;
  for (int leaf : node_members(dec, node)) {
    if (!first) s += ",";
    first = false;
    s += tree.vertex_id(leaf);
  }
  s += ")^{" + std::to_string(dec.nodes[node].x) + "," + std::to_string(y) +
       "}";
  return s;
}

}  // namespace detail

// One entry per collection/re-domination event, in construction order, with
// the y value the subtree had when it was formed.
inline std::vector<std::string> annotation_log(const TreeInstance& tree,
                                               const Decomposition& dec) {
  std::vector<std::string> out;
  out.reserve(dec.events.size());
  for (auto [node, y] : dec.events)
    out.push_back(detail::annotation_string(tree, dec, node, y));
  return out;
}

// Indented hierarchy; wrapper nodes are shown collapsed into one line.
inline std::string dump_decomposition(const TreeInstance& tree,
                                      const Decomposition& dec) {
  std::string out;
  auto print = [&](auto&& self, int node, int depth) -> void {
    const auto& nd = dec.nodes[node];
    out.append(2 * depth, ' ');
    std::string s = "T(";
    bool first = true;
    for (int leaf : node_members(dec, node)) {
      if (!first) s += ",";
      first = false;
      s += tree.vertex_id(leaf);
    }
    s += ")^{" + std::to_string(nd.x) + ",";
    s += nd.y < 0 ? std::string("?") : std::to_string(nd.y);
    s += "} @ " + tree.vertex_id(nd.root);
    out += s + "\n";
    int inner = node;
    while (dec.nodes[inner].wrapper) inner = dec.nodes[inner].children[0];
    for (int c : dec.nodes[inner].children) self(self, c, depth + 1);
  };
  print(print, dec.virtual_root, 0);
  return out;
}

}  // namespace deploy
