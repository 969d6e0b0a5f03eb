#pragma once

// Instance constructors: bundled worked examples, the exact-cover hardness
// gadget, adversarial families, and seeded random instances.

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "deploy/instance.hpp"
#include "deploy/schedule.hpp"

namespace deploy {

// Five vertices, two cheap branches, one heavy leaf behind a strong edge.
inline Instance figure1_instance(Variant variant = Variant::NoReturn) {
  std::vector<VertexSpec> vs = {
      {"v1", 1}, {"v2", 1}, {"v3", 1}, {"v4", 1}, {"v5", 15}};
  std::vector<EdgeSpec> es = {{"e1", "v1", "v2", 1},
                              {"e2", "v2", "v3", 20},
                              {"e3", "v1", "v4", 1},
                              {"e4", "v2", "v5", 7}};
  return Instance(std::move(vs), std::move(es), "v1", variant);
}

// The hand-traceable walk on figure1_instance that settles everything and
// ends in v5.
inline Schedule figure1_walkthrough_schedule() {
  return Schedule{"v1",
                  {{"e1", "v2"},
                   {"e2", "v3"},
                   {"e2", "v2"},
                   {"e1", "v1"},
                   {"e3", "v4"},
                   {"e3", "v1"},
                   {"e1", "v2"},
                   {"e4", "v5"}}};
}

// Fourteen-vertex tree with five collected subtrees of dominating weights
// 12, 10, 9, 7 and 4. Total demand 41.
inline TreeInstance figure4_instance(Variant variant = Variant::Return) {
  std::vector<VertexSpec> vs = {{"vs", 4}, {"v1", 5}, {"v2", 2}, {"v3", 1},
                                {"v4", 5}, {"v5", 1}, {"b0", 2}, {"b1", 3},
                                {"b2", 2}, {"b3", 2}, {"b4", 2}, {"b5", 9},
                                {"b6", 2}, {"b7", 1}};
  std::vector<EdgeSpec> es = {
      {"e1", "vs", "v1", 2},  {"e2", "vs", "b0", 4},  {"e3", "v1", "b1", 9},
      {"e4", "vs", "v2", 7},  {"e5", "vs", "v3", 10}, {"e6", "v2", "b5", 6},
      {"e7", "v2", "v4", 12}, {"e8", "v4", "b6", 1},  {"e9", "v4", "b7", 3},
      {"e10", "v3", "v5", 2}, {"e11", "v5", "b2", 1}, {"e12", "v5", "b3", 1},
      {"e13", "v3", "b4", 3}};
  return TreeInstance(Instance(std::move(vs), std::move(es), "vs", variant));
}

// Star with center demand 0, unit leaf demands, edge weights n, n-1, ..., 1.
inline TreeInstance star_instance(int n, Variant variant = Variant::Return) {
  if (n < 1) throw ValidationError("star: n must be >= 1");
  std::vector<VertexSpec> vs = {{"s", 0}};
  std::vector<EdgeSpec> es;
  for (int i = 1; i <= n; ++i) {
    std::string leaf = "u" + std::to_string(i);
    vs.push_back({leaf, 1});
    es.push_back({"e" + std::to_string(i), "s", leaf, Weight(n + 1 - i)});
  }
  return TreeInstance(Instance(std::move(vs), std::move(es), "s", variant));
}

// Star with edge weights taken from `values` and leaf demands eps. In the
// no-return variant the leaf behind the smallest value carries that value
// itself instead of eps, so ending there is what an optimal strategy earns
// by visiting in decreasing order.
inline TreeInstance uniform_gap_instance(const std::vector<Weight>& values,
                                         Weight eps,
                                         Variant variant = Variant::Return) {
  if (values.empty()) throw ValidationError("uniform-gap: no values");
  if (eps < 1) throw ValidationError("uniform-gap: eps must be >= 1");
  std::set<Weight> distinct;
  Weight smallest = values.front();
  for (Weight x : values) {
    if (x < 1) throw ValidationError("uniform-gap: values must be positive");
    if (!distinct.insert(x).second)
      throw ValidationError("uniform-gap: duplicate value " +
                            std::to_string(x));
    smallest = std::min(smallest, x);
  }
  std::vector<VertexSpec> vs = {{"s", 0}};
  std::vector<EdgeSpec> es;
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::string leaf = "u" + std::to_string(i + 1);
    Weight demand =
        (variant == Variant::NoReturn && values[i] == smallest) ? values[i]
                                                                : eps;
    vs.push_back({leaf, demand});
    es.push_back({"e" + std::to_string(i + 1), "s", leaf, values[i]});
  }
  return TreeInstance(Instance(std::move(vs), std::move(es), "s", variant));
}

// Two demand-free arms of depth m with m unit leaves hanging alternately off
// the left and right arm at decreasing depths; leaf edge weights m, ..., 1.
// The optimal order bounces between the arms, so the walk has Θ(m²) steps
// while only m+1 agents are needed.
inline TreeInstance zigzag_instance(int m, Variant variant = Variant::Return) {
  if (m < 1) throw ValidationError("zigzag: m must be >= 1");
  std::vector<VertexSpec> vs = {{"s", 0}};
  std::vector<EdgeSpec> es;
  for (char side : {'L', 'R'}) {
    for (int d = 1; d <= m; ++d) {
      std::string v = side + std::to_string(d);
      std::string up = d == 1 ? "s" : side + std::to_string(d - 1);
      vs.push_back({v, 0});
      es.push_back({"e" + v, up, v, 0});
    }
  }
  for (int i = 1; i <= m; ++i) {
    int depth = m - (i - 1) / 2;
    char side = (i % 2 == 1) ? 'L' : 'R';
    std::string leaf = "b" + std::to_string(i);
    vs.push_back({leaf, 1});
    es.push_back({"f" + std::to_string(i), side + std::to_string(depth), leaf,
                  Weight(m + 1 - i)});
  }
  return TreeInstance(Instance(std::move(vs), std::move(es), "s", variant));
}

// Exact-cover-by-3-sets input: a ground set of 3n elements (numbered from 1)
// and m >= n subsets of size 3.
struct XC3Input {
  int element_count = 0;  // 3n
  std::vector<std::array<int, 3>> sets;
};

namespace detail {

inline void validate_xc3(const XC3Input& in) {
  if (in.element_count <= 0 || in.element_count % 3 != 0)
    throw ValidationError("xc3: ground set size must be a positive multiple "
                          "of 3");
  int n = in.element_count / 3;
  if (static_cast<int>(in.sets.size()) < n)
    throw ValidationError("xc3: need at least n subsets");
  for (const auto& s : in.sets) {
    for (int a : s)
      if (a < 1 || a > in.element_count)
        throw ValidationError("xc3: element " + std::to_string(a) +
                              " out of range");
    if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2])
      throw ValidationError("xc3: subset elements must be distinct");
  }
}

}  // namespace detail

// Decision gadget: a sink connected by free edges to one vertex per subset
// (plus, in the no-return variant, a dummy), and each subset vertex attached
// to its three element vertices by edges too strong to recross once the
// spare agents are exhausted. The instance is solvable with exactly N agents
// iff an exact cover exists.
inline Instance xc3_reduction(const XC3Input& input, Variant variant) {
  detail::validate_xc3(input);
  int n = input.element_count / 3;
  int m = static_cast<int>(input.sets.size());
  Weight strong = (variant == Variant::NoReturn) ? Weight(m - n + 1)
                                                 : Weight(m - n);
  std::vector<VertexSpec> vs = {{"s", 0}};
  std::vector<EdgeSpec> es;
  for (int j = 1; j <= m; ++j) {
    std::string set_vertex = "F" + std::to_string(j);
    vs.push_back({set_vertex, 1});
    es.push_back({"g" + std::to_string(j), "s", set_vertex, 0});
  }
  for (int a = 1; a <= input.element_count; ++a)
    vs.push_back({"a" + std::to_string(a), 1});
  for (int j = 1; j <= m; ++j) {
    for (int k = 0; k < 3; ++k) {
      int a = input.sets[j - 1][k];
      es.push_back({"t" + std::to_string(j) + "_" + std::to_string(k + 1),
                    "F" + std::to_string(j), "a" + std::to_string(a), strong});
    }
  }
  if (variant == Variant::NoReturn) {
    vs.push_back({"d", 1});
    es.push_back({"g0", "s", "d", 0});
  }
  return Instance(std::move(vs), std::move(es), "s", variant);
}

// Exhaustive exact-cover search; the independent ground truth for the gadget.
inline bool has_exact_cover(const XC3Input& input) {
  detail::validate_xc3(input);
  int n = input.element_count / 3;
  std::vector<int> chosen;
  std::vector<char> covered(input.element_count + 1, 0);
  auto rec = [&](auto&& self, int from, int picked) -> bool {
    if (picked == n) return true;
    for (int j = from; j < static_cast<int>(input.sets.size()); ++j) {
      const auto& s = input.sets[j];
      if (covered[s[0]] || covered[s[1]] || covered[s[2]]) continue;
      for (int a : s) covered[a] = 1;
      if (self(self, j + 1, picked + 1)) return true;
      for (int a : s) covered[a] = 0;
    }
    return false;
  };
  return rec(rec, 0, 0);
}

// The 12-element, 6-subset input whose exact cover is F2, F3, F5, F6.
inline XC3Input fig2_xc3_input() {
  return XC3Input{12,
                  {{{1, 2, 3}},
                   {{1, 2, 4}},
                   {{3, 5, 7}},
                   {{5, 8, 9}},
                   {{6, 8, 10}},
                   {{9, 11, 12}}}};
}

// Same shape, but every subset contains element 1, so no exact cover exists.
inline XC3Input fig2_nocover_input() {
  return XC3Input{12,
                  {{{1, 2, 3}},
                   {{1, 4, 5}},
                   {{1, 6, 7}},
                   {{1, 8, 9}},
                   {{1, 10, 11}},
                   {{1, 2, 12}}}};
}

// Uniform random tree: vertex i >= 2 hangs off a uniformly chosen earlier
// vertex; weights uniform in [0, weight_max].
inline TreeInstance random_tree(int n, std::uint64_t seed, Weight weight_max,
                                Variant variant = Variant::NoReturn) {
  if (n < 1) throw ValidationError("random-tree: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Weight> w(0, weight_max);
  std::vector<VertexSpec> vs;
  std::vector<EdgeSpec> es;
  for (int i = 1; i <= n; ++i)
    vs.push_back({"v" + std::to_string(i), w(rng)});
  for (int i = 2; i <= n; ++i) {
    std::uniform_int_distribution<int> pick(1, i - 1);
    int p = pick(rng);
    es.push_back({"e" + std::to_string(i - 1), "v" + std::to_string(p),
                  "v" + std::to_string(i), w(rng)});
  }
  return TreeInstance(Instance(std::move(vs), std::move(es), "v1", variant));
}

// Random connected graph: a random spanning tree plus each remaining pair
// independently with probability edge_prob.
inline Instance random_graph(int n, double edge_prob, std::uint64_t seed,
                             Weight weight_max,
                             Variant variant = Variant::NoReturn) {
  if (n < 1) throw ValidationError("random-graph: n must be >= 1");
  if (edge_prob < 0.0 || edge_prob > 1.0)
    throw ValidationError("random-graph: edge_prob must be in [0,1]");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Weight> w(0, weight_max);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<VertexSpec> vs;
  for (int i = 1; i <= n; ++i)
    vs.push_back({"v" + std::to_string(i), w(rng)});
  std::set<std::pair<int, int>> used;
  std::vector<EdgeSpec> es;
  auto add_edge = [&](int a, int b) {
    es.push_back({"e" + std::to_string(es.size() + 1), "v" + std::to_string(a),
                  "v" + std::to_string(b), w(rng)});
    used.insert({std::min(a, b), std::max(a, b)});
  };
  for (int i = 2; i <= n; ++i) {
    std::uniform_int_distribution<int> pick(1, i - 1);
    add_edge(pick(rng), i);
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (!used.count({i, j}) && coin(rng) < edge_prob) add_edge(i, j);
  return Instance(std::move(vs), std::move(es), "v1", variant);
}

}  // namespace deploy
