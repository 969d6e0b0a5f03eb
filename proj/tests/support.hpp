#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "deploy/instance.hpp"
#include "deploy/schedule.hpp"

namespace testsupport {

using deploy::EdgeSpec;
using deploy::Instance;
using deploy::Schedule;
using deploy::Variant;
using deploy::VertexSpec;
using deploy::Weight;

inline Instance quick_instance(
    const std::vector<std::pair<std::string, Weight>>& vertices,
    const std::vector<std::tuple<std::string, std::string, std::string,
                                 Weight>>& edges,
    const std::string& start, Variant variant) {
  std::vector<VertexSpec> vs;
  vs.reserve(vertices.size());
  for (const auto& [id, w] : vertices) vs.push_back({id, w});
  std::vector<EdgeSpec> es;
  es.reserve(edges.size());
  for (const auto& [id, u, v, w] : edges) es.push_back({id, u, v, w});
  return Instance(std::move(vs), std::move(es), start, variant);
}

// Uniform random walk of at most `len` steps from the start vertex.
inline Schedule random_walk(const Instance& inst, std::mt19937_64& rng,
                            int len) {
  Schedule s;
  s.start = inst.start();
  int at = inst.start_index();
  for (int i = 0; i < len; ++i) {
    auto inc = inst.incident(at);
    if (inc.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, inc.size() - 1);
    auto [e, to] = inc[pick(rng)];
    s.steps.push_back({inst.edge_id(e), inst.vertex_id(to)});
    at = to;
  }
  return s;
}

// Minimum spanning-tree weight by exhaustive edge-subset enumeration.
// Only usable for very small edge counts.
inline Weight brute_mst_weight(const Instance& inst) {
  const int n = static_cast<int>(inst.vertex_count());
  const int m = static_cast<int>(inst.edge_count());
  Weight best = -1;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (std::popcount(mask) != n - 1) continue;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    int comps = n;
    Weight sum = 0;
    for (int e = 0; e < m; ++e) {
      if (!(mask >> e & 1)) continue;
      sum += inst.edge_weight(e);
      auto [u, v] = inst.edge_endpoints(e);
      int ru = find(u), rv = find(v);
      if (ru != rv) parent[ru] = rv, --comps;
    }
    if (comps == 1 && (best < 0 || sum < best)) best = sum;
  }
  return best;
}

}  // namespace testsupport
