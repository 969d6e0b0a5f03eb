#pragma once

// Weighted deployment instances. Every vertex carries a garrison demand
// (agents that must stay behind on the first visit) and every edge carries
// an escort threshold (minimum group size needed to traverse it). Instances
// are immutable after validation.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

namespace deploy {

using Weight = std::int64_t;

enum class Variant { Return, NoReturn };

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const char* variant_name(Variant v) {
  return v == Variant::Return ? "return" : "no_return";
}

inline Variant parse_variant(std::string_view s) {
  if (s == "return") return Variant::Return;
  if (s == "no_return") return Variant::NoReturn;
  throw ValidationError("unknown variant '" + std::string(s) +
                        "' (expected 'return' or 'no_return')");
}

struct VertexSpec {
  std::string id;
  Weight weight = 0;
};

struct EdgeSpec {
  std::string id;
  std::string u;
  std::string v;
  Weight weight = 0;
};

class Instance {
 public:
  Instance(std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges,
           std::string start, Variant variant)
      : vertices_(std::move(vertices)),
        edges_(std::move(edges)),
        start_(std::move(start)),
        variant_(variant) {
    validate();
  }

  const std::vector<VertexSpec>& vertices() const { return vertices_; }
  const std::vector<EdgeSpec>& edges() const { return edges_; }
  const std::string& start() const { return start_; }
  int start_index() const { return start_index_; }
  Variant variant() const { return variant_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  int vertex_index(std::string_view id) const {
    auto it = vertex_by_id_.find(std::string(id));
    if (it == vertex_by_id_.end())
      throw ValidationError("unknown vertex id '" + std::string(id) + "'");
    return it->second;
  }

  int edge_index(std::string_view id) const {
    auto it = edge_by_id_.find(std::string(id));
    if (it == edge_by_id_.end())
      throw ValidationError("unknown edge id '" + std::string(id) + "'");
    return it->second;
  }

  bool has_vertex(std::string_view id) const {
    return vertex_by_id_.count(std::string(id)) != 0;
  }

  Weight vertex_weight(int v) const { return vertices_[v].weight; }
  Weight edge_weight(int e) const { return edges_[e].weight; }
  const std::string& vertex_id(int v) const { return vertices_[v].id; }
  const std::string& edge_id(int e) const { return edges_[e].id; }
  std::pair<int, int> edge_endpoints(int e) const { return endpoints_[e]; }

  // (edge index, neighbor vertex index) pairs in declaration order.
  const std::vector<std::pair<int, int>>& incident(int v) const {
    return adjacency_[v];
  }

  // N: the total garrison demand of the instance.
  Weight total_demand() const { return total_demand_; }

  Weight max_edge_weight() const { return max_edge_weight_; }

  // Any covering walk needs at least N agents, and N + max edge weight
  // always suffice (a DFS walk witnesses the upper bound).
  std::pair<Weight, Weight> trivial_bounds() const {
    return {total_demand_, total_demand_ + max_edge_weight_};
  }

  bool is_tree() const { return edges_.size() + 1 == vertices_.size(); }

  Instance with_variant(Variant v) const {
    Instance copy(*this);
    copy.variant_ = v;
    return copy;
  }

  nlohmann::json to_json() const {
    nlohmann::json jv = nlohmann::json::array();
    for (const auto& v : vertices_) jv.push_back({{"id", v.id}, {"weight", v.weight}});
    nlohmann::json je = nlohmann::json::array();
    for (const auto& e : edges_)
      je.push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}, {"weight", e.weight}});
    return nlohmann::json{{"variant", variant_name(variant_)},
                          {"start", start_},
                          {"vertices", std::move(jv)},
                          {"edges", std::move(je)}};
  }

  static Instance from_json(const nlohmann::json& j);

 private:
  void validate();

  std::vector<VertexSpec> vertices_;
  std::vector<EdgeSpec> edges_;
  std::string start_;
  Variant variant_;

  int start_index_ = -1;
  Weight total_demand_ = 0;
  Weight max_edge_weight_ = 0;
  std::unordered_map<std::string, int> vertex_by_id_;
  std::unordered_map<std::string, int> edge_by_id_;
  std::vector<std::pair<int, int>> endpoints_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
};

namespace detail {

inline Weight checked_weight_sum(Weight a, Weight b, const char* what) {
  Weight out = 0;
  if (__builtin_add_overflow(a, b, &out))
    throw ValidationError(std::string("weight overflow while computing ") + what);
  return out;
}

inline const nlohmann::json& require_field(const nlohmann::json& j,
                                           const char* key,
                                           const std::string& where) {
  auto it = j.find(key);
  if (it == j.end())
    throw ValidationError(where + ": missing field '" + key + "'");
  return *it;
}

inline void reject_unknown_fields(const nlohmann::json& j,
                                  std::initializer_list<const char*> allowed,
                                  const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || (it.key() == a);
    if (!ok)
      throw ValidationError(where + ": unknown field '" + it.key() + "'");
  }
}

inline std::string get_string(const nlohmann::json& j, const char* key,
                              const std::string& where) {
  const auto& f = require_field(j, key, where);
  if (!f.is_string())
    throw ValidationError(where + ": field '" + key + "' must be a string");
  return f.get<std::string>();
}

inline Weight get_weight(const nlohmann::json& j, const char* key,
                         const std::string& where) {
  const auto& f = require_field(j, key, where);
  if (!f.is_number_integer())
    throw ValidationError(where + ": field '" + key + "' must be an integer");
  if (f.is_number_unsigned() &&
      f.get<std::uint64_t>() >
          static_cast<std::uint64_t>(std::numeric_limits<Weight>::max()))
    throw ValidationError(where + ": field '" + key + "' out of range");
  return f.get<Weight>();
}

}  // namespace detail

inline void Instance::validate() {
  if (vertices_.empty()) throw ValidationError("instance has no vertices");

  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const auto& v = vertices_[i];
    if (v.id.empty()) throw ValidationError("vertex with empty id");
    if (v.weight < 0)
      throw ValidationError("vertex '" + v.id + "': negative weight");
    if (!vertex_by_id_.emplace(v.id, static_cast<int>(i)).second)
      throw ValidationError("duplicate vertex id '" + v.id + "'");
    total_demand_ = detail::checked_weight_sum(total_demand_, v.weight,
                                               "total demand");
  }

  adjacency_.resize(vertices_.size());
  endpoints_.reserve(edges_.size());
  std::unordered_map<std::string, std::string> seen_pairs;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.id.empty()) throw ValidationError("edge with empty id");
    if (e.weight < 0)
      throw ValidationError("edge '" + e.id + "': negative weight");
    if (!edge_by_id_.emplace(e.id, static_cast<int>(i)).second)
      throw ValidationError("duplicate edge id '" + e.id + "'");
    auto it_u = vertex_by_id_.find(e.u);
    auto it_v = vertex_by_id_.find(e.v);
    if (it_u == vertex_by_id_.end())
      throw ValidationError("edge '" + e.id + "': unknown endpoint '" + e.u + "'");
    if (it_v == vertex_by_id_.end())
      throw ValidationError("edge '" + e.id + "': unknown endpoint '" + e.v + "'");
    if (it_u->second == it_v->second)
      throw ValidationError("edge '" + e.id + "': self-loop at '" + e.u + "'");
    std::string key = e.u < e.v ? e.u + "\x1f" + e.v : e.v + "\x1f" + e.u;
    auto ins = seen_pairs.emplace(key, e.id);
    if (!ins.second)
      throw ValidationError("edge '" + e.id + "': duplicates edge '" +
                            ins.first->second + "' between '" + e.u +
                            "' and '" + e.v + "'");
    endpoints_.emplace_back(it_u->second, it_v->second);
    adjacency_[it_u->second].emplace_back(static_cast<int>(i), it_v->second);
    adjacency_[it_v->second].emplace_back(static_cast<int>(i), it_u->second);
    max_edge_weight_ = std::max(max_edge_weight_, e.weight);
  }
  detail::checked_weight_sum(total_demand_, max_edge_weight_, "trivial bounds");

  auto it_start = vertex_by_id_.find(start_);
  if (it_start == vertex_by_id_.end())
    throw ValidationError("start vertex '" + start_ + "' not found");
  start_index_ = it_start->second;

  std::vector<char> seen(vertices_.size(), 0);
  std::vector<int> stack{start_index_};
  seen[start_index_] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto [e, w] : adjacency_[v]) {
      (void)e;
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != vertices_.size()) {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (!seen[i])
        throw ValidationError("instance is disconnected: vertex '" +
                              vertices_[i].id + "' unreachable from '" +
                              start_ + "'");
  }
}

inline Instance Instance::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("instance: expected JSON object");
  detail::reject_unknown_fields(j, {"variant", "start", "vertices", "edges"},
                                "instance");
  Variant variant = parse_variant(detail::get_string(j, "variant", "instance"));
  std::string start = detail::get_string(j, "start", "instance");

  const auto& jv = detail::require_field(j, "vertices", "instance");
  if (!jv.is_array()) throw ValidationError("instance: 'vertices' must be an array");
  std::vector<VertexSpec> vertices;
  vertices.reserve(jv.size());
  for (std::size_t i = 0; i < jv.size(); ++i) {
    std::string where = "vertices[" + std::to_string(i) + "]";
    const auto& x = jv[i];
    if (!x.is_object()) throw ValidationError(where + ": expected object");
    detail::reject_unknown_fields(x, {"id", "weight"}, where);
    vertices.push_back({detail::get_string(x, "id", where),
                        detail::get_weight(x, "weight", where)});
  }

  const auto& je = detail::require_field(j, "edges", "instance");
  if (!je.is_array()) throw ValidationError("instance: 'edges' must be an array");
  std::vector<EdgeSpec> edges;
  edges.reserve(je.size());
  for (std::size_t i = 0; i < je.size(); ++i) {
    std::string where = "edges[" + std::to_string(i) + "]";
    const auto& x = je[i];
    if (!x.is_object()) throw ValidationError(where + ": expected object");
    detail::reject_unknown_fields(x, {"id", "u", "v", "weight"}, where);
    edges.push_back({detail::get_string(x, "id", where),
                     detail::get_string(x, "u", where),
                     detail::get_string(x, "v", where),
                     detail::get_weight(x, "weight", where)});
  }

  return Instance(std::move(vertices), std::move(edges), std::move(start),
                  variant);
}

inline Instance parse_instance(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  return Instance::from_json(j);
}

inline std::string serialize_instance(const Instance& inst) {
  return inst.to_json().dump(2) + "\n";
}

// A connected instance whose edges form a tree, rooted at the start vertex.
// Child lists are ordered by vertex id so traversals are deterministic.
class TreeInstance {
 public:
  explicit TreeInstance(Instance inst) : instance_(std::move(inst)) {
    if (!instance_.is_tree())
      throw ValidationError("instance contains a cycle: " +
                            std::to_string(instance_.edge_count()) +
                            " edges for " +
                            std::to_string(instance_.vertex_count()) +
                            " vertices");
    const std::size_t n = instance_.vertex_count();
    parent_.assign(n, -1);
    parent_edge_.assign(n, -1);
    depth_.assign(n, 0);
    children_.assign(n, {});
    bfs_order_.reserve(n);

    std::queue<int> q;
    std::vector<char> seen(n, 0);
    int root = instance_.start_index();
    q.push(root);
    seen[root] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      bfs_order_.push_back(v);
      for (auto [e, w] : instance_.incident(v)) {
        if (seen[w]) continue;
        seen[w] = 1;
        parent_[w] = v;
        parent_edge_[w] = e;
        depth_[w] = depth_[v] + 1;
        children_[v].push_back(w);
        q.push(w);
      }
    }
    std::vector<int> by_id(n);
    std::iota(by_id.begin(), by_id.end(), 0);
    std::sort(by_id.begin(), by_id.end(), [&](int a, int b) {
      return instance_.vertex_id(a) < instance_.vertex_id(b);
    });
    id_rank_.resize(n);
    for (std::size_t i = 0; i < n; ++i) id_rank_[by_id[i]] = static_cast<int>(i);
    for (auto& c : children_) {
      std::sort(c.begin(), c.end(),
                [&](int a, int b) { return id_rank_[a] < id_rank_[b]; });
    }
    for (std::size_t v = 0; v < n; ++v)
      if (children_[v].empty() && static_cast<int>(v) != root)
        leaves_.push_back(static_cast<int>(v));
  }

  const Instance& instance() const { return instance_; }
  Variant variant() const { return instance_.variant(); }
  int root() const { return instance_.start_index(); }
  int parent(int v) const { return parent_[v]; }
  int parent_edge(int v) const { return parent_edge_[v]; }
  const std::vector<int>& children(int v) const { return children_[v]; }
  bool is_leaf(int v) const {
    return children_[v].empty() && v != root();
  }
  const std::vector<int>& leaves() const { return leaves_; }
  int depth(int v) const { return depth_[v]; }
  // Root-first order; process in reverse for bottom-up passes.
  const std::vector<int>& bfs_order() const { return bfs_order_; }

  std::size_t vertex_count() const { return instance_.vertex_count(); }
  Weight vertex_weight(int v) const { return instance_.vertex_weight(v); }
  Weight edge_weight(int e) const { return instance_.edge_weight(e); }
  const std::string& vertex_id(int v) const { return instance_.vertex_id(v); }
  const std::string& edge_id(int e) const { return instance_.edge_id(e); }
  int vertex_index(std::string_view id) const {
    return instance_.vertex_index(id);
  }
  Weight total_demand() const { return instance_.total_demand(); }
  // position of v among all vertices ordered by id
  const std::vector<int>& id_ranks() const { return id_rank_; }

 private:
  Instance instance_;
  std::vector<int> parent_;
  std::vector<int> parent_edge_;
  std::vector<int> depth_;
  std::vector<std::vector<int>> children_;
  std::vector<int> leaves_;
  std::vector<int> bfs_order_;
  std::vector<int> id_rank_;
};

inline TreeInstance as_tree(const Instance& inst) { return TreeInstance(inst); }

}  // namespace deploy
