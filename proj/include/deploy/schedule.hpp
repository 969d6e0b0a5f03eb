#pragma once

// Schedules (explicit walks) and agent accounting. A walk starts at the
// instance's start vertex; every step names the edge taken and the endpoint
// arrived at. count_agents computes the minimal crew for which the walk is
// feasible: curr tracks the unsettled agents of a hypothetical crew of
// N + add, and add grows whenever an edge demands more than is available.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "deploy/instance.hpp"

namespace deploy {

struct ScheduleStep {
  std::string edge;
  std::string to;
  bool operator==(const ScheduleStep&) const = default;
};

struct Schedule {
  std::string start;
  std::vector<ScheduleStep> steps;
  bool operator==(const Schedule&) const = default;

  nlohmann::json to_json() const {
    nlohmann::json js = nlohmann::json::array();
    for (const auto& s : steps) js.push_back({{"edge", s.edge}, {"to", s.to}});
    return nlohmann::json{{"start", start}, {"steps", std::move(js)}};
  }

  static Schedule from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("schedule: expected JSON object");
    detail::reject_unknown_fields(j, {"start", "steps"}, "schedule");
    Schedule out;
    out.start = detail::get_string(j, "start", "schedule");
    const auto& js = detail::require_field(j, "steps", "schedule");
    if (!js.is_array())
      throw ValidationError("schedule: 'steps' must be an array");
    out.steps.reserve(js.size());
    for (std::size_t i = 0; i < js.size(); ++i) {
      std::string where = "steps[" + std::to_string(i) + "]";
      const auto& x = js[i];
      if (!x.is_object()) throw ValidationError(where + ": expected object");
      detail::reject_unknown_fields(x, {"edge", "to"}, where);
      out.steps.push_back({detail::get_string(x, "edge", where),
                           detail::get_string(x, "to", where)});
    }
    return out;
  }
};

inline Schedule parse_schedule(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  return Schedule::from_json(j);
}

inline std::string serialize_schedule(const Schedule& s) {
  return s.to_json().dump(2) + "\n";
}

struct AgentCount {
  Weight total = 0;            // minimal feasible crew size
  Weight add = 0;              // agents beyond the demand floor N
  Weight final_unsettled = 0;  // unsettled agents after the last step
  // (curr, add) after each processed element (start vertex, then each step).
  std::vector<std::pair<Weight, Weight>> trace;
};

namespace detail {

// Checks the walk shape and resolves ids; returns per-step (edge, to) indices.
inline std::vector<std::pair<int, int>> resolve_walk(const Instance& inst,
                                                     const Schedule& s) {
  if (s.start != inst.start())
    throw ValidationError("schedule starts at '" + s.start +
                          "' but instance starts at '" + inst.start() + "'");
  std::vector<std::pair<int, int>> out;
  out.reserve(s.steps.size());
  int at = inst.start_index();
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    const auto& step = s.steps[i];
    std::string where = "steps[" + std::to_string(i) + "]";
    int e = inst.edge_index(step.edge);
    int to = inst.vertex_index(step.to);
    auto [a, b] = inst.edge_endpoints(e);
    if (to != a && to != b)
      throw ValidationError(where + ": edge '" + step.edge +
                            "' does not reach '" + step.to + "'");
    int from = (to == a) ? b : a;
    if (from != at)
      throw ValidationError(where + ": edge '" + step.edge +
                            "' is not incident to current vertex '" +
                            inst.vertex_id(at) + "'");
    out.emplace_back(e, to);
    at = to;
  }
  return out;
}

}  // namespace detail

inline AgentCount count_agents(const Instance& inst, const Schedule& s) {
  auto walk = detail::resolve_walk(inst, s);
  std::vector<char> visited(inst.vertex_count(), 0);
  AgentCount out;
  Weight curr = inst.total_demand();
  Weight add = 0;

  auto settle = [&](int v) {
    if (visited[v]) return;
    visited[v] = 1;
    Weight w = inst.vertex_weight(v);
    if (curr < w) {
      add += w - curr;
      curr = 0;
    } else {
      curr -= w;
    }
  };

  settle(inst.start_index());
  out.trace.emplace_back(curr, add);
  for (auto [e, to] : walk) {
    Weight w = inst.edge_weight(e);
    if (curr < w) {
      add += w - curr;
      curr = w;
    }
    settle(to);
    out.trace.emplace_back(curr, add);
  }
  out.total = inst.total_demand() + add;
  out.add = add;
  out.final_unsettled = curr;
  return out;
}

struct CoverageReport {
  bool covered = false;
  std::vector<std::string> missing;  // vertex ids never visited
  bool ends_at_start = false;
  bool accepted = false;  // verdict under the instance's variant
};

inline CoverageReport verify_coverage(const Instance& inst, const Schedule& s) {
  auto walk = detail::resolve_walk(inst, s);
  std::vector<char> visited(inst.vertex_count(), 0);
  visited[inst.start_index()] = 1;
  int at = inst.start_index();
  for (auto [e, to] : walk) {
    (void)e;
    visited[to] = 1;
    at = to;
  }
  CoverageReport rep;
  for (std::size_t v = 0; v < inst.vertex_count(); ++v)
    if (!visited[v]) rep.missing.push_back(inst.vertex_id(static_cast<int>(v)));
  rep.covered = rep.missing.empty();
  rep.ends_at_start = (at == inst.start_index());
  rep.accepted = rep.covered && (inst.variant() == Variant::NoReturn ||
                                 rep.ends_at_start);
  return rep;
}

struct ReplayResult {
  bool feasible = false;
  std::ptrdiff_t failed_step = -1;  // -1: no step failed
  std::string reason;
};

// Simulates the walk with exactly k agents. k must cover the full demand N
// (the crew is deployed for the whole task, whether or not this walk
// finishes it); with that floor, feasibility is equivalent to
// count_agents(inst, s).total <= k.
inline ReplayResult replay_fixed(const Instance& inst, const Schedule& s,
                                 Weight k) {
  auto walk = detail::resolve_walk(inst, s);
  if (k < inst.total_demand())
    return {false, -1, "crew smaller than total demand"};
  std::vector<char> visited(inst.vertex_count(), 0);
  Weight unsettled = k;

  auto settle = [&](int v) -> bool {
    if (visited[v]) return true;
    visited[v] = 1;
    if (unsettled < inst.vertex_weight(v)) return false;
    unsettled -= inst.vertex_weight(v);
    return true;
  };

  if (!settle(inst.start_index()))
    return {false, -1, "cannot garrison start vertex"};
  for (std::size_t i = 0; i < walk.size(); ++i) {
    auto [e, to] = walk[i];
    if (unsettled < inst.edge_weight(e))
      return {false, static_cast<std::ptrdiff_t>(i),
              "group too small for edge '" + inst.edge_id(e) + "'"};
    if (!settle(to))
      return {false, static_cast<std::ptrdiff_t>(i),
              "group too small to garrison '" + inst.vertex_id(to) + "'"};
  }
  return {true, -1, ""};
}

}  // namespace deploy
