#include <set>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "deploy/generators.hpp"
#include "deploy/graph_solver.hpp"
#include "deploy/oracle.hpp"
#include "deploy/schedule.hpp"
#include "support.hpp"

using namespace deploy;
using testsupport::brute_mst_weight;
using testsupport::quick_instance;

namespace {

Weight tree_weight(const TreeInstance& t) {
  Weight sum = 0;
  const Instance& inst = t.instance();
  for (std::size_t e = 0; e < inst.edge_count(); ++e)
    sum += inst.edge_weight(static_cast<int>(e));
  return sum;
}

}  // namespace

TEST_CASE("spanning tree weight matches exhaustive enumeration") {
  for (int seed = 0; seed < 60; ++seed) {
    Instance g = random_graph(2 + seed % 5, 0.6, 400 + seed, 9);
    if (g.edge_count() > 12) continue;
    TreeInstance mst = minimum_spanning_tree(g);
    CHECK(mst.vertex_count() == g.vertex_count());
    CHECK(mst.instance().edge_count() == g.vertex_count() - 1);
    CHECK(tree_weight(mst) == brute_mst_weight(g));
  }
}

TEST_CASE("tie-broken spanning tree is deterministic") {
  // all weights equal: kruskal keeps the first-listed edges that connect
  Instance g = quick_instance({{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}},
                              {{"e1", "a", "b", 2},
                               {"e2", "b", "c", 2},
                               {"e3", "c", "d", 2},
                               {"e4", "d", "a", 2},
                               {"e5", "a", "c", 2}},
                              "a", Variant::Return);
  TreeInstance mst = minimum_spanning_tree(g);
  std::set<std::string> ids;
  for (std::size_t e = 0; e < mst.instance().edge_count(); ++e)
    ids.insert(mst.instance().edge_id(static_cast<int>(e)));
  CHECK(ids == std::set<std::string>{"e1", "e2", "e3"});

  TreeInstance again = minimum_spanning_tree(g);
  CHECK(serialize_instance(again.instance()) ==
        serialize_instance(mst.instance()));
}

TEST_CASE("a tree instance is its own spanning tree") {
  Instance t = figure4_instance().instance();
  TreeInstance mst = minimum_spanning_tree(t);
  std::set<std::string> want, got;
  for (std::size_t e = 0; e < t.edge_count(); ++e)
    want.insert(t.edge_id(static_cast<int>(e)));
  for (std::size_t e = 0; e < mst.instance().edge_count(); ++e)
    got.insert(mst.instance().edge_id(static_cast<int>(e)));
  CHECK(got == want);

  ApproxSolution a = solve_mst_approx(t);
  CHECK(a.solution.total == solve_return(figure4_instance()).total);
  CHECK(a.solution.method == "mst-approx");
}

TEST_CASE("the spanning-tree route stays within twice the optimum") {
  int checked = 0;
  for (int seed = 0; seed < 80; ++seed) {
    for (Variant variant : {Variant::Return, Variant::NoReturn}) {
      Instance g =
          random_graph(2 + seed % 7, 0.5, 600 + seed, 7, variant);
      ApproxSolution a = solve_mst_approx(g, {.emit_schedule = true});
      Weight exact = exact_min_agents(g);
      CHECK(a.lower_bound <= exact);
      CHECK(exact <= a.solution.total);
      CHECK(a.solution.total <= 2 * exact);
      CHECK(a.ratio_certificate ==
            (a.lower_bound > 0
                 ? static_cast<double>(a.solution.total) / a.lower_bound
                 : 1.0));

      REQUIRE(a.solution.schedule.has_value());
      AgentCount ac = count_agents(g, *a.solution.schedule);
      CHECK(ac.total == a.solution.total);
      CHECK(verify_coverage(g, *a.solution.schedule).accepted);
      ++checked;
    }
  }
  CHECK(checked == 160);
}

TEST_CASE("depth-first baseline emits a valid round trip") {
  for (int seed = 0; seed < 40; ++seed) {
    Instance g = random_graph(2 + seed % 8, 0.4, 800 + seed, 6,
                              Variant::Return);
    Solution d = dfs_baseline(g);
    CHECK(d.method == "dfs");
    CHECK(d.end_vertex == g.start());
    REQUIRE(d.schedule.has_value());
    AgentCount ac = count_agents(g, *d.schedule);
    CHECK(ac.total == d.total);
    CoverageReport rep = verify_coverage(g, *d.schedule);
    CHECK(rep.covered);
    CHECK(rep.ends_at_start);
    CHECK(d.total <= g.total_demand() + g.max_edge_weight());
    CHECK(d.total >= g.total_demand());
  }
}

TEST_CASE("zero-weight instances need no agents") {
  Instance g = quick_instance(
      {{"a", 0}, {"b", 0}, {"c", 0}},
      {{"e1", "a", "b", 0}, {"e2", "b", "c", 0}, {"e3", "a", "c", 0}}, "a",
      Variant::Return);
  CHECK(solve_mst_approx(g).solution.total == 0);
  CHECK(dfs_baseline(g).total == 0);
  CHECK(exact_min_agents(g) == 0);
}
