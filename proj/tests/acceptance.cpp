// Acceptance checks, one pass/fail line each. Exit status is the number of
// failed checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "deploy/decomposition.hpp"
#include "deploy/generators.hpp"
#include "deploy/graph_solver.hpp"
#include "deploy/instance.hpp"
#include "deploy/oracle.hpp"
#include "deploy/schedule.hpp"
#include "deploy/tree_solver.hpp"

using namespace deploy;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Cross-cutting tallies for checks 7 and 8, fed by every solver run in the
// other checks.
struct Audit {
  long long totals = 0, bounds_bad = 0;
  long long walks = 0, walk_mismatches = 0;
  long long pairs = 0, pair_violations = 0;

  void solution(const Instance& inst, const Solution& sol) {
    ++totals;
    auto [lo, hi] = inst.trivial_bounds();
    if (sol.total < lo || sol.total > hi) ++bounds_bad;
    if (sol.schedule) {
      ++walks;
      if (count_agents(inst, *sol.schedule).total != sol.total)
        ++walk_mismatches;
    }
  }
  void pair(Weight no_return, Weight return_home) {
    ++pairs;
    if (no_return > return_home) ++pair_violations;
  }
};

Audit audit;

constexpr SolveOptions kEmit{.emit_schedule = true};

// Solve both variants with emission and feed the audit.
std::pair<Weight, Weight> solve_both(const Instance& inst) {
  TreeInstance tr(inst.with_variant(Variant::Return));
  TreeInstance tn(inst.with_variant(Variant::NoReturn));
  Solution r = solve_return(tr, kEmit);
  Solution nr = solve_noreturn(tn, kEmit);
  audit.solution(tr.instance(), r);
  audit.solution(tn.instance(), nr);
  audit.pair(nr.total, r.total);
  return {nr.total, r.total};
}

struct Line {
  bool ok = false;
  std::string text;
};

Line check1() {
  auto t0 = Clock::now();
  Instance f1n = figure1_instance();
  Instance f1r = figure1_instance(Variant::Return);
  auto [nr, r] = solve_both(f1n);
  bool ok = nr == 23 && r == 25;
  ok = ok && exact_min_agents(f1n) == 23 && exact_min_agents(f1r) == 25;
  AgentCount walk = count_agents(f1n, figure1_walkthrough_schedule());
  ok = ok && walk.total == 23 && walk.final_unsettled == 4;
  double dt = seconds_since(t0);
  ok = ok && dt < 1.0;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "branching fixture: no-return %lld, return %lld, walkthrough "
                "%lld with %lld stranded (%.3fs)",
                static_cast<long long>(nr), static_cast<long long>(r),
                static_cast<long long>(walk.total),
                static_cast<long long>(walk.final_unsettled), dt);
  return {ok, buf};
}

Line check2() {
  auto t0 = Clock::now();
  TreeInstance f4 = figure4_instance();
  Solution r = solve_return(f4, kEmit);
  audit.solution(f4.instance(), r);
  std::vector<std::pair<Weight, Weight>> trace = {
      {41, 0}, {27, 0}, {19, 0}, {11, 0}, {2, 0}, {7, 5}, {5, 5}};
  bool ok = r.total == 46 && r.trace == trace;

  TreeInstance f4n = figure4_instance(Variant::NoReturn);
  Solution nr = solve_noreturn(f4n, kEmit);
  audit.solution(f4n.instance(), nr);
  audit.pair(nr.total, r.total);
  ok = ok && nr.total == 41 && nr.end_vertex == "b5";

  Decomposition dec = recursive_decomposition(f4);
  std::vector<Weight> xs;
  for (int n : dec.top()) xs.push_back(dec.nodes[n].x);
  ok = ok && xs == std::vector<Weight>{12, 10, 9, 7, 4};

  auto log = annotation_log(f4, dec);
  auto has = [&](const char* s) {
    return std::find(log.begin(), log.end(), s) != log.end();
  };
  ok = ok && has("T(b7,b6)^{12,8}") && has("T(b5)^{7,9}");

  double dt = seconds_since(t0);
  ok = ok && dt < 1.0;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "exploration fixture: return %lld traced, no-return %lld "
                "ending at %s, collection order 12,10,9,7,4 (%.3fs)",
                static_cast<long long>(r.total),
                static_cast<long long>(nr.total), nr.end_vertex.c_str(), dt);
  return {ok, buf};
}

Line check3() {
  auto t0 = Clock::now();
  XC3Input yes = fig2_xc3_input();
  Instance solvable = xc3_reduction(yes, Variant::NoReturn);
  Weight tight = exact_min_agents(solvable);
  bool ok = has_exact_cover(yes) && tight == 19;

  XC3Input no = fig2_nocover_input();
  Instance stuck = xc3_reduction(no, Variant::NoReturn);
  Weight loose = exact_min_agents(stuck);
  ok = ok && !has_exact_cover(no) && loose >= 20;

  for (const Instance* inst : {&solvable, &stuck}) {
    ApproxSolution a = solve_mst_approx(*inst, kEmit);
    audit.solution(*inst, a.solution);
  }

  double dt = seconds_since(t0);
  ok = ok && dt < 60.0;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "cover gadget: solvable input needs %lld = demand, no-cover "
                "input needs %lld > demand (%.3fs)",
                static_cast<long long>(tight), static_cast<long long>(loose),
                dt);
  return {ok, buf};
}

Line check4() {
  auto t0 = Clock::now();
  bool ok = true;
  for (int n = 1; n <= 50; ++n) {
    TreeInstance s = star_instance(n);
    auto [nr, r] = solve_both(s.instance());
    (void)nr;
    ok = ok && r == n + 1;
    if (n <= 12) ok = ok && exact_min_agents(s.instance()) == n + 1;
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "stars: return total is n+1 for n=1..50, oracle-checked to "
                "n=12 (%.3fs)",
                seconds_since(t0));
  return {ok, buf};
}

Line check5() {
  auto t0 = Clock::now();
  int mismatches = 0;
  const int cases = 1000;
  for (int seed = 1; seed <= cases; ++seed) {
    int n = 1 + seed % 10;
    TreeInstance t = random_tree(n, 31337 + seed, 8);
    auto [nr, r] = solve_both(t.instance());
    if (exact_min_agents(t.instance().with_variant(Variant::NoReturn)) != nr)
      ++mismatches;
    if (exact_min_agents(t.instance().with_variant(Variant::Return)) != r)
      ++mismatches;
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%d random trees: %d solver/oracle mismatches across both "
                "variants (%.3fs)",
                cases, mismatches, seconds_since(t0));
  return {mismatches == 0, buf};
}

Line check6() {
  auto t0 = Clock::now();
  int violations = 0;
  const int cases = 500;
  for (int seed = 1; seed <= cases; ++seed) {
    int n = 2 + seed % 8;
    double p = 0.2 * (1 + seed % 4);
    Weight approx_total[2] = {0, 0};
    int side = 0;
    for (Variant variant : {Variant::NoReturn, Variant::Return}) {
      Instance g = random_graph(n, p, 51000 + seed, 7, variant);
      ApproxSolution a = solve_mst_approx(g, kEmit);
      audit.solution(g, a.solution);
      approx_total[side++] = a.solution.total;
      Weight exact = exact_min_agents(g);
      bool sane = a.lower_bound <= exact && exact <= a.solution.total &&
                  a.solution.total <= 2 * exact;
      if (!sane) ++violations;
    }
    audit.pair(approx_total[0], approx_total[1]);
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%d random graphs: %d two-approximation violations across "
                "both variants (%.3fs)",
                cases, violations, seconds_since(t0));
  return {violations == 0, buf};
}

Line check9() {
  auto t0 = Clock::now();
  TreeInstance big = random_tree(100000, 424242, 8);
  auto time_solver = [](const TreeInstance& t, bool return_home, int reps) {
    double best = 1e18;
    for (int i = 0; i < reps; ++i) {
      auto s0 = Clock::now();
      Weight total =
          return_home ? solve_return(t).total : solve_noreturn(t).total;
      double dt = seconds_since(s0);
      if (total < 0) std::abort();  // keep the call alive
      best = std::min(best, dt);
    }
    return best;
  };
  double big_return = time_solver(big, true, 1);
  double big_noreturn = time_solver(big, false, 1);
  bool ok = big_return < 5.0 && big_noreturn < 5.0;

  const std::vector<int> sizes = {1 << 14, 1 << 15, 1 << 16, 1 << 17};
  std::vector<double> tr, tn;
  for (int n : sizes) {
    TreeInstance t = random_tree(n, 77, 8);
    tr.push_back(time_solver(t, true, 5));
    tn.push_back(time_solver(t, false, 5));
  }
  auto geomean_ratio = [](const std::vector<double>& v) {
    double acc = 1.0;
    for (std::size_t i = 1; i < v.size(); ++i) acc *= v[i] / v[i - 1];
    return std::pow(acc, 1.0 / static_cast<double>(v.size() - 1));
  };
  double growth_r = geomean_ratio(tr);
  double growth_n = geomean_ratio(tn);
  ok = ok && growth_r <= 2.4 && growth_n <= 2.4;

  char buf[320];
  std::snprintf(buf, sizeof buf,
                "scale: 1e5 vertices solved in %.3fs return / %.3fs "
                "no-return; doubling growth x%.2f / x%.2f per step "
                "(best of 5, 2^14..2^17) (%.3fs)",
                big_return, big_noreturn, growth_r, growth_n,
                seconds_since(t0));
  return {ok, buf};
}

Line check10() {
  auto t0 = Clock::now();
  const std::vector<int> ms = {4, 8, 16, 32, 64};
  bool ok = true;
  std::vector<double> lx, ly;
  std::size_t len_small = 0, len_large = 0;
  for (int m : ms) {
    TreeInstance z = zigzag_instance(m);
    Solution r = solve_return(z, kEmit);
    audit.solution(z.instance(), r);
    ok = ok && r.total == m + 1;
    std::size_t len = r.schedule->steps.size();
    if (m == ms.front()) len_small = len;
    if (m == ms.back()) len_large = len;
    lx.push_back(std::log(static_cast<double>(m)));
    ly.push_back(std::log(static_cast<double>(len)));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
  mx /= static_cast<double>(lx.size());
  my /= static_cast<double>(ly.size());
  double num = 0, den = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  double slope = num / den;
  ok = ok && slope >= 1.8;

  for (int m : {4, 5, 6})
    ok = ok && exact_min_agents(zigzag_instance(m).instance()) == m + 1;

  char buf[320];
  std::snprintf(buf, sizeof buf,
                "zigzag: walk length grows with exponent %.2f (m=4: %zu "
                "steps, m=64: %zu) while the optimum stays m+1, "
                "oracle-checked to m=6 (%.3fs)",
                slope, len_small, len_large, seconds_since(t0));
  return {ok, buf};
}

Line check7() {
  bool ok = audit.bounds_bad == 0 && audit.pair_violations == 0 &&
            audit.totals > 0 && audit.pairs > 0;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "invariants: %lld totals within [N, N+max_w] (%lld bad), "
                "%lld variant pairs ordered (%lld bad)",
                audit.totals, audit.bounds_bad, audit.pairs,
                audit.pair_violations);
  return {ok, buf};
}

Line check8() {
  bool ok = audit.walk_mismatches == 0 && audit.walks > 0;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "closed loop: %lld emitted walks recounted to their reported "
                "totals (%lld mismatches)",
                audit.walks, audit.walk_mismatches);
  return {ok, buf};
}

}  // namespace

int main() {
  Line lines[11];
  auto run = [&](int idx, Line (*fn)()) {
    try {
      lines[idx] = fn();
    } catch (const std::exception& e) {
      lines[idx] = {false, std::string("unexpected exception: ") + e.what()};
    }
  };
  run(1, check1);
  run(2, check2);
  run(3, check3);
  run(4, check4);
  run(5, check5);
  run(6, check6);
  run(9, check9);
  run(10, check10);
  run(7, check7);  // tallies from everything above
  run(8, check8);

  int failed = 0;
  for (int i = 1; i <= 10; ++i) {
    if (!lines[i].ok) ++failed;
    std::printf("[%s] %2d: %s\n", lines[i].ok ? "PASS" : "FAIL", i,
                lines[i].text.c_str());
  }
  return failed;
}
