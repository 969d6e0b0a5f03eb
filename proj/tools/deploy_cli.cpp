#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "deploy/generators.hpp"
#include "deploy/graph_solver.hpp"
#include "deploy/oracle.hpp"
#include "deploy/schedule.hpp"
#include "deploy/tree_solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNotATree = 3;
constexpr int kExitCapExceeded = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw deploy::ValidationError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

// Accumulates the report; prints either "key: value" lines or one JSON object.
class Report {
 public:
  explicit Report(bool as_json) : json_(as_json) {}

  template <typename T>
  void add(const std::string& key, const T& value) {
    obj_[key] = value;
  }

  void print(std::ostream& os) const {
    if (json_) {
      os << obj_.dump(2) << "\n";
      return;
    }
    for (const auto& [key, value] : obj_.items()) {
      if (value.is_string())
        os << key << ": " << value.get<std::string>() << "\n";
      else
        os << key << ": " << value.dump() << "\n";
    }
  }

 private:
  bool json_;
  nlohmann::ordered_json obj_;
};

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ",";
    out += p;
  }
  return out;
}

deploy::Variant variant_or(const std::string& flag, deploy::Variant fallback) {
  return flag.empty() ? fallback : deploy::parse_variant(flag);
}

std::vector<deploy::Weight> parse_weight_list(const std::string& text) {
  std::vector<deploy::Weight> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(static_cast<deploy::Weight>(std::stoll(item)));
  return out;
}

struct SolveArgs {
  std::string input;
  std::string method = "auto";
  std::string schedule_out;
  bool emit_schedule = false;
  bool dump_decomposition = false;
  bool json = false;
};

int run_solve(const SolveArgs& args) {
  deploy::Instance inst = deploy::parse_instance(read_file(args.input));
  bool use_tree = args.method == "tree" ||
                  (args.method == "auto" && inst.is_tree());
  if (args.method == "tree" && !inst.is_tree()) {
    std::cerr << "error: method 'tree' requires a tree instance ("
              << inst.edge_count() << " edges, " << inst.vertex_count()
              << " vertices)\n";
    return kExitNotATree;
  }

  deploy::SolveOptions opts;
  opts.emit_schedule = args.emit_schedule || !args.schedule_out.empty();

  Report report(args.json);
  deploy::Solution sol;
  std::string dump;
  if (use_tree) {
    deploy::TreeInstance tree = deploy::as_tree(inst);
    sol = inst.variant() == deploy::Variant::Return
              ? deploy::solve_return(tree, opts)
              : deploy::solve_noreturn(tree, opts);
    if (args.dump_decomposition)
      dump = deploy::dump_decomposition(tree,
                                        deploy::recursive_decomposition(tree));
    report.add("method", sol.method);
    report.add("total", sol.total);
  } else {
    deploy::ApproxSolution approx = deploy::solve_mst_approx(inst, opts);
    sol = std::move(approx.solution);
    if (args.dump_decomposition) {
      deploy::TreeInstance mst = deploy::minimum_spanning_tree(inst);
      dump = deploy::dump_decomposition(
          mst, deploy::recursive_decomposition(mst));
    }
    report.add("method", sol.method);
    report.add("total", sol.total);
    report.add("lower_bound", approx.lower_bound);
    report.add("ratio_certificate", approx.ratio_certificate);
  }
  report.add("end_vertex", sol.end_vertex);
  report.add("final_unsettled", sol.final_unsettled);
  if (args.emit_schedule) {
    if (args.json) {
      report.add("order", sol.visit_order);
      report.add("schedule", deploy::Schedule(*sol.schedule).to_json());
    } else {
      report.add("order", join(sol.visit_order));
      report.add("schedule", sol.schedule->to_json().dump());
    }
  }
  if (args.dump_decomposition) report.add("decomposition", dump);
  report.print(std::cout);
  if (!args.schedule_out.empty())
    write_file(args.schedule_out, deploy::serialize_schedule(*sol.schedule));
  return kExitOk;
}

struct ValidateArgs {
  std::string instance_path;
  std::string schedule_path;
  bool json = false;
};

int run_validate(const ValidateArgs& args) {
  deploy::Instance inst = deploy::parse_instance(read_file(args.instance_path));
  deploy::Schedule sched =
      deploy::parse_schedule(read_file(args.schedule_path));
  deploy::AgentCount count = deploy::count_agents(inst, sched);
  deploy::CoverageReport cov = deploy::verify_coverage(inst, sched);

  Report report(args.json);
  report.add("total", count.total);
  report.add("final_unsettled", count.final_unsettled);
  report.add("covered", cov.covered);
  report.add("ends_at_start", cov.ends_at_start);
  report.add("accepted", cov.accepted);
  if (!cov.missing.empty()) report.add("missing", cov.missing);
  report.print(std::cout);
  return cov.accepted ? kExitOk : kExitRejected;
}

struct OracleArgs {
  std::string input;
  int cap = 20;
  std::string witness_out;
  bool json = false;
};

int run_oracle(const OracleArgs& args) {
  deploy::Instance inst = deploy::parse_instance(read_file(args.input));
  Report report(args.json);
  deploy::Weight optimum = deploy::exact_min_agents(inst, args.cap);
  report.add("optimum", optimum);
  report.add("variant", deploy::variant_name(inst.variant()));
  if (!args.witness_out.empty()) {
    deploy::Schedule witness = deploy::exact_schedule(inst, args.cap);
    write_file(args.witness_out, deploy::serialize_schedule(witness));
    report.add("witness", args.witness_out);
  }
  report.print(std::cout);
  return kExitOk;
}

struct GenerateArgs {
  std::string family;
  int n = 4;
  int m = 4;
  std::uint64_t seed = 1;
  deploy::Weight weight_max = 8;
  double edge_prob = 0.5;
  std::string values = "3,5,7";
  deploy::Weight eps = 1;
  int elements = 0;
  std::string sets;
  std::string variant;
  std::string out;
};

deploy::XC3Input parse_xc3_sets(const GenerateArgs& args) {
  if (args.sets.empty()) return deploy::fig2_xc3_input();
  deploy::XC3Input input;
  input.element_count = args.elements;
  std::stringstream ss(args.sets);
  std::string triple;
  while (std::getline(ss, triple, ';')) {
    auto nums = parse_weight_list(triple);
    if (nums.size() != 3)
      throw deploy::ValidationError("set '" + triple +
                                    "' must have exactly 3 elements");
    input.sets.push_back({static_cast<int>(nums[0]),
                          static_cast<int>(nums[1]),
                          static_cast<int>(nums[2])});
  }
  return input;
}

int run_generate(const GenerateArgs& args) {
  using deploy::Variant;
  deploy::Instance inst = deploy::figure1_instance();
  if (args.family == "fig1") {
    inst = deploy::figure1_instance(variant_or(args.variant,
                                               Variant::NoReturn));
  } else if (args.family == "fig4") {
    inst = deploy::figure4_instance(variant_or(args.variant, Variant::Return))
               .instance();
  } else if (args.family == "star") {
    inst = deploy::star_instance(args.n,
                                 variant_or(args.variant, Variant::Return))
               .instance();
  } else if (args.family == "uniform-gap") {
    inst = deploy::uniform_gap_instance(parse_weight_list(args.values),
                                        args.eps,
                                        variant_or(args.variant,
                                                   Variant::Return))
               .instance();
  } else if (args.family == "zigzag") {
    inst = deploy::zigzag_instance(args.m,
                                   variant_or(args.variant, Variant::Return))
               .instance();
  } else if (args.family == "xc3") {
    inst = deploy::xc3_reduction(parse_xc3_sets(args),
                                 variant_or(args.variant, Variant::NoReturn));
  } else if (args.family == "random-tree") {
    inst = deploy::random_tree(args.n, args.seed, args.weight_max,
                               variant_or(args.variant, Variant::NoReturn))
               .instance();
  } else if (args.family == "random-graph") {
    inst = deploy::random_graph(args.n, args.edge_prob, args.seed,
                                args.weight_max,
                                variant_or(args.variant, Variant::NoReturn));
  } else {
    throw deploy::ValidationError("unknown family '" + args.family + "'");
  }
  std::string text = deploy::serialize_instance(inst);
  if (args.out.empty())
    std::cout << text << "\n";
  else
    write_file(args.out, text);
  return kExitOk;
}

struct BenchArgs {
  std::string family;
  std::string sizes = "16,32,64";
  int reps = 1;
  std::uint64_t seed = 1;
  deploy::Weight weight_max = 8;
  double edge_prob = 0.5;
  std::string variant;
  std::string out;
};

int run_bench(const BenchArgs& args) {
  using Clock = std::chrono::steady_clock;
  std::ostringstream csv;
  csv << "family,n,seed,total,solve_time_ns,schedule_len\n";
  for (deploy::Weight size : parse_weight_list(args.sizes)) {
    const int n = static_cast<int>(size);
    for (int rep = 0; rep < args.reps; ++rep) {
      const std::uint64_t seed = args.seed + static_cast<std::uint64_t>(rep);
      std::optional<deploy::TreeInstance> tree;
      std::optional<deploy::Instance> graph;
      if (args.family == "star") {
        tree = deploy::star_instance(
            n, variant_or(args.variant, deploy::Variant::Return));
      } else if (args.family == "zigzag") {
        tree = deploy::zigzag_instance(
            n, variant_or(args.variant, deploy::Variant::Return));
      } else if (args.family == "random-tree") {
        tree = deploy::random_tree(
            n, seed, args.weight_max,
            variant_or(args.variant, deploy::Variant::NoReturn));
      } else if (args.family == "random-graph") {
        graph = deploy::random_graph(
            n, args.edge_prob, seed, args.weight_max,
            variant_or(args.variant, deploy::Variant::NoReturn));
      } else {
        throw deploy::ValidationError(
            "bench supports star|zigzag|random-tree|random-graph, got '" +
            args.family + "'");
      }

      deploy::Weight total = 0;
      std::size_t schedule_len = 0;
      std::int64_t elapsed = 0;
      if (tree) {
        auto t0 = Clock::now();
        deploy::Solution sol =
            tree->variant() == deploy::Variant::Return
                ? deploy::solve_return(*tree)
                : deploy::solve_noreturn(*tree);
        elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
                      Clock::now() - t0)
                      .count();
        total = sol.total;
        schedule_len = deploy::emit_schedule(*tree, sol.visit_order,
                                             tree->variant())
                           .steps.size();
      } else {
        auto t0 = Clock::now();
        deploy::ApproxSolution approx = deploy::solve_mst_approx(*graph);
        elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
                      Clock::now() - t0)
                      .count();
        total = approx.solution.total;
        deploy::SolveOptions opts;
        opts.emit_schedule = true;
        schedule_len =
            deploy::solve_mst_approx(*graph, opts).solution.schedule->steps
                .size();
      }
      csv << args.family << "," << n << "," << seed << "," << total << ","
          << elapsed << "," << schedule_len << "\n";
    }
  }
  if (args.out.empty())
    std::cout << csv.str();
  else
    write_file(args.out, csv.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strategic deployment solver"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("input", solve_args.input, "instance file")->required();
  solve->add_option("--method", solve_args.method, "auto|tree|mst-approx")
      ->check(CLI::IsMember({"auto", "tree", "mst-approx"}));
  solve->add_flag("--emit-schedule", solve_args.emit_schedule,
                  "emit the full walk");
  solve->add_option("--schedule-out", solve_args.schedule_out,
                    "write the walk to a file");
  solve->add_flag("--dump-decomposition", solve_args.dump_decomposition,
                  "print the collected subtree structure");
  solve->add_flag("--json", solve_args.json, "JSON output");

  ValidateArgs validate_args;
  auto* validate =
      app.add_subcommand("validate", "re-count and check a schedule");
  validate->add_option("instance", validate_args.instance_path,
                       "instance file")
      ->required();
  validate->add_option("schedule", validate_args.schedule_path,
                       "schedule file")
      ->required();
  validate->add_flag("--json", validate_args.json, "JSON output");

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "exact optimum by state search");
  oracle->add_option("input", oracle_args.input, "instance file")->required();
  oracle->add_option("--cap", oracle_args.cap, "max vertex count");
  oracle->add_option("--witness", oracle_args.witness_out,
                     "write an optimal walk to a file");
  oracle->add_flag("--json", oracle_args.json, "JSON output");

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "emit a generated instance");
  gen->add_option("--family", gen_args.family,
                  "fig1|fig4|star|uniform-gap|zigzag|xc3|random-tree|random-"
                  "graph")
      ->required();
  gen->add_option("--n", gen_args.n, "size parameter");
  gen->add_option("--m", gen_args.m, "zigzag size parameter");
  gen->add_option("--seed", gen_args.seed, "random seed");
  gen->add_option("--weight-max", gen_args.weight_max, "max random weight");
  gen->add_option("--edge-prob", gen_args.edge_prob, "extra edge probability");
  gen->add_option("--values", gen_args.values, "uniform-gap edge weights");
  gen->add_option("--eps", gen_args.eps, "uniform-gap leaf weight");
  gen->add_option("--elements", gen_args.elements, "xc3 ground set size");
  gen->add_option("--sets", gen_args.sets,
                  "xc3 subsets, e.g. '1,2,3;4,5,6' (default: built-in sample)");
  gen->add_option("--variant", gen_args.variant, "return|no_return");
  gen->add_option("--out", gen_args.out, "output file (default stdout)");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "timing sweep, CSV output");
  bench->add_option("--family", bench_args.family,
                    "star|zigzag|random-tree|random-graph")
      ->required();
  bench->add_option("--sizes", bench_args.sizes, "comma-separated sizes");
  bench->add_option("--reps", bench_args.reps, "repetitions per size");
  bench->add_option("--seed", bench_args.seed, "base random seed");
  bench->add_option("--weight-max", bench_args.weight_max,
                    "max random weight");
  bench->add_option("--edge-prob", bench_args.edge_prob,
                    "extra edge probability");
  bench->add_option("--variant", bench_args.variant, "return|no_return");
  bench->add_option("--out", bench_args.out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (solve->parsed()) return run_solve(solve_args);
    if (validate->parsed()) return run_validate(validate_args);
    if (oracle->parsed()) return run_oracle(oracle_args);
    if (gen->parsed()) return run_generate(gen_args);
    return run_bench(bench_args);
  } catch (const deploy::OracleLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const deploy::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}
