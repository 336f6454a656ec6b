#include "alds/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "alds/cnf.hpp"
#include "alds/experiment.hpp"
#include "alds/heuristics.hpp"
#include "alds/search.hpp"
#include "alds/treemodel.hpp"

namespace alds::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HeuristicFlags {
  std::string name = "wix";
  int iterations = 3;
  double gamma = 3.3;
  bool no_failed_literals = false;

  void attach(CLI::App& app) {
    app.add_option("--heuristic", name, "Clause weight: w0x, w1plus, w1x or wix")
        ->check(CLI::IsMember({"w0x", "w1plus", "w1x", "wix"}))
        ->capture_default_str();
    app.add_option("--iterations", iterations, "Weight iterations for wix")
        ->check(CLI::Range(0, HeuristicConfig::kMaxIterations))
        ->capture_default_str();
    app.add_option("--gamma", gamma, "Binary clause weight")->capture_default_str();
    app.add_flag("--no-failed-literals", no_failed_literals, "Disable failed literal detection");
  }

  HeuristicConfig config() const {
    HeuristicConfig c = HeuristicConfig::preset(name, iterations);
    c.gamma = gamma;
    c.failed_literal_detection = !no_failed_literals;
    c.validate();
    return c;
  }
};

struct OutputFlags {
  std::string path;
  std::string format = "csv";

  void attach(CLI::App& app) {
    app.add_option("-o,--output", path, "Output file (default: stdout)");
    app.add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  }

  // Writes `body` to the chosen destination.
  void emit(std::ostream& out, const std::string& body) const {
    if (path.empty() || path == "-") {
      out << body;
      return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << body;
  }
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + tok + "'");
    }
    if (used != tok.size()) throw UsageError("not a number: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

std::string fixed(double v, int precision) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(precision) << v;
  return ss.str();
}

unsigned default_jobs() {
  if (const char* env = std::getenv("ALDS_JOBS")) {
    try {
      return static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      throw UsageError(std::string("ALDS_JOBS is not a number: ") + env);
    }
  }
  return 1;
}

// ---------------------------------------------------------------- solve

struct SolveCmd {
  std::string file;
  std::string strategy = "alds";
  int jump_depth = 8;
  std::uint64_t budget = 100'000'000;
  bool no_skip_dead = false;
  HeuristicFlags heuristic;
  std::string format = "dimacs";

  void attach(CLI::App& app) {
    app.add_option("file", file, "DIMACS CNF file ('-' for stdin)")->required();
    app.add_option("--strategy", strategy, "dfs, lds, ilds, dds or alds")
        ->check(CLI::IsMember({"dfs", "lds", "ilds", "dds", "alds"}))
        ->capture_default_str();
    app.add_option("--jump-depth", jump_depth, "Levels ordered by the strategy")
        ->check(CLI::Range(0, kMaxLdsDepth))
        ->capture_default_str();
    app.add_option("--budget", budget, "Maximum node expansions")->capture_default_str();
    app.add_flag("--no-skip-dead", no_skip_dead, "Re-enter subtrees below known dead prefixes");
    app.add_option("--format", format, "dimacs or json")
        ->check(CLI::IsMember({"dimacs", "json"}))
        ->capture_default_str();
    heuristic.attach(app);
  }

  int run(std::ostream& out, std::ostream& err) const {
    DimacsFile input = [&] {
      try {
        return parse_dimacs(read_input(file));
      } catch (const ParseError& e) {
        throw UsageError(file + ": " + e.what());
      }
    }();
    if (input.tautologies_removed > 0)
      err << "c removed " << input.tautologies_removed << " tautological clause(s)\n";
    SolveOptions opt;
    opt.heuristic = heuristic.config();
    opt.strategy = parse_strategy(strategy);
    opt.jump_depth = jump_depth;
    opt.budget = budget;
    opt.skip_dead_prefixes = !no_skip_dead;
    SolveReport r;
    try {
      r = solve(input.formula, opt);
    } catch (const UnsupportedWidth& e) {
      throw UsageError(e.what());
    }
    if (r.status == SolveStatus::Sat && !satisfies(input.raw_clauses, r.model)) {
      err << "c internal error: model does not satisfy the input\n";
      return kExitUsage;
    }

    if (format == "json") {
      json j = {{"status", to_string(r.status)},
                {"strategy", strategy},
                {"jump_depth", jump_depth},
                {"heuristic", opt.heuristic.name()},
                {"nodes_expanded", r.nodes_expanded},
                {"subtrees_entered", r.subtrees_entered}};
      j["rank_of_first_solution"] =
          r.rank_of_first_solution ? json(*r.rank_of_first_solution) : json(nullptr);
      if (r.status == SolveStatus::Sat) {
        std::vector<long> model;
        for (Var v = 1; v <= input.formula.num_vars(); ++v)
          model.push_back(r.model[v] ? static_cast<long>(v) : -static_cast<long>(v));
        j["model"] = model;
      }
      out << j.dump() << '\n';
    } else {
      out << "c strategy=" << strategy << " jump_depth=" << jump_depth
          << " heuristic=" << opt.heuristic.name() << '\n';
      out << "c nodes_expanded=" << r.nodes_expanded << " subtrees_entered=" << r.subtrees_entered;
      if (r.rank_of_first_solution) out << " rank_of_first_solution=" << *r.rank_of_first_solution;
      out << '\n';
      switch (r.status) {
        case SolveStatus::Sat: {
          out << "s SATISFIABLE\n";
          std::string line = "v";
          for (Var v = 1; v <= input.formula.num_vars(); ++v) {
            const std::string lit = " " + std::to_string(r.model[v] ? static_cast<long>(v)
                                                                     : -static_cast<long>(v));
            if (line.size() + lit.size() > 78) {
              out << line << '\n';
              line = "v";
            }
            line += lit;
          }
          out << line << " 0\n";
          break;
        }
        case SolveStatus::Unsat: out << "s UNSATISFIABLE\n"; break;
        case SolveStatus::BudgetExhausted: out << "s UNKNOWN\n"; break;
      }
    }
    switch (r.status) {
      case SolveStatus::Sat: return kExitSat;
      case SolveStatus::Unsat: return kExitUnsat;
      case SolveStatus::BudgetExhausted: return kExitBudget;
    }
    return kExitUsage;
  }
};

// ---------------------------------------------------------------- gen

struct GenCmd {
  Var vars = 100;
  std::size_t clauses = 0;
  double ratio = 4.26;
  std::size_t width = 3;
  std::uint64_t seed = 1;
  std::string path;
  CLI::Option* clauses_opt = nullptr;

  void attach(CLI::App& app) {
    app.add_option("-n,--vars", vars, "Variables")->capture_default_str();
    clauses_opt = app.add_option("-m,--clauses", clauses, "Clauses (overrides --ratio)");
    app.add_option("--ratio", ratio, "Clauses-to-variables ratio")->capture_default_str();
    app.add_option("-k,--width", width, "Clause width")->capture_default_str();
    app.add_option("--seed", seed, "Generator seed")->capture_default_str();
    app.add_option("-o,--output", path, "Output file (default: stdout)");
  }

  int run(std::ostream& out, std::ostream&) const {
    const std::size_t m = clauses_opt->count() > 0 ? clauses : clause_count(vars, ratio);
    Formula f;
    try {
      f = generate_uniform_ksat(vars, m, width, seed);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const std::vector<std::string> comments = {
        "generator seed=" + std::to_string(seed) + " n=" + std::to_string(vars) +
        " m=" + std::to_string(m) + " k=" + std::to_string(width) +
        " model=uniform-random-ksat prng=xorshift64*"};
    std::ostringstream ss;
    write_dimacs(ss, f, comments);
    OutputFlags{path, "csv"}.emit(out, ss.str());
    return kExitAnalysisOk;
  }
};

// ---------------------------------------------------------------- order

struct OrderCmd {
  std::string strategy = "alds";
  int depth = 8;

  void attach(CLI::App& app) {
    app.add_option("--strategy", strategy, "dfs, lds, ilds, dds or alds")
        ->check(CLI::IsMember({"dfs", "lds", "ilds", "dds", "alds"}))
        ->capture_default_str();
    app.add_option("--depth", depth, "Tree depth")
        ->check(CLI::Range(0, kMaxOrderDepth))
        ->capture_default_str();
  }

  int run(std::ostream& out, std::ostream&) const {
    std::string body;
    for (LeafIndex v : visit_order(parse_strategy(strategy), depth))
      body += std::to_string(v) + '\n';
    out << body;
    return kExitAnalysisOk;
  }
};

// ---------------------------------------------------------------- map

struct MapCmd {
  std::string file;
  int depth = 8;
  std::uint64_t budget = 100'000'000;
  HeuristicFlags heuristic;

  void attach(CLI::App& app) {
    app.add_option("file", file, "DIMACS CNF file ('-' for stdin)")->required();
    app.add_option("--depth", depth, "Jump depth")
        ->check(CLI::Range(0, kMaxOrderDepth))
        ->capture_default_str();
    app.add_option("--budget", budget, "Maximum node expansions")->capture_default_str();
    heuristic.attach(app);
  }

  int run(std::ostream& out, std::ostream& err) const {
    DimacsFile input = [&] {
      try {
        return parse_dimacs(read_input(file));
      } catch (const ParseError& e) {
        throw UsageError(file + ": " + e.what());
      }
    }();
    try {
      const SubtreeMap m = map_subtrees(input.formula, heuristic.config(), depth, budget);
      out << m.solutions.to_hex() << '\n';
      err << "c satisfiable_subtrees=" << m.solutions.count() << " live_subtrees="
          << m.live.count() << " nodes_expanded=" << m.nodes_expanded << '\n';
    } catch (const BudgetExhausted& e) {
      err << "c " << e.what() << '\n';
      return kExitBudget;
    } catch (const UnsupportedWidth& e) {
      throw UsageError(e.what());
    }
    return kExitAnalysisOk;
  }
};

// ---------------------------------------------------------------- model

struct ModelCmd {
  int depth = 12;
  std::string profile;
  std::string linear;
  std::string strategies = "all";
  std::string curve_path;
  int precision = 6;
  OutputFlags output;

  void attach(CLI::App& app) {
    app.add_option("--depth", depth, "Tree depth")
        ->check(CLI::Range(0, kMaxLdsDepth))
        ->capture_default_str();
    auto* p = app.add_option("--profile", profile, "Per-level probabilities p1,...,pd");
    auto* l = app.add_option("--linear", linear, "Linear profile y,x: p_l = y + x*l");
    p->excludes(l);
    app.add_option("--strategies", strategies,
                   "'all' or a list from dfs,lds,ilds,dds,alds,optimal")
        ->capture_default_str();
    app.add_option("--curve", curve_path, "Write the unsolved-fraction curves as CSV");
    app.add_option("--precision", precision, "Decimal places")->capture_default_str();
    output.attach(app);
  }

  int run(std::ostream& out, std::ostream&) const {
    DepthProfile prof = [&] {
      if (!profile.empty()) {
        auto p = parse_doubles(profile);
        if (static_cast<int>(p.size()) != depth)
          throw UsageError("--profile has " + std::to_string(p.size()) + " levels, --depth is " +
                           std::to_string(depth));
        return DepthProfile(std::move(p));
      }
      if (!linear.empty()) {
        const auto yx = parse_doubles(linear);
        if (yx.size() != 2) throw UsageError("--linear expects y,x");
        return DepthProfile::linear(depth, yx[0], yx[1]);
      }
      throw UsageError("one of --profile or --linear is required");
    }();

    std::vector<std::string> names;
    if (strategies == "all") names = {"dfs", "dds", "ilds", "alds", "optimal"};
    else names = split_list(strategies);

    const LeafProbs probs = leaf_probs(prof);
    std::vector<std::pair<std::string, VisitOrder>> orders;
    for (const auto& name : names) {
      if (name == "optimal") orders.emplace_back(name, optimal_order(probs));
      else orders.emplace_back(name, visit_order(parse_strategy(name), depth));
    }

    std::ostringstream body;
    json j = json::array();
    if (output.format == "csv") body << "strategy,e_goal\n";
    for (const auto& [name, order] : orders) {
      const double e = name == "lds" ? e_goal_first_visit(order, probs) : e_goal(order, probs);
      if (output.format == "csv") body << name << ',' << fixed(e, precision) << '\n';
      else j.push_back({{"strategy", name}, {"e_goal", e}});
    }
    if (output.format == "json") body << j.dump(1) << '\n';
    output.emit(out, body.str());

    if (!curve_path.empty()) {
      std::ofstream f(curve_path);
      if (!f) throw std::runtime_error("cannot write " + curve_path);
      f << "strategy,rank,unsolved_fraction\n";
      for (const auto& [name, order] : orders) {
        const auto curve = unsolved_curve(order, probs);
        for (std::size_t k = 0; k < curve.size(); ++k)
          f << name << ',' << k << ',' << fixed(curve[k], 9) << '\n';
      }
    }
    return kExitAnalysisOk;
  }
};

// ---------------------------------------------------------------- experiment

VisitOrder order_by_name(const std::string& name, const Dataset& ds) {
  const int d = ds.depth();
  if (name == "greedy") return greedy_construct(ds.records, d).order;
  if (name == "optimal") throw UsageError("'optimal' has no meaning on a dataset; use greedy");
  if (name.rfind("file:", 0) == 0) {
    std::istringstream in(read_input(name.substr(5)));
    VisitOrder order;
    long long v = 0;
    while (in >> v) {
      if (v < 0) throw UsageError("negative leaf index in " + name);
      order.push_back(static_cast<LeafIndex>(v));
    }
    if (!is_permutation_of_leaves(order, d))
      throw UsageError(name + " is not a permutation of the 2^" + std::to_string(d) + " subtrees");
    return order;
  }
  if (name == "lds") throw UsageError("lds repeats subtrees and cannot rank a dataset");
  return visit_order(parse_strategy(name), d);
}

Dataset load(const std::string& path) {
  try {
    return load_dataset(std::filesystem::path(path));
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
}

struct BuildCmd {
  BuildOptions opt;
  HeuristicFlags heuristic;
  std::string dataset;
  unsigned jobs = 0;
  CLI::Option* jobs_opt = nullptr;

  void attach(CLI::App& app) {
    app.add_option("--count", opt.count, "Satisfiable instances to keep")->capture_default_str();
    app.add_option("-n,--vars", opt.n, "Variables")->capture_default_str();
    app.add_option("--ratio", opt.ratio, "Clauses-to-variables ratio")->capture_default_str();
    app.add_option("--depth", opt.d, "Jump depth")
        ->check(CLI::Range(0, kMaxOrderDepth))
        ->capture_default_str();
    app.add_option("--seed", opt.seed0, "First instance seed")->capture_default_str();
    app.add_option("--budget", opt.budget, "Node budget per instance")->capture_default_str();
    app.add_option("--max-attempts", opt.max_attempts, "Give up after this many instances");
    jobs_opt = app.add_option("-j,--jobs", jobs, "Worker threads (default: $ALDS_JOBS or 1)");
    app.add_option("--dataset", dataset, "Output JSON file")->required();
    heuristic.attach(app);
  }

  int run(std::ostream&, std::ostream& err) {
    opt.heuristic = heuristic.config();
    opt.jobs = jobs_opt->count() > 0 ? jobs : default_jobs();
    if (opt.n > 50 && (opt.n >= 300 || opt.d >= 12))
      err << "c note: full-scale parameters, this run takes a long time\n";
    opt.on_skip = [&](std::uint64_t seed, const std::string& why) {
      err << "c skipped seed=" << seed << " reason=" << why << '\n';
    };
    const Dataset ds = build_dataset(opt);
    save_dataset(std::filesystem::path(dataset), ds);
    double mean = 0.0;
    for (const auto& r : ds.records) mean += static_cast<double>(r.bits.count());
    if (!ds.records.empty()) mean /= static_cast<double>(ds.records.size());
    err << "c records=" << ds.records.size() << " attempts=" << ds.meta.attempts
        << " skipped_unsat=" << ds.meta.skipped_unsat
        << " skipped_budget=" << ds.meta.skipped_budget
        << " mean_satisfiable_subtrees=" << fixed(mean, 3) << '\n';
    if (ds.records.size() < opt.count) {
      err << "c gave up before reaching --count\n";
      return kExitBudget;
    }
    return kExitAnalysisOk;
  }
};

struct EvalCmd {
  std::string dataset;
  std::string orders = "dfs,dds,ilds,alds";
  bool skip_dead = false;
  std::string curve_path;
  OutputFlags output;

  void attach(CLI::App& app) {
    app.add_option("--dataset", dataset, "Dataset JSON")->required();
    app.add_option("--order", orders,
                   "Comma list of dfs, ilds, dds, alds, greedy or file:<path>")
        ->capture_default_str();
    app.add_flag("--skip-dead", skip_dead, "Rank only live subtrees");
    app.add_option("--curve", curve_path, "Write unsolved-fraction curves as CSV");
    output.attach(app);
  }

  int run(std::ostream& out, std::ostream&) const {
    const Dataset ds = load(dataset);
    const RankMode mode = skip_dead ? RankMode::SkipDead : RankMode::Raw;
    std::ostringstream body;
    json j = json::array();
    std::ofstream curve;
    if (!curve_path.empty()) {
      curve.open(curve_path);
      if (!curve) throw std::runtime_error("cannot write " + curve_path);
      curve << "order,rank,unsolved_fraction\n";
    }
    if (output.format == "csv") body << "order,e_star,instances\n";
    for (const auto& name : split_list(orders)) {
      const EvalCurve c = evaluate(order_by_name(name, ds), ds, mode);
      if (output.format == "csv")
        body << name << ',' << fixed(c.e_star, 6) << ',' << ds.records.size() << '\n';
      else
        j.push_back({{"order", name}, {"e_star", c.e_star}, {"instances", ds.records.size()}});
      if (curve) {
        curve << name << ",0,1\n";
        for (std::size_t k = 0; k < c.unsolved_fraction.size(); ++k)
          curve << name << ',' << k + 1 << ',' << fixed(c.unsolved_fraction[k], 9) << '\n';
      }
    }
    if (output.format == "json") body << j.dump(1) << '\n';
    output.emit(out, body.str());
    return kExitAnalysisOk;
  }
};

struct GreedyCmd {
  std::string dataset;
  std::string path;

  void attach(CLI::App& app) {
    app.add_option("--dataset", dataset, "Dataset JSON")->required();
    app.add_option("-o,--output", path, "Order file, one subtree index per line");
  }

  int run(std::ostream& out, std::ostream& err) const {
    const Dataset ds = load(dataset);
    const GreedyOrder g = greedy_construct(ds.records, ds.depth());
    std::ostringstream body;
    for (LeafIndex v : g.order) body << v << '\n';
    OutputFlags{path, "csv"}.emit(out, body.str());
    err << "c greedy_picks=" << g.covered.size()
        << " e_star_on_input=" << fixed(evaluate(g.order, ds).e_star, 6) << '\n';
    return kExitAnalysisOk;
  }
};

struct SplitCmd {
  std::string dataset;
  std::uint64_t seed = 1;
  int repeats = 1;
  OutputFlags output;

  void attach(CLI::App& app) {
    app.add_option("--dataset", dataset, "Dataset JSON")->required();
    app.add_option("--seed", seed, "Seed of the first split")->capture_default_str();
    app.add_option("--repeats", repeats, "Splits with seeds seed, seed+1, ...")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    output.attach(app);
  }

  int run(std::ostream& out, std::ostream&) const {
    const Dataset ds = load(dataset);
    std::ostringstream body;
    json j = json::array();
    if (output.format == "csv")
      body << "seed,size_a,size_b,greedy_on_a,alds_on_a,greedy_on_b,alds_on_b\n";
    for (int i = 0; i < repeats; ++i) {
      const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
      const SplitResult r = split_half_eval(ds, s);
      if (output.format == "csv") {
        body << s << ',' << r.size_a << ',' << r.size_b << ',' << fixed(r.greedy_on_a, 6) << ','
             << fixed(r.alds_on_a, 6) << ',' << fixed(r.greedy_on_b, 6) << ','
             << fixed(r.alds_on_b, 6) << '\n';
      } else {
        j.push_back({{"seed", s},
                     {"size_a", r.size_a},
                     {"size_b", r.size_b},
                     {"greedy_on_a", r.greedy_on_a},
                     {"alds_on_a", r.alds_on_a},
                     {"greedy_on_b", r.greedy_on_b},
                     {"alds_on_b", r.alds_on_b}});
      }
    }
    if (output.format == "json") body << j.dump(1) << '\n';
    output.emit(out, body.str());
    return kExitAnalysisOk;
  }
};

struct SweepCmd {
  std::string dataset;
  double y = 0.56;
  std::string xs =
      "0.0050,0.0055,0.0060,0.0065,0.0070,0.0075,0.0080,0.0090,0.0100,0.0110,0.0120,0.0130,"
      "0.0140,0.0150";
  OutputFlags output;

  void attach(CLI::App& app) {
    app.add_option("--dataset", dataset, "Dataset JSON")->required();
    app.add_option("--y", y, "Profile intercept")->capture_default_str();
    app.add_option("--x", xs, "Comma list of slopes")->capture_default_str();
    output.attach(app);
  }

  int run(std::ostream& out, std::ostream&) const {
    const Dataset ds = load(dataset);
    const auto x_list = parse_doubles(xs);
    std::ostringstream body;
    json j = json::array();
    if (output.format == "csv") body << "x,e_star\n";
    for (const auto& p : linear_sweep(ds, y, x_list)) {
      if (output.format == "csv") body << fixed(p.x, 4) << ',' << fixed(p.e_star, 6) << '\n';
      else j.push_back({{"x", p.x}, {"e_star", p.e_star}});
    }
    if (output.format == "json") body << j.dump(1) << '\n';
    output.emit(out, body.str());
    return kExitAnalysisOk;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Look-ahead SAT solving with discrepancy-ordered search"};
  app.name("alds");
  app.require_subcommand(1);

  SolveCmd solve_cmd;
  GenCmd gen_cmd;
  OrderCmd order_cmd;
  MapCmd map_cmd;
  ModelCmd model_cmd;
  BuildCmd build_cmd;
  EvalCmd eval_cmd;
  GreedyCmd greedy_cmd;
  SplitCmd split_cmd;
  SweepCmd sweep_cmd;

  auto* solve_app = app.add_subcommand("solve", "Solve a DIMACS CNF file");
  solve_cmd.attach(*solve_app);
  auto* gen_app = app.add_subcommand("gen", "Generate a uniform random k-SAT instance");
  gen_cmd.attach(*gen_app);
  auto* order_app = app.add_subcommand("order", "Print a strategy's subtree visit order");
  order_cmd.attach(*order_app);
  auto* map_app = app.add_subcommand("map", "Print which depth-d subtrees hold models (hex)");
  map_cmd.attach(*map_app);
  auto* model_app = app.add_subcommand("model", "Expected goal rank on the probabilistic tree model");
  model_cmd.attach(*model_app);
  auto* exp_app = app.add_subcommand("experiment", "Dataset experiments");
  exp_app->require_subcommand(1);
  auto* build_app = exp_app->add_subcommand("build", "Build a subtree-map dataset");
  build_cmd.attach(*build_app);
  auto* eval_app = exp_app->add_subcommand("eval", "Empirical E* per visit order");
  eval_cmd.attach(*eval_app);
  auto* greedy_app = exp_app->add_subcommand("greedy", "Construct the greedy order");
  greedy_cmd.attach(*greedy_app);
  auto* split_app = exp_app->add_subcommand("split", "Greedy vs ALDS on random halves");
  split_cmd.attach(*split_app);
  auto* sweep_app = exp_app->add_subcommand("sweep", "Linear heuristic-probability model sweep");
  sweep_cmd.attach(*sweep_app);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitAnalysisOk : kExitUsage;
  }

  try {
    if (*solve_app) return solve_cmd.run(out, err);
    if (*gen_app) return gen_cmd.run(out, err);
    if (*order_app) return order_cmd.run(out, err);
    if (*map_app) return map_cmd.run(out, err);
    if (*model_app) return model_cmd.run(out, err);
    if (*build_app) return build_cmd.run(out, err);
    if (*eval_app) return eval_cmd.run(out, err);
    if (*greedy_app) return greedy_cmd.run(out, err);
    if (*split_app) return split_cmd.run(out, err);
    if (*sweep_app) return sweep_cmd.run(out, err);
  } catch (const UsageError& e) {
    err << "alds: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "alds: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "alds: error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace alds::cli
