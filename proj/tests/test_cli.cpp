#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "alds/cli.hpp"
#include "alds/cnf.hpp"
#include "oracle.hpp"

using namespace alds;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("alds-cli-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "-" +
            std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content = {}) const {
    const fs::path p = path / name;
    if (!content.empty()) std::ofstream(p) << content;
    return p.string();
  }
};

std::vector<bool> model_from_v_lines(const std::string& out, Var n) {
  std::vector<bool> m(n + 1, false);
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) != 0) continue;
    std::istringstream toks(line.substr(2));
    long lit = 0;
    while (toks >> lit)
      if (lit > 0) m[static_cast<std::size_t>(lit)] = true;
  }
  return m;
}

}  // namespace

TEST_CASE("solve prints a verified model") {
  TempDir t;
  const auto cnf = t.file("fla.cnf", test::kFla);
  const Result r = run({"solve", cnf});
  CHECK(r.code == cli::kExitSat);
  CHECK(r.out.find("s SATISFIABLE") != std::string::npos);
  const DimacsFile f = parse_dimacs(test::kFla);
  CHECK(satisfies(f.raw_clauses, model_from_v_lines(r.out, 4)));
}

TEST_CASE("solve exit codes") {
  TempDir t;
  CHECK(run({"solve", t.file("u.cnf", "p cnf 1 2\n1 0\n-1 0\n")}).code == cli::kExitUnsat);
  const Result bad = run({"solve", t.file("bad.cnf", "p cnf 2 1\n1 3 0\n")});
  CHECK(bad.code == cli::kExitUsage);
  CHECK(bad.err.find("line 2") != std::string::npos);
  CHECK(run({"solve", (t.path / "missing.cnf").string()}).code == cli::kExitUsage);
  CHECK(run({"solve", "--strategy", "bfs", t.file("f.cnf", test::kFla)}).code ==
        cli::kExitUsage);
  CHECK(run({"solve", "--heuristic", "w9", t.file("g.cnf", test::kFla)}).code ==
        cli::kExitUsage);
  CHECK(run({"solve", t.file("w.cnf", "p cnf 4 1\n1 2 3 4 0\n")}).code == cli::kExitUsage);

  const auto hard = t.file("hard.cnf");
  REQUIRE(run({"gen", "-n", "120", "--seed", "4", "-o", hard}).code == 0);
  const Result budget = run({"solve", "--budget", "1", "--jump-depth", "0", hard});
  CHECK(budget.code == cli::kExitBudget);
  CHECK(budget.out.find("s UNKNOWN") != std::string::npos);
}

TEST_CASE("solve json") {
  TempDir t;
  const Result r = run({"solve", "--format", "json", "--strategy", "ilds", "--jump-depth", "2",
                        t.file("fla.cnf", test::kFla)});
  CHECK(r.code == cli::kExitSat);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["status"] == "sat");
  CHECK(j["model"].size() == 4);
  CHECK(j["strategy"] == "ilds");
}

TEST_CASE("usage and help") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  const Result help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("solve") != std::string::npos);
  CHECK(run({"experiment"}).code == cli::kExitUsage);
}

TEST_CASE("gen is reproducible and records its seed") {
  const Result a = run({"gen", "-n", "20", "-m", "85", "--seed", "9"});
  const Result b = run({"gen", "-n", "20", "-m", "85", "--seed", "9"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("c generator seed=9", 0) == 0);
  const DimacsFile f = parse_dimacs(a.out);
  CHECK(f.formula.num_clauses() == 85);
  CHECK(parse_dimacs(run({"gen", "-n", "50", "--ratio", "4.26"}).out).formula.num_clauses() ==
        213);
  CHECK(run({"gen", "-n", "2", "-k", "3"}).code == cli::kExitUsage);
}

TEST_CASE("order lists leaf indices") {
  const Result r = run({"order", "--strategy", "alds", "--depth", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "0\n4\n2\n1\n6\n5\n3\n7\n");
  CHECK(run({"order", "--depth", "40"}).code == cli::kExitUsage);
}

TEST_CASE("map prints the solution bitset") {
  TempDir t;
  const Result r = run({"map", "--depth", "3", t.file("fla.cnf", test::kFla)});
  CHECK(r.code == 0);
  CHECK(r.out.size() == 3);  // two hex digits and a newline
  CHECK(r.err.find("satisfiable_subtrees=") != std::string::npos);
}

TEST_CASE("model table") {
  const Result r = run({"model", "--depth", "12", "--linear", "0.56,0.015"});
  CHECK(r.code == 0);
  CHECK(r.out.find("alds,0.207261") != std::string::npos);
  CHECK(r.out.find("optimal,0.200357") != std::string::npos);

  const Result p = run({"model", "--depth", "3", "--profile", "0.7,0.8,0.9", "--strategies",
                        "dfs,lds", "--precision", "5"});
  CHECK(p.out == "strategy,e_goal\ndfs,0.33750\nlds," + p.out.substr(p.out.rfind(',') + 1));
  CHECK(run({"model", "--depth", "4", "--profile", "0.7,0.8"}).code == cli::kExitUsage);
  CHECK(run({"model", "--depth", "4"}).code == cli::kExitUsage);
  CHECK(run({"model", "--depth", "2", "--linear", "0.9,0.1"}).code == cli::kExitUsage);
  CHECK(run({"model", "--depth", "2", "--linear", "0.5"}).code == cli::kExitUsage);

  TempDir t;
  const auto curve = t.file("curve.csv");
  REQUIRE(run({"model", "--depth", "2", "--linear", "0.6,0.1", "--curve", curve}).code == 0);
  std::ifstream in(curve);
  std::string header;
  std::getline(in, header);
  CHECK(header == "strategy,rank,unsolved_fraction");
}

TEST_CASE("experiment pipeline") {
  TempDir t;
  const auto ds = t.file("ds.json");
  const Result build = run({"experiment", "build", "--count", "8", "-n", "30", "--depth", "3",
                            "--jobs", "2", "--dataset", ds});
  REQUIRE(build.code == 0);
  CHECK(build.err.find("records=8") != std::string::npos);

  const Result eval = run({"experiment", "eval", "--dataset", ds});
  CHECK(eval.code == 0);
  CHECK(eval.out.rfind("order,e_star,instances\n", 0) == 0);
  CHECK(eval.out.find("alds,") != std::string::npos);
  CHECK(run({"experiment", "eval", "--dataset", ds, "--skip-dead", "--order", "greedy,dfs"})
            .code == 0);

  const auto order = t.file("order.txt");
  REQUIRE(run({"experiment", "greedy", "--dataset", ds, "-o", order}).code == 0);
  const Result from_file =
      run({"experiment", "eval", "--dataset", ds, "--order", "file:" + order + ",greedy"});
  CHECK(from_file.code == 0);
  {
    std::istringstream rows(from_file.out);
    std::string header, a, b;
    std::getline(rows, header);
    std::getline(rows, a);
    std::getline(rows, b);
    CHECK(a.substr(a.find(',')) == b.substr(b.find(',')));
  }

  const auto bad_order = t.file("bad.txt", "0\n1\n1\n");
  CHECK(run({"experiment", "eval", "--dataset", ds, "--order", "file:" + bad_order}).code ==
        cli::kExitUsage);
  CHECK(run({"experiment", "eval", "--dataset", ds, "--order", "lds"}).code == cli::kExitUsage);

  const Result split = run({"experiment", "split", "--dataset", ds, "--repeats", "3"});
  CHECK(split.code == 0);
  CHECK(std::count(split.out.begin(), split.out.end(), '\n') == 4);

  const Result sweep =
      run({"experiment", "sweep", "--dataset", ds, "--x", "0,0.01", "--format", "json"});
  CHECK(sweep.code == 0);
  CHECK(nlohmann::json::parse(sweep.out).size() == 2);

  CHECK(run({"experiment", "eval", "--dataset", t.file("junk.json", "{}")}).code ==
        cli::kExitUsage);
}
