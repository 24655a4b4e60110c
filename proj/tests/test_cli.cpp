#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "deco/algebra.hpp"
#include "deco/cli/commands.hpp"
#include "deco/codec.hpp"
#include "deco/fault.hpp"

using namespace deco;

namespace {

std::string program(const std::string& file) {
  return (std::filesystem::path(DECO_SOURCE_DIR) / "programs" / file).string();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (!l.empty()) out.push_back(l);
  }
  return out;
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p.string();
}

}  // namespace

TEST_CASE("run evaluates the example programs") {
  std::ostringstream out, err;
  CHECK(cmd_run(program("dense.deco"), "", program("dense.input.json"), out, err) == kExitOk);
  CHECK(lines(out.str()) == std::vector<std::string>{"[[0,0.5],[1,3.0]]"});
  std::ostringstream mv;
  CHECK(cmd_run(program("mvmul.deco"), "", program("mvmul.input.json"), mv, err) == kExitOk);
  CHECK(lines(mv.str()) == std::vector<std::string>{"[[0,17.0],[1,38.0]]"});
}

TEST_CASE("check reports the program type") {
  std::ostringstream out, err;
  CHECK(cmd_check(program("let.deco"), "", out, err) == kExitOk);
  CHECK_FALSE(out.str().empty());
}

TEST_CASE("incr with no changes prints only the initial output") {
  std::string empty = temp_file("deco_empty.jsonl", "");
  std::ostringstream out, err;
  CHECK(cmd_incr(program("dense.deco"), "", program("dense.input.json"), empty, out, err) ==
        kExitOk);
  CHECK(lines(out.str()).size() == 1);
}

TEST_CASE("incr output changes accumulate to the batch result") {
  for (const std::string name : {"dense", "mvmul"}) {
    std::string prog = program(name + ".deco"), input = program(name + ".input.json");
    std::string changes = program(name + ".changes.jsonl");
    std::ostringstream out, err;
    REQUIRE(cmd_incr(prog, "", input, changes, out, err) == kExitOk);
    std::vector<std::string> got = lines(out.str());

    LoadedProgram p = load_program(prog, "");
    Value x = read_input(p, read_file(input));
    std::vector<Change> ds = read_changes(p, read_file(changes));
    REQUIRE(got.size() == ds.size() + 1);
    const Type& ot = p.program.term.output();
    Value y = value_from_text(ot, got[0]);
    for (std::size_t k = 0; k < ds.size(); ++k) {
      x = apply_change(p.program.term.input(), x, ds[k]);
      y = apply_change(ot, y, change_from_text(ot, got[k + 1]));
    }
    std::string final_input = temp_file("deco_final.json", value_to_text(p.program.term.input(), x));
    std::ostringstream batch;
    REQUIRE(cmd_run(prog, "", final_input, batch, err) == kExitOk);
    CHECK(values_equal(ot, y, value_from_text(ot, lines(batch.str()).at(0)), Tolerance::rel(1e-9)));
  }
}

TEST_CASE("exit codes distinguish usage from invalid programs") {
  std::ostringstream out, err;
  std::string bad = temp_file("deco_bad.deco", "bundle linalg (a : real)\nadd # (a, a");
  CHECK(cmd_check(bad, "", out, err) == kExitInvalid);
  CHECK(err.str().find("2:") != std::string::npos);
  CHECK(cmd_check("/nonexistent/prog.deco", "", out, err) == kExitUsage);
  CHECK(cmd_run(program("dense.deco"), "", "/nonexistent/in.json", out, err) == kExitUsage);
}

TEST_CASE("laws exits 0 when clean and 3 under a fault") {
  LawsOptions opts;
  opts.samples = 30;
  std::ostringstream a, b, err;
  CHECK(cmd_laws(opts, a, err) == kExitOk);
  CHECK(cmd_laws(opts, b, err) == kExitOk);
  CHECK(a.str() == b.str());
  opts.fault = Fault::SwapProjections;
  std::ostringstream c;
  CHECK(cmd_laws(opts, c, err) == kExitLawFailure);
  CHECK(active_fault() == Fault::None);
}

TEST_CASE("bench rows serialize as csv") {
  BenchSpec spec;
  spec.bench = "dense";
  spec.sizes = {8, 16, 32, 64};
  spec.reps = 2;
  std::vector<BenchRow> rows = run_bench(spec);
  REQUIRE(rows.size() == 4);
  for (const BenchRow& r : rows) {
    CHECK(r.consistent);
    CHECK(r.ratio > 0);
    CHECK(csv_row(r).rfind("dense,", 0) == 0);
  }
  CHECK(std::string(kCsvHeader).rfind("bench,", 0) == 0);
  spec.bench = "nope";
  CHECK_THROWS(run_bench(spec));
}

TEST_CASE("crossover interpolates between rows") {
  std::vector<BenchRow> rows(3);
  rows[0].fraction = 0.1;
  rows[0].ratio = 0.5;
  rows[1].fraction = 0.5;
  rows[1].ratio = 0.9;
  rows[2].fraction = 1.0;
  rows[2].ratio = 1.4;
  REQUIRE(crossover_fraction(rows).has_value());
  CHECK(*crossover_fraction(rows) == doctest::Approx(0.6));
  rows[2].ratio = 0.95;
  CHECK_FALSE(crossover_fraction(rows).has_value());
}
