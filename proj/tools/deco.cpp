#include <CLI11.hpp>
#include <iostream>

#include "deco/cli/commands.hpp"

using namespace deco;

int main(int argc, char** argv) {
  CLI::App app{"deco: cached incremental evaluation of point-free programs"};
  app.require_subcommand(1);

  std::string bundle, program, input, changes, csv_out, fault = "none";
  BenchSpec bench;
  LawsOptions laws;

  auto add_program = [&](CLI::App* sub) {
    sub->add_option("--program", program,
                    "surface program file, or a program name of --bundle")
        ->required();
    sub->add_option("--bundle", bundle, "bundle name");
  };

  auto* check = app.add_subcommand("check", "typecheck a program");
  add_program(check);

  auto* run = app.add_subcommand("run", "evaluate a program on an input");
  add_program(run);
  run->add_option("--input", input, "JSON input file")->required();

  auto* incr = app.add_subcommand(
      "incr", "initialize on an input, then step through a change stream");
  add_program(incr);
  incr->add_option("--input", input, "JSON input file")->required();
  incr->add_option("--changes", changes, "one JSON change per line");

  auto* bench_cmd = app.add_subcommand("bench", "full versus incremental timing");
  bench_cmd->add_option("--bench", bench.bench, "benchmark id")
      ->required()
      ->check(CLI::IsMember(bench_names()));
  bench_cmd->add_option("--sizes", bench.sizes, "size sweep")->delimiter(',');
  bench_cmd->add_option("--fraction", bench.fraction, "changed fraction of the input");
  bench_cmd->add_option("--seed", bench.seed, "random seed");
  bench_cmd->add_option("--reps", bench.reps, "best-of repetitions");
  bench_cmd->add_option("--csv-out", csv_out, "also write the CSV here");

  auto* laws_cmd = app.add_subcommand("laws", "run the law suites of a bundle");
  laws_cmd->add_option("--bundle", laws.bundle, "bundle name");
  laws_cmd->add_option("--seed", laws.seed, "random seed");
  laws_cmd->add_option("--samples", laws.samples, "samples per construct");
  laws_cmd->add_option("--tolerance", laws.tolerance, "relative tolerance over reals");
  laws_cmd->add_option("--inject-fault", fault, "deliberate defect to activate");

  auto* doc = app.add_subcommand(
      "doc2value", "convert JSON documents to a dict<int> tree<> json value");
  doc->add_option("--input", input, "JSON document or array of documents")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*check) return cmd_check(program, bundle, std::cout, std::cerr);
  if (*run) return cmd_run(program, bundle, input, std::cout, std::cerr);
  if (*incr) return cmd_incr(program, bundle, input, changes, std::cout, std::cerr);
  if (*bench_cmd) return cmd_bench(bench, csv_out, std::cout, std::cerr);
  if (*doc) return cmd_doc2value(input, std::cout, std::cerr);
  auto f = fault_from_name(fault);
  if (!f) {
    std::cerr << "error: unknown fault '" << fault << "'\n";
    return kExitUsage;
  }
  laws.fault = *f;
  return cmd_laws(laws, std::cout, std::cerr);
}
