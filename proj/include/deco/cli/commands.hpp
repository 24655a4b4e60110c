#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "deco/fault.hpp"
#include "deco/frontend/lower.hpp"
#include "deco/registry.hpp"

namespace deco {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInvalid = 2,
  kExitLawFailure = 3,
};

/// Maps an exception to its exit code: usage and I/O problems give 1,
/// parse, type, conformance and structure errors give 2.
int exit_code_for(const std::exception& e);

/// A program ready to run: its bundle, parameter context and checked term.
struct LoadedProgram {
  RegistryPtr reg;
  CompiledProgram program;
};

/// `program` is a path to a surface program, or the name of a registered
/// program of `bundle` built at its first sample type. A non-empty `bundle`
/// must agree with the file header.
LoadedProgram load_program(const std::string& program,
                           const std::string& bundle);

/// JSON text of the input: either the context value itself or, for
/// several parameters, an object keyed by parameter name.
Value read_input(const LoadedProgram& p, const std::string& text);
/// One change per non-blank line, same two encodings as read_input.
std::vector<Change> read_changes(const LoadedProgram& p,
                                 const std::string& text);

std::string read_file(const std::string& path);

int cmd_check(const std::string& program, const std::string& bundle,
              std::ostream& out, std::ostream& err);
int cmd_run(const std::string& program, const std::string& bundle,
            const std::string& input_file, std::ostream& out,
            std::ostream& err);
/// Prints the initial output, then one output change per input change.
int cmd_incr(const std::string& program, const std::string& bundle,
             const std::string& input_file, const std::string& changes_file,
             std::ostream& out, std::ostream& err);
/// JSON document (or array of documents) to a dict<int> tree<> json value.
int cmd_doc2value(const std::string& input_file, std::ostream& out,
                  std::ostream& err);

struct BenchSpec {
  /// dense | mvmul | mvmul-sparsity | rel-proj | rel-join | tree-sum
  std::string bench;
  /// Empty selects the default sweep of the benchmark.
  std::vector<std::int64_t> sizes;
  double fraction = 0.01;
  std::uint64_t seed = 1;
  int reps = 5;
};

struct BenchRow {
  std::string bench;
  std::int64_t size = 0;
  double fraction = 0;
  double full_eval_s = 0;
  double incr_step_s = 0;
  double ratio = 0;
  std::size_t cache_entries = 0;
  /// Incremental output equals batch evaluation at every step.
  bool consistent = true;
};

std::vector<std::string> bench_names();
std::vector<std::int64_t> default_sizes(const std::string& bench);
/// Throws UsageError for an invalid spec.
std::vector<BenchRow> run_bench(const BenchSpec& spec);
/// Smallest fraction at which the ratio reaches 1, interpolated linearly
/// between adjacent rows; nullopt if it never does.
std::optional<double> crossover_fraction(const std::vector<BenchRow>& rows);

extern const char* const kCsvHeader;
std::string csv_row(const BenchRow& r);

int cmd_bench(const BenchSpec& spec, const std::string& csv_out,
              std::ostream& out, std::ostream& err);

struct LawsOptions {
  std::string bundle = "linalg";
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  /// Relative tolerance over reals.
  double tolerance = 1e-9;
  Fault fault = Fault::None;
};

/// One JSON record per check; exits 3 when any record fails.
int cmd_laws(const LawsOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace deco
