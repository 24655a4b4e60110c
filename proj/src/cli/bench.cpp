#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "deco/algebra.hpp"
#include "deco/cli/commands.hpp"
#include "deco/denote.hpp"
#include "deco/domains/linalg.hpp"
#include "deco/domains/relalg.hpp"
#include "deco/domains/trees.hpp"
#include "deco/errors.hpp"
#include "deco/incrementalize.hpp"
#include "deco/typecheck.hpp"

namespace deco {
namespace {

using Rng = std::mt19937_64;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

std::size_t changed_count(double fraction, std::size_t n) {
  return std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n))));
}

/// k distinct positions out of n.
std::vector<std::size_t> pick(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> idx(n);
  for (std::size_t j = 0; j < n; ++j) idx[j] = j;
  k = std::min(k, n);
  for (std::size_t j = 0; j < k; ++j) {
    std::swap(idx[j], idx[j + static_cast<std::size_t>(
                                  uniform_int(rng, 0, static_cast<std::int64_t>(n - j - 1)))]);
  }
  idx.resize(k);
  return idx;
}

Value random_vector(Rng& rng, std::int64_t n) {
  Value::Map m;
  for (std::int64_t j = 0; j < n; ++j) m.emplace(Index(j), Value::real(uniform(rng, -1, 1)));
  return Value::map(std::move(m));
}

Value random_matrix(Rng& rng, std::int64_t n, std::int64_t m) {
  Value::Map rows;
  for (std::int64_t i = 0; i < n; ++i) rows.emplace(Index(i), random_vector(rng, m));
  return Value::map(std::move(rows));
}

Change vector_change(Rng& rng, std::int64_t n, double fraction) {
  Change::Map m;
  for (std::size_t j : pick(rng, static_cast<std::size_t>(n),
                            changed_count(fraction, static_cast<std::size_t>(n)))) {
    m.emplace(Index(static_cast<std::int64_t>(j)), Change::real(uniform(rng, -1, 1)));
  }
  return Change::map(std::move(m));
}

/// A term, its input and a generator of changes applicable at the current
/// input.
struct Workload {
  Term term;
  Value input;
  std::function<Change(const Value&, Rng&)> change;
};

BenchRow measure(const std::string& bench, std::int64_t size, double fraction,
                 int reps, Workload w, Rng& rng) {
  const Type& in = w.term.input();
  const Type& out = w.term.output();
  MachinePtr m = incrementalize(w.term);
  auto [y, c] = m->initialize(w.input);
  BenchRow row;
  row.bench = bench;
  row.size = size;
  row.fraction = fraction;
  row.cache_entries = cache_payload_count(c);
  row.full_eval_s = row.incr_step_s = INFINITY;
  Value x = w.input;
  for (int r = 0; r < reps; ++r) {
    Change dx = w.change(x, rng);
    auto t0 = Clock::now();
    Change dy = m->step(dx, c);
    apply_in_place(out, y, dy);
    row.incr_step_s = std::min(row.incr_step_s, seconds_since(t0));
    apply_in_place(in, x, dx);
    t0 = Clock::now();
    Value batch = denote(w.term, x);
    row.full_eval_s = std::min(row.full_eval_s, seconds_since(t0));
    if (!values_equal(out, y, batch, Tolerance::rel(1e-9))) row.consistent = false;
  }
  row.ratio = row.full_eval_s > 0 ? row.incr_step_s / row.full_eval_s : 0;
  return row;
}

Workload dense_workload(const Registry& reg, std::int64_t n, double fraction,
                        Rng& rng) {
  Value weights = random_matrix(rng, n, n);
  Value bias = random_vector(rng, n);
  return {dense_layer(reg, weights, bias, n, n), random_vector(rng, n),
          [n, fraction](const Value&, Rng& g) { return vector_change(g, n, fraction); }};
}

Workload mvmul_workload(const Registry& reg, std::int64_t n, double fraction,
                        Rng& rng) {
  Type arg = Type::product(real_matrix(reg, n, n), real_array(reg, n));
  Change nil_matrix = nil_change(arg.left());
  return {build_program(reg, "mvmul", arg),
          Value::pair(random_matrix(rng, n, n), random_vector(rng, n)),
          [n, fraction, nil_matrix](const Value&, Rng& g) {
            return Change::pair(nil_matrix, vector_change(g, n, fraction));
          }};
}

/// Insertions of fresh tuples and deletions of present ones, half each.
Change relation_change(const Value& r, std::int64_t keys, std::int64_t values,
                       double fraction, Rng& rng) {
  const auto& m = r.as_map();
  std::vector<Index> present;
  present.reserve(m.size());
  for (const auto& [i, v] : m) present.push_back(i);
  std::sort(present.begin(), present.end());
  std::size_t k = changed_count(fraction, m.size());
  Change::Map d;
  std::size_t deletions = std::min(k / 2, present.size());
  for (std::size_t j : pick(rng, present.size(), deletions)) {
    d.emplace(present[j], Change::integer(-m.at(present[j]).as_scalar().as_int()));
  }
  while (d.size() < k) {
    Index t = Index::pair(Index(uniform_int(rng, 0, keys - 1)),
                          Index(uniform_int(rng, 0, values - 1)));
    if (!m.count(t) && !d.count(t)) d.emplace(t, Change::integer(1));
  }
  return Change::map(std::move(d));
}

Value random_relation(Rng& rng, std::int64_t n, std::int64_t keys,
                      std::int64_t values) {
  Value::Map m;
  while (static_cast<std::int64_t>(m.size()) < n) {
    m.emplace(Index::pair(Index(uniform_int(rng, 0, keys - 1)),
                          Index(uniform_int(rng, 0, values - 1))),
              Value::integer(1));
  }
  return Value::map(std::move(m));
}

Workload proj_workload(const Registry& reg, std::int64_t n, double fraction,
                       Rng& rng) {
  Type r = relation_type(reg, "(int,int)");
  std::int64_t keys = std::max<std::int64_t>(1, n / 10);
  std::int64_t values = 4 * n;
  return {build_program(reg, "proj", r), random_relation(rng, n, keys, values),
          [=](const Value& x, Rng& g) {
            return relation_change(x, keys, values, fraction, g);
          }};
}

Workload join_workload(const Registry& reg, std::int64_t n, double fraction,
                       Rng& rng) {
  Type r = relation_type(reg, "(int,int)");
  std::int64_t keys = std::max<std::int64_t>(1, n / 10);
  std::int64_t values = 4 * n;
  Type arg = Type::product(r, r);
  Change nil_s = nil_change(r);
  return {build_program(reg, "join", arg),
          Value::pair(random_relation(rng, n, keys, values),
                      random_relation(rng, 50, keys, 50)),
          [=](const Value& x, Rng& g) {
            return Change::pair(
                relation_change(x.first(), keys, values, fraction, g), nil_s);
          }};
}

/// Node values move within 1..9 so that no node becomes absent.
Workload tree_workload(const Registry& reg, std::int64_t depth,
                       double fraction, Rng& rng) {
  Type ty = reg.parse_type("tree<> int");
  Json rose = make_rose_tree(static_cast<int>(depth), 2,
                             [&rng] { return uniform_int(rng, 1, 9); });
  Term t = typecheck(reg, Term::op("tree_sum"), ty);
  return {t, tree_to_map(rose), [fraction](const Value& x, Rng& g) {
            const auto& m = x.as_map();
            std::vector<Index> nodes;
            nodes.reserve(m.size());
            for (const auto& [i, v] : m) nodes.push_back(i);
            std::sort(nodes.begin(), nodes.end());
            Change::Map d;
            for (std::size_t j : pick(g, nodes.size(), changed_count(fraction, nodes.size()))) {
              std::int64_t old = m.at(nodes[j]).as_scalar().as_int();
              std::int64_t now = old;
              while (now == old) now = uniform_int(g, 1, 9);
              d.emplace(nodes[j], Change::integer(now - old));
            }
            return Change::map(std::move(d));
          }};
}

const std::vector<double> kSweep = {0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.4,
                                    0.5,  0.6,  0.7,  0.8, 0.9, 1.0};

std::string fixed(double v, int digits) {
  std::ostringstream ss;
  ss << std::setprecision(digits) << v;
  return ss.str();
}

}  // namespace

const char* const kCsvHeader =
    "bench,size,fraction,full_eval_s,incr_step_s,ratio,cache_entries";

std::vector<std::string> bench_names() {
  return {"dense", "mvmul", "mvmul-sparsity", "rel-proj", "rel-join", "tree-sum"};
}

std::vector<std::int64_t> default_sizes(const std::string& bench) {
  if (bench == "dense" || bench == "mvmul") return {100, 200, 400, 800};
  if (bench == "mvmul-sparsity") return {500};
  if (bench == "rel-proj" || bench == "rel-join") return {10000};
  if (bench == "tree-sum") return {14};
  throw UsageError("unknown benchmark '" + bench + "'");
}

std::vector<BenchRow> run_bench(const BenchSpec& spec) {
  std::vector<std::int64_t> sizes =
      spec.sizes.empty() ? default_sizes(spec.bench) : spec.sizes;
  default_sizes(spec.bench);
  if (!(spec.fraction > 0 && spec.fraction <= 1)) {
    throw UsageError("fraction must be in (0,1]");
  }
  if (spec.reps < 1) throw UsageError("reps must be positive");
  for (auto n : sizes) {
    if (n <= 0) throw UsageError("sizes must be positive");
  }
  RegistryPtr linalg = spec.bench == "dense" || spec.bench.rfind("mvmul", 0) == 0
                           ? register_linalg()
                           : nullptr;
  RegistryPtr relalg = spec.bench.rfind("rel-", 0) == 0 ? register_relalg() : nullptr;
  RegistryPtr trees = spec.bench == "tree-sum" ? register_trees() : nullptr;
  Rng rng(spec.seed);
  std::vector<BenchRow> rows;
  for (auto n : sizes) {
    if (spec.bench == "mvmul-sparsity") {
      for (double f : kSweep) {
        rows.push_back(measure(spec.bench, n, f, spec.reps,
                               mvmul_workload(*linalg, n, f, rng), rng));
      }
      continue;
    }
    double f = spec.fraction;
    Workload w = spec.bench == "dense"      ? dense_workload(*linalg, n, f, rng)
                 : spec.bench == "mvmul"    ? mvmul_workload(*linalg, n, f, rng)
                 : spec.bench == "rel-proj" ? proj_workload(*relalg, n, f, rng)
                 : spec.bench == "rel-join" ? join_workload(*relalg, n, f, rng)
                                            : tree_workload(*trees, n, f, rng);
    rows.push_back(measure(spec.bench, n, f, spec.reps, std::move(w), rng));
  }
  return rows;
}

std::optional<double> crossover_fraction(const std::vector<BenchRow>& rows) {
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].ratio < 1) continue;
    if (k == 0) return rows[k].fraction;
    const BenchRow& a = rows[k - 1];
    const BenchRow& b = rows[k];
    double t = (1 - a.ratio) / (b.ratio - a.ratio);
    return a.fraction + t * (b.fraction - a.fraction);
  }
  return std::nullopt;
}

std::string csv_row(const BenchRow& r) {
  return r.bench + "," + std::to_string(r.size) + "," + fixed(r.fraction, 6) +
         "," + fixed(r.full_eval_s, 6) + "," + fixed(r.incr_step_s, 6) + "," +
         fixed(r.ratio, 6) + "," + std::to_string(r.cache_entries);
}

int cmd_bench(const BenchSpec& spec, const std::string& csv_out,
              std::ostream& out, std::ostream& err) {
  try {
    std::vector<BenchRow> rows = run_bench(spec);
    std::ostringstream csv;
    csv << "# seed=" << spec.seed << " reps=" << spec.reps << "\n";
    csv << kCsvHeader << "\n";
    bool consistent = true;
    for (const auto& r : rows) {
      csv << csv_row(r) << "\n";
      consistent = consistent && r.consistent;
    }
    if (spec.bench == "mvmul-sparsity") {
      auto x = crossover_fraction(rows);
      csv << "# crossover_fraction=" << (x ? fixed(*x, 4) : "none") << "\n";
    }
    out << csv.str();
    if (!csv_out.empty()) {
      std::ofstream f(csv_out);
      if (!f) throw UsageError("cannot write '" + csv_out + "'");
      f << csv.str();
    }
    if (!consistent) {
      err << "error: incremental output diverged from batch evaluation\n";
      return kExitLawFailure;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace deco
