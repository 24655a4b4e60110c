#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "deco/algebra.hpp"
#include "deco/cli/commands.hpp"
#include "deco/denote.hpp"
#include "deco/domains/bundles.hpp"
#include "deco/domains/gcounter.hpp"
#include "deco/domains/linalg.hpp"
#include "deco/domains/relalg.hpp"
#include "deco/domains/trees.hpp"
#include "deco/incrementalize.hpp"
#include "deco/json_codec.hpp"
#include "deco/oracle/suites.hpp"
#include "deco/typecheck.hpp"

using namespace deco;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome all_pass(const std::vector<CheckRecord>& records, std::size_t min_samples) {
  std::size_t failed = 0;
  std::string first;
  for (const auto& r : records) {
    if (!r.pass || r.samples < min_samples) {
      if (failed++ == 0) first = r.to_json().dump();
    }
  }
  Outcome o{failed == 0, std::to_string(records.size()) + " checks"};
  if (failed) o.detail += ", " + std::to_string(failed) + " failed, first " + first;
  return o;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// 1. Laws 1-3 for every constructor and combinator.
Outcome laws() {
  auto t0 = Clock::now();
  GenConfig cfg;
  cfg.seed = 1;
  auto records = constructor_suite(calculus_registry(), cfg, 1000, 3);
  auto comb = combinator_suite(cfg, 1000, 3);
  records.insert(records.end(), comb.begin(), comb.end());

  std::set<std::string> seen;
  for (const auto& r : records) seen.insert(r.name);
  std::vector<std::string> missing;
  for (int k = 0; k <= static_cast<int>(Term::Kind::Op); ++k) {
    std::string n = std::string("laws.constructor.") +
                    kind_name(static_cast<Term::Kind>(k));
    if (!seen.count(n)) missing.push_back(n);
  }
  for (const char* c : {"Triv ", "Triv2 ", "Self ", "Lin ", "BiLin ", "Add "}) {
    bool any = std::any_of(seen.begin(), seen.end(), [&](const std::string& n) {
      return n.rfind(std::string("laws.combinator.") + c, 0) == 0;
    });
    if (!any) missing.push_back(c);
  }
  Outcome o = all_pass(records, 1000);
  double s = seconds_since(t0);
  o.detail += ", " + fmt(s) + " s";
  if (!missing.empty()) {
    o.pass = false;
    o.detail += ", missing " + missing.front();
  }
  if (s > 120) o.pass = false;
  return o;
}

// 2. Value preservation on random terms.
Outcome value_preservation() {
  auto t0 = Clock::now();
  GenConfig cfg;
  cfg.seed = 2;
  cfg.max_term_size = 12;
  cfg.max_extent = 4;
  cfg.max_changes = 5;
  cfg.tolerance["real"] = 1e-6;
  Generator g(calculus_registry(), cfg);
  auto rec = check_random_value_preservation("value_preservation", g, 500, 4);
  Outcome o = all_pass({rec}, 500);
  double s = seconds_since(t0);
  o.detail += ", 500 terms, " + fmt(s) + " s";
  if (s > 180) o.pass = false;
  return o;
}

// 3. Completeness of ⊖, including every sum-change variant.
Outcome completeness() {
  std::vector<CheckRecord> records;
  VariantCounts variants;
  GenConfig cfg;
  cfg.seed = 3;
  Generator g(calculus_registry(), cfg);
  records.push_back(check_completeness("completeness.calculus", g, 10000, &variants));
  for (const auto& b : bundle_names()) {
    Generator gb(load_bundle(b), cfg);
    records.push_back(check_completeness("completeness." + b, gb, 10000, &variants));
  }
  Outcome o = all_pass(records, 10000);
  for (const char* v : {"cl", "cr", "sl", "sr"}) {
    o.detail += std::string(", ") + v + "=" + std::to_string(variants[v]);
    if (variants[v] == 0) o.pass = false;
  }
  return o;
}

// 4. Self-maintainable terms keep no cache payload.
Outcome self_maintainability() {
  GenConfig cfg;
  cfg.seed = 4;
  Generator g(calculus_registry(), cfg);
  return all_pass({check_self_maintainability("self_maintainable", g, 200, 3)}, 200);
}

bool consistent(const std::vector<BenchRow>& rows) {
  return std::all_of(rows.begin(), rows.end(),
                     [](const BenchRow& r) { return r.consistent; });
}

// 5. Dense layer scaling and sparsity crossover.
Outcome dense_bench() {
  auto t0 = Clock::now();
  BenchSpec spec;
  spec.bench = "dense";
  spec.sizes = {100, 200, 400, 800};
  spec.reps = 7;
  auto rows = run_bench(spec);
  double secs = seconds_since(t0);
  Outcome o{consistent(rows), "ratios"};
  for (std::size_t k = 0; k < rows.size(); ++k) {
    o.detail += " " + fmt(rows[k].ratio);
    if (k > 0 && !(rows[k].ratio < rows[k - 1].ratio)) o.pass = false;
  }
  if (rows.empty() || rows.back().ratio > 0.2 || secs > 120) o.pass = false;
  o.detail += ", " + fmt(secs) + " s";

  BenchSpec sweep;
  sweep.bench = "mvmul-sparsity";
  auto srows = run_bench(sweep);
  auto cross = crossover_fraction(srows);
  o.pass = o.pass && consistent(srows) && cross && *cross >= 0.3 && *cross <= 1.0;
  o.detail += ", crossover " + (cross ? fmt(*cross) : std::string("none"));
  return o;
}

using Rng = std::mt19937_64;

std::int64_t uniform(Rng& r, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(r);
}

std::int64_t as_int(const Value& v) { return v.as_scalar().as_int(); }

Value small_relation(Rng& r, std::size_t n) {
  Value::Map m;
  while (m.size() < n) {
    m.emplace(Index::pair(Index(uniform(r, 0, 3)), Index(uniform(r, 0, 9))),
              Value::integer(uniform(r, 1, 2)));
  }
  return Value::map(std::move(m));
}

Change small_relation_change(Rng& r, const Value& x) {
  Change::Map d;
  std::vector<Index> present;
  for (const auto& [i, v] : x.as_map()) present.push_back(i);
  std::sort(present.begin(), present.end());
  for (int k = 0; k < 3; ++k) {
    if (!present.empty() && uniform(r, 0, 1) == 0) {
      const Index& i = present[uniform(r, 0, present.size() - 1)];
      d.insert_or_assign(i, Change::integer(-as_int(x.as_map().at(i))));
    } else {
      d.insert_or_assign(Index::pair(Index(uniform(r, 0, 3)), Index(uniform(r, 10, 14))),
                         Change::integer(1));
    }
  }
  return Change::map(std::move(d));
}

Value group_sum(const Value& rel) {
  std::map<Index, std::int64_t> acc;
  for (const auto& [i, v] : rel.as_map()) acc[i.first()] += as_int(v);
  Value::Map out;
  for (const auto& [k, n] : acc) {
    if (n != 0) out.emplace(k, Value::integer(n));
  }
  return Value::map(std::move(out));
}

Value nested_loop_join(const Value& r, const Value& s) {
  Value::Map out;
  for (const auto& [i, u] : r.as_map()) {
    for (const auto& [j, v] : s.as_map()) {
      std::int64_t m = as_int(u) * as_int(v);
      if (i.first() == j.first() && m != 0) out.emplace(Index::pair(i, j), Value::integer(m));
    }
  }
  return Value::map(std::move(out));
}

// Runs t incrementally over `steps` changes and compares each output with
// `oracle` on the updated input.
bool agrees_with_oracle(const Term& t, Value x, const std::vector<Change>& ds,
                        const std::function<Value(const Value&)>& oracle,
                        std::string& witness) {
  const Type& in = t.input();
  const Type& ot = t.output();
  MachinePtr m = incrementalize(t);
  auto [y, c] = m->initialize(x);
  for (std::size_t k = 0;; ++k) {
    Value want = oracle(x);
    if (!values_equal(ot, y, want) || !values_equal(ot, denote(t, x), want)) {
      witness = "step " + std::to_string(k) + " got " + value_to_json(ot, y).dump() +
                " want " + value_to_json(ot, want).dump();
      return false;
    }
    if (k == ds.size()) return true;
    y = apply_change(ot, y, m->step(ds[k], c));
    x = apply_change(in, x, ds[k]);
  }
}

// 6. Relational benchmarks and exact oracles.
Outcome relational() {
  Outcome o{true, ""};
  for (const char* b : {"rel-proj", "rel-join"}) {
    BenchSpec spec;
    spec.bench = b;
    spec.sizes = {10000};
    auto rows = run_bench(spec);
    double speedup = 1.0 / rows.at(0).ratio;
    o.detail += std::string(b) + " " + fmt(speedup) + "x, ";
    if (!consistent(rows) || speedup < 5) o.pass = false;
  }
  RegistryPtr reg = register_relalg();
  Type r = relation_type(*reg, "(int,int)");
  Term proj = build_program(*reg, "proj", r);
  Term join = build_program(*reg, "join", Type::product(r, r));
  Rng rng(6);
  std::string w;
  int instances = 0;
  for (; instances < 50 && o.pass; ++instances) {
    Value x = small_relation(rng, 20);
    std::vector<Change> ds;
    Value cur = x;
    for (int k = 0; k < 4; ++k) {
      ds.push_back(small_relation_change(rng, cur));
      cur = apply_change(r, cur, ds.back());
    }
    if (!agrees_with_oracle(proj, x, ds, group_sum, w)) {
      o.pass = false;
      o.detail += "proj " + w;
      break;
    }
    Value s = small_relation(rng, 20);
    std::vector<Change> js;
    for (const auto& d : ds) js.push_back(Change::pair(d, nil_change(r)));
    auto oracle = [](const Value& v) { return nested_loop_join(v.first(), v.second()); };
    if (!agrees_with_oracle(join, Value::pair(x, s), js, oracle, w)) {
      o.pass = false;
      o.detail += "join " + w;
    }
  }
  o.detail += std::to_string(instances) + " oracle instances";
  return o;
}

std::int64_t recursive_sum(const Json& node) {
  std::int64_t s = node.at("value").get<std::int64_t>();
  if (node.contains("children")) {
    for (const auto& c : node.at("children")) s += recursive_sum(c);
  }
  return s;
}

// 7. Tree fold benchmark and recursive fold oracle.
Outcome tree() {
  BenchSpec spec;
  spec.bench = "tree-sum";
  spec.sizes = {14};
  auto rows = run_bench(spec);
  double speedup = 1.0 / rows.at(0).ratio;
  Outcome o{consistent(rows) && speedup >= 10, "speedup " + fmt(speedup) + "x"};

  RegistryPtr reg = register_trees();
  Type ty = reg->parse_type("tree<> int");
  Term t = typecheck(*reg, Term::op("tree_sum"), ty);
  Rng rng(7);
  auto digit = [&] { return uniform(rng, 1, 9); };
  for (int inst = 0; inst < 20 && o.pass; ++inst) {
    Value x = tree_to_map(make_rose_tree(static_cast<int>(uniform(rng, 1, 8)), 2, digit));
    std::vector<Change> ds;
    Value cur = x;
    for (int k = 0; k < 4; ++k) {
      std::vector<Index> paths;
      for (const auto& [i, v] : cur.as_map()) paths.push_back(i);
      std::sort(paths.begin(), paths.end());
      const Index& p = paths[uniform(rng, 0, paths.size() - 1)];
      std::int64_t to = digit();
      Change::Map d;
      d.emplace(p, Change::integer(to - as_int(cur.as_map().at(p))));
      ds.push_back(Change::map(std::move(d)));
      cur = apply_change(ty, cur, ds.back());
    }
    std::string w;
    auto oracle = [](const Value& v) {
      return Value::integer(recursive_sum(map_to_tree(v)));
    };
    if (!agrees_with_oracle(t, x, ds, oracle, w)) {
      o.pass = false;
      o.detail += ", " + w;
    }
  }
  return o;
}

// 8. Q1 on the bibliography, then after an insertion and a deletion.
Outcome q1() {
  RegistryPtr reg = register_trees();
  Type ty = reg->parse_type("dict<int> tree<> json");
  Term t = build_program(*reg, "q1", ty);
  Json books = bibliography();
  Value x = documents_to_map(books);

  auto expect = [](const std::vector<std::pair<int, Json>>& docs) {
    Value::Map m;
    for (const auto& [k, d] : docs) m.emplace(Index(k), document_to_map(d));
    return Value::map(std::move(m));
  };
  Json tcp{{"title", "TCP/IP Illustrated"}, {"year", 1994}};
  Json apue{{"title", "Advanced Programming in the Unix environment"}, {"year", 1992}};
  Json dragon{{"title", "Compilers"}, {"year", 2006}};

  Json grown = books;
  grown.push_back(Json{{"title", "Compilers"},
                       {"publisher", "Addison-Wesley"},
                       {"year", 2006},
                       {"price", 90.0}});
  Value x1 = documents_to_map(grown);
  Value::Map shrunk = x1.as_map();
  shrunk.erase(Index(1));
  Value x2 = Value::map(std::move(shrunk));

  MachinePtr m = incrementalize(t);
  auto [y, c] = m->initialize(x);
  const Type& ot = t.output();
  Outcome o{values_equal(ot, y, expect({{0, tcp}, {1, apue}})), ""};
  y = apply_change(ot, y, m->step(diff_values(ty, x1, x), c));
  o.pass = o.pass && values_equal(ot, y, expect({{0, tcp}, {1, apue}, {4, dragon}}));
  y = apply_change(ot, y, m->step(diff_values(ty, x2, x1), c));
  Value want = expect({{0, tcp}, {4, dragon}});
  o.pass = o.pass && values_equal(ot, y, want) && values_equal(ot, denote(t, x2), want);
  o.detail = "final " + value_to_json(ot, y).dump();
  return o;
}

// 9. GCounter semilattice and incremental programs.
Outcome gcounter() {
  RegistryPtr reg = register_gcounter();
  GenConfig cfg;
  cfg.seed = 9;
  Generator g(reg, cfg);
  Type gc = reg->program("merge")->samples.front().left();
  Term merge = build_program(*reg, "merge", Type::product(gc, gc));
  auto mg = [&](const Value& a, const Value& b) { return denote(merge, Value::pair(a, b)); };
  Outcome o{true, ""};
  for (int k = 0; k < 1000 && o.pass; ++k) {
    Value a = g.gen_value(gc), b = g.gen_value(gc), c = g.gen_value(gc);
    bool ok = values_equal(gc, mg(a, a), a) && values_equal(gc, mg(a, b), mg(b, a)) &&
              values_equal(gc, mg(mg(a, b), c), mg(a, mg(b, c)));
    if (!ok) {
      o.pass = false;
      o.detail = "semilattice witness " + value_to_json(gc, a).dump() + " " +
                 value_to_json(gc, b).dump() + " " + value_to_json(gc, c).dump();
    }
  }
  std::vector<CheckRecord> records;
  for (const auto& name : reg->program_names()) {
    if (name != "merge" && name != "value" && name.rfind("inc_", 0) != 0) continue;
    Type in = reg->program(name)->samples.front();
    Term t = build_program(*reg, name, in);
    auto samples = gen_law_samples(g, in, 100, cfg.max_changes);
    records.push_back(check_value_preservation("gcounter." + name, t, samples,
                                               Tolerance::exact(), cfg.seed));
  }
  Outcome r = all_pass(records, 100);
  o.pass = o.pass && r.pass && records.size() >= 3;
  o.detail += (o.detail.empty() ? "" : ", ") + std::string("1000 merge samples, ") + r.detail;
  return o;
}

// 10. Finite support of every support-producing constructor.
Outcome finite_support() {
  RegistryPtr reg = calculus_registry();
  GenConfig cfg;
  cfg.seed = 10;
  Generator g(reg, cfg);
  std::vector<CheckRecord> records;
  using K = Term::Kind;
  std::string thin;
  for (K k : {K::Set, K::Replicate, K::Map, K::Reshape, K::Filter, K::Zip, K::Tp}) {
    std::size_t conforming = 0;
    for (int n = 0; n < 20; ++n) {
      Term t = g.gen_rooted(k, 6);
      records.push_back(check_finite_support(std::string("support.") + kind_name(k),
                                             *reg, t, t.input(), g, 25));
      conforming += records.back().samples;
    }
    if (conforming < 250 && thin.empty()) thin = kind_name(k);
  }
  Outcome o = all_pass(records, 0);
  if (!thin.empty()) {
    o.pass = false;
    o.detail += ", too few conforming inputs for " + thin;
  }

  RegistryPtr bad = calculus_registry(true);
  Generator gb(bad, cfg);
  Type rel = bad->parse_type("rel<int> int");
  auto v = check_finite_support("support.const0", *bad, Term::reshape("const0"), rel, gb, 25);
  bool caught = !v.pass && v.witness.contains("violation");
  o.pass = o.pass && caught;
  o.detail += caught ? ", const0 violation caught" : ", const0 violation missed";
  return o;
}

// 11. Frontend translation.
Outcome frontend() {
  GenConfig cfg;
  cfg.seed = 11;
  auto records = frontend_suite(cfg, 100);
  std::set<std::string> want{"frontend.let_translation", "frontend.let_shape",
                             "frontend.mvmul_text", "frontend.dense_text"};
  for (const auto& r : records) {
    want.erase(r.name);
    if (r.name == "frontend.let_shape") continue;
    if (r.samples < 100) want.insert(r.name + " samples");
  }
  Outcome o = all_pass(records, 1);
  if (!want.empty()) {
    o.pass = false;
    o.detail += ", missing " + *want.begin();
  }
  return o;
}

// 12. Each injected fault is caught with a witness.
Outcome mutations() {
  Outcome o{true, ""};
  for (Fault f : all_faults()) {
    if (f == Fault::None) continue;
    LawsOptions opts;
    opts.fault = f;
    std::ostringstream out, err;
    int code = cmd_laws(opts, out, err);
    bool witness = false;
    std::istringstream lines(out.str());
    std::string line;
    while (std::getline(lines, line)) {
      Json j = Json::parse(line);
      if (j.contains("pass") && !j.at("pass").get<bool>() && !j.at("witness").is_null()) {
        witness = true;
      }
    }
    bool caught = code == kExitLawFailure && witness;
    o.detail += std::string(o.detail.empty() ? "" : ", ") + fault_name(f) +
                (caught ? " caught" : " missed");
    o.pass = o.pass && caught;
  }
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"laws", laws},
      {"value preservation", value_preservation},
      {"completeness", completeness},
      {"self-maintainability", self_maintainability},
      {"dense benchmark", dense_bench},
      {"relational benchmarks", relational},
      {"tree benchmark", tree},
      {"q1 golden", q1},
      {"gcounter", gcounter},
      {"finite support", finite_support},
      {"frontend", frontend},
      {"mutation sensitivity", mutations},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (k + 1) << " "
              << criteria[k].first << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
