#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "deco/algebra.hpp"
#include "deco/denote.hpp"
#include "deco/domains/linalg.hpp"
#include "deco/errors.hpp"
#include "deco/fault.hpp"
#include "deco/incrementalize.hpp"
#include "deco/oracle/checks.hpp"
#include "deco/oracle/gen.hpp"
#include "deco/oracle/suites.hpp"
#include "deco/typecheck.hpp"
#include "support.hpp"

using namespace deco;
using namespace deco::test;

namespace {

GenConfig seeded(std::uint64_t seed) {
  GenConfig cfg;
  cfg.seed = seed;
  return cfg;
}

ValueFn batch(const Term& t) {
  return [t](const Value& x) { return denote(t, x); };
}

CheckRecord laws_of(const Term& t, Generator& g, std::size_t n) {
  MachinePtr m = incrementalize(t);
  return check_laws(t.to_string(), *m, batch(t), gen_law_samples(g, t.input(), n, 3),
                    g.config().tolerance_for(t.output()), g.config().seed,
                    g.config().cache_tolerance());
}

}  // namespace

TEST_CASE("generated values conform to their types") {
  Generator g(calculus_registry(), seeded(71));
  for (int k = 0; k < 300; ++k) {
    Type ty = g.gen_type();
    CHECK_MESSAGE(conforms(ty, g.gen_value(ty)), ty.to_string());
  }
}

TEST_CASE("sum changes reach every variant") {
  Generator g(calculus_registry(), seeded(72));
  Type ty = Type::sum(int_t(), real_t());
  std::set<Change::Kind> kinds;
  for (int k = 0; k < 100; ++k) {
    Value x = g.gen_value(ty);
    kinds.insert(g.gen_change(ty, x).kind());
  }
  CHECK(kinds.count(Change::Kind::Cl));
  CHECK(kinds.count(Change::Kind::Cr));
  CHECK(kinds.count(Change::Kind::Sl));
  CHECK(kinds.count(Change::Kind::Sr));
  CHECK(kinds.count(Change::Kind::Null));
}

TEST_CASE("a size-one term from a type to itself is id") {
  Generator g(calculus_registry(), seeded(73));
  Type a = array_t(3, real_t());
  CHECK(g.gen_term(a, a, 1) == typecheck(g.registry(), Term::id(), a));
}

TEST_CASE("generated terms are well typed at their endpoints") {
  Generator g(calculus_registry(), seeded(74));
  for (int k = 0; k < 100; ++k) {
    Type a = g.gen_type(), b = g.gen_type();
    try {
      Term t = g.gen_term(a, b, 6);
      CHECK(t.input() == a);
      CHECK(t.output() == b);
    } catch (const GenerationError&) {
    }
  }
}

TEST_CASE("laws hold for id and fail under an injected fault") {
  RegistryPtr reg = register_linalg();
  Generator g(reg, seeded(75));
  Term id = typecheck(*reg, Term::id(), real_array(*reg, 3));
  CHECK(laws_of(id, g, 100).pass);

  Term relu = typecheck(*reg, Term::op("relu"), reg->parse_type("real"));
  CHECK(laws_of(relu, g, 100).pass);
  FaultGuard guard(Fault::TrivCache);
  CheckRecord bad = laws_of(relu, g, 100);
  REQUIRE_FALSE(bad.pass);
  CHECK(bad.witness.at("law") == "3");
  CHECK(bad.witness.contains("x"));
}

TEST_CASE("dense layer satisfies the laws") {
  RegistryPtr reg = register_linalg();
  Generator g(reg, seeded(76));
  Term dense = dense_layer(*reg, mat({{1, -2, 0.5}, {0, 3, -1}}), vec({0.25, -1}), 2, 3);
  CheckRecord r = laws_of(dense, g, 200);
  CHECK_MESSAGE(r.pass, r.witness.dump());
  CHECK(r.samples == 200);
}

TEST_CASE("constants preserve their value under any change") {
  RegistryPtr reg = register_linalg();
  Generator g(reg, seeded(77));
  Type real = reg->parse_type("real");
  Term t = typecheck(*reg, Term::cst(real, Value::real(7)), real_array(*reg, 4));
  CheckRecord r = check_value_preservation("cst", t, gen_law_samples(g, t.input(), 100, 5),
                                           Tolerance::exact());
  CHECK(r.pass);
  MachinePtr m = incrementalize(t);
  auto [y, c] = m->initialize(vec({1, 2}));
  CHECK(y.as_scalar().as_real() == 7.0);
  CHECK(m->step(g.gen_change(t.input(), vec({1, 2})), c).as_scalar().as_real() == 0.0);
}

TEST_CASE("finite support holds for set and map, and const0 is caught") {
  RegistryPtr reg = calculus_registry();
  Generator g(reg, seeded(78));
  Type a = array_t(4, real_t());
  Term set = typecheck(*reg, Term::set(Index(2)), Type::product(real_t(), a));
  CHECK(check_finite_support("set", *reg, set, set.input(), g, 50).pass);
  Term map = typecheck(*reg, Term::map(Term::id()), a);
  CHECK(check_finite_support("map", *reg, map, a, g, 50).pass);

  RegistryPtr bad = calculus_registry(true);
  Generator gb(bad, seeded(78));
  Type rel = bad->parse_type("rel<int> int");
  CheckRecord v = check_finite_support("const0", *bad, Term::reshape("const0"), rel, gb, 25);
  CHECK_FALSE(v.pass);
  CHECK(v.witness.contains("violation"));
}

TEST_CASE("laws report is deterministic for a seed") {
  auto dump = [](std::uint64_t seed) {
    Json all = Json::array();
    for (const CheckRecord& r : laws_report("linalg", seeded(seed), 20)) all.push_back(r.to_json());
    return all.dump();
  };
  CHECK(dump(79) == dump(79));
}

TEST_CASE("self-maintainable terms keep no cache payload") {
  Generator g(calculus_registry(), seeded(80));
  CheckRecord r = check_self_maintainability("self", g, 40, 3);
  CHECK_MESSAGE(r.pass, r.witness.dump());
  CHECK(r.samples > 0);
}

TEST_CASE("completeness holds on random differences") {
  Generator g(calculus_registry(), seeded(81));
  VariantCounts counts;
  CheckRecord r = check_completeness("complete", g, 1000, &counts);
  CHECK(r.pass);
  for (const char* v : {"cl", "cr", "sl", "sr"}) CHECK(counts[v] > 0);
}
