#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "deco/denote.hpp"
#include "deco/domains/bundles.hpp"
#include "deco/domains/common.hpp"
#include "deco/domains/linalg.hpp"
#include "deco/errors.hpp"
#include "deco/oracle/gen.hpp"
#include "deco/oracle/suites.hpp"
#include "deco/term_text.hpp"
#include "deco/typecheck.hpp"
#include "support.hpp"

using namespace deco;
using namespace deco::test;

namespace {

RegistryPtr small_registry() {
  auto reg = std::make_shared<Registry>("small");
  reg->register_base(real_base());
  reg->register_container(array_container());
  reg->register_predicate({"is_one", [](const Shape&, const Index& i) { return i == Index(1); }});
  reg->freeze();
  return reg;
}

}  // namespace

TEST_CASE("typecheck of a fork") {
  auto reg = small_registry();
  Type rr = Type::product(real_t(), real_t());
  Term fork = Term::seq(Term::dup(), Term::par(Term::fst(), Term::snd()));
  Term t = typecheck(*reg, fork, rr);
  CHECK(t.input() == rr);
  CHECK(t.output() == rr);
  CHECK_THROWS_AS(typecheck(*reg, fork, real_t()), TypeError);
  Term u = typecheck(*reg, Term::seq(Term::dup(), Term::par(Term::id(), Term::id())), real_t());
  CHECK(u.output() == rr);
}

TEST_CASE("typecheck of map over an array") {
  auto reg = register_linalg();
  Type a3 = real_array(*reg, 3);
  Term t = typecheck(*reg, Term::map(Term::op("relu")), a3);
  CHECK(t.output() == a3);
}

TEST_CASE("typecheck rejects a mismatched composition") {
  auto reg = register_linalg();
  Type real = reg->parse_type("real");
  Term bad = Term::seq(Term::fst(), Term::map(Term::op("relu")));
  CHECK_THROWS_AS(typecheck(*reg, bad, Type::product(real, real)), TypeError);
}

TEST_CASE("typecheck rejects unknown names and out-of-shape indices") {
  auto reg = register_linalg();
  CHECK_THROWS_AS(typecheck(*reg, Term::op("nope"), reg->parse_type("real")), Error);
  CHECK_THROWS_AS(typecheck(*reg, Term::get(Index(5)), real_array(*reg, 3)), TypeError);
}

TEST_CASE("plus requires an additive base") {
  auto reg = register_linalg();
  Type real = reg->parse_type("real");
  CHECK_NOTHROW(typecheck(*reg, Term::plus(), Type::product(real, real)));
  auto trees = load_bundle("trees");
  Type json = trees->parse_type("json");
  CHECK_THROWS_AS(typecheck(*trees, Term::plus(), Type::product(json, json)), TypeError);
}

TEST_CASE("reshape by reversal") {
  auto reg = register_linalg();
  Type a3 = real_array(*reg, 3);
  Term t = typecheck(*reg, Term::reshape("reverse"), a3);
  Value y = denote(t, vec({1, 2, 3}));
  CHECK(values_equal(a3, y, vec({3, 2, 1})));
}

TEST_CASE("set overwrites one position") {
  auto reg = small_registry();
  Type a2 = array_t(2, real_t());
  Term t = typecheck(*reg, Term::set(Index(0)), Type::product(real_t(), a2));
  Value y = denote(t, Value::pair(Value::real(9), vec({1, 2})));
  CHECK(values_equal(a2, y, vec({9, 2})));
}

TEST_CASE("filter keeps selected positions and falls back elsewhere") {
  auto reg = small_registry();
  Type a2 = array_t(2, real_t());
  Term t = typecheck(*reg, Term::filter("is_one"), Type::product(real_t(), a2));
  CHECK(values_equal(a2, denote(t, Value::pair(Value::real(0), vec({5, 7}))), vec({0, 7})));
  CHECK(values_equal(a2, denote(t, Value::pair(Value::real(4), vec({5, 7}))), vec({4, 7})));
}

TEST_CASE("distr moves the pair into the injection") {
  auto reg = small_registry();
  Type in = Type::product(real_t(), Type::sum(real_t(), real_t()));
  Term t = typecheck(*reg, Term::distr(), in);
  Value y = denote(t, Value::pair(Value::real(4), Value::right(Value::real(6))));
  CHECK(values_equal(t.output(), y, Value::right(Value::pair(Value::real(4), Value::real(6)))));
}

TEST_CASE("get on an absent key is the default") {
  auto reg = small_registry();
  Term t = typecheck(*reg, Term::get(Index(1)), array_t(2, real_t()));
  CHECK(denote(t, vec({3})).as_scalar().as_real() == 0.0);
}

TEST_CASE("duplicate registration is refused") {
  auto reg = std::make_shared<Registry>("dup");
  reg->register_base(real_base());
  Type real = Type::base(reg->base("real"));
  auto relu = [&] {
    return make_op("relu", exactly(real, real),
                   [](const Type&, const Type&, const Value& x) { return x; }, Comb::Triv,
                   {real});
  };
  reg->register_op(relu());
  CHECK_THROWS_AS(reg->register_op(relu()), RegistryError);
  reg->freeze();
  CHECK_THROWS_AS(reg->register_base(int_base()), RegistryError);
}

TEST_CASE("append prepends like a list") {
  auto reg = register_linalg();
  Type real = reg->parse_type("real");
  Type a3 = real_array(*reg, 3);
  Term t = build_program(*reg, "append", Type::product(real, a3));
  Value y = denote(t, Value::pair(Value::real(7), vec({1, 2, 3})));
  std::vector<double> want{7, 1, 2, 3};
  std::int64_t n = t.output().shape().arg().as_nat();
  REQUIRE(n >= 3);
  for (std::int64_t i = 0; i < n; ++i) CHECK(at(y, i) == want[i]);
}

TEST_CASE("plus agrees with apply_change on scalars") {
  auto reg = register_linalg();
  Type real = reg->parse_type("real");
  Term t = typecheck(*reg, Term::plus(), Type::product(real, real));
  for (double a : {-2.5, 0.0, 3.0}) {
    for (double b : {-1.0, 4.25}) {
      CHECK(denote(t, Value::pair(Value::real(a), Value::real(b))).as_scalar().as_real() ==
            apply_change(real, Value::real(a), Change::real(b)).as_scalar().as_real());
    }
  }
}

TEST_CASE("random terms evaluate, conform and round trip through text") {
  GenConfig cfg;
  cfg.seed = 21;
  RegistryPtr reg = calculus_registry();
  Generator g(reg, cfg);
  int evaluated = 0;
  for (int k = 0; k < 300; ++k) {
    Type in = g.gen_type();
    Term t = g.gen_term(in, 1 + g.below(cfg.max_term_size));
    Term back = typecheck(*reg, parse_term(*reg, t.to_string()), in);
    CHECK(back == t);
    Value x = g.gen_value(in);
    try {
      Value y = denote(t, x);
      CHECK_MESSAGE(conforms(t.output(), y), t.to_string());
      ++evaluated;
    } catch (const InputPreconditionError&) {
    }
  }
  CHECK(evaluated > 250);
}
