#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "deco/cache.hpp"
#include "deco/denote.hpp"
#include "deco/domains/linalg.hpp"
#include "deco/domains/relalg.hpp"
#include "deco/incrementalize.hpp"
#include "deco/machine.hpp"
#include "deco/oracle/gen.hpp"
#include "deco/oracle/suites.hpp"
#include "deco/typecheck.hpp"
#include "support.hpp"

using namespace deco;
using namespace deco::test;

namespace {

double relu(double x) { return x < 0 ? 0 : x; }

Value relu_v(const Value& x) { return Value::real(relu(x.as_scalar().as_real())); }

Value mul_v(const Value& x) {
  return Value::real(x.first().as_scalar().as_real() * x.second().as_scalar().as_real());
}

double real_of(const Change& d) { return d.as_scalar().as_real(); }

// The cache after a step agrees with the cache initialized at the new input.
void check_cache(const Machine& m, const Cache& c, const Value& x) {
  CHECK(m.cache_equal(c, m.initialize(x).second, Tolerance::rel(1e-12)));
}

}  // namespace

TEST_CASE("Triv on relu") {
  MachinePtr m = comb_triv("relu", relu_v, real_t(), real_t());
  auto [y, c] = m->initialize(Value::real(-1));
  CHECK(y.as_scalar().as_real() == 0.0);
  CHECK(real_of(m->step(Change::real(3), c)) == 2.0);
  check_cache(*m, c, Value::real(2));
  CHECK(real_of(m->step(Change::real(0), c)) == 0.0);
  check_cache(*m, c, Value::real(2));
}

TEST_CASE("Triv on mul") {
  Type rr = Type::product(real_t(), real_t());
  MachinePtr m = comb_triv("mul", mul_v, rr, real_t());
  auto [y, c] = m->initialize(Value::pair(Value::real(3), Value::real(4)));
  CHECK(y.as_scalar().as_real() == 12.0);
  CHECK(real_of(m->step(Change::pair(Change::real(1), Change::real(0)), c)) == 4.0);
  check_cache(*m, c, Value::pair(Value::real(4), Value::real(4)));
}

TEST_CASE("Triv2 agrees with Triv and caches the output") {
  MachinePtr t1 = comb_triv("relu", relu_v, real_t(), real_t());
  MachinePtr t2 = comb_triv2("relu", relu_v, real_t(), real_t());
  auto [y2, c2] = t2->initialize(Value::real(-1));
  CHECK(c2.value().as_scalar().as_real() == -1.0);
  CHECK(c2.output().as_scalar().as_real() == 0.0);
  CHECK(real_of(t2->step(Change::real(3), c2)) == 2.0);
  CHECK(c2.value().as_scalar().as_real() == 2.0);
  CHECK(c2.output().as_scalar().as_real() == 2.0);
  GenConfig cfg;
  cfg.seed = 31;
  RegistryPtr reg = calculus_registry();
  Generator g(reg, cfg);
  Type real = reg->parse_type("real");
  for (int k = 0; k < 200; ++k) {
    Value x = g.gen_value(real);
    Change d = g.gen_change(real, x);
    auto a = t1->initialize(x).second;
    auto b = t2->initialize(x).second;
    CHECK(real_of(t1->step(d, a)) == real_of(t2->step(d, b)));
  }
}

TEST_CASE("Self on dup, zip and cst keeps a unit cache") {
  auto reg = register_linalg();
  Type a2 = real_array(*reg, 2);
  Term zip = typecheck(*reg, Term::zip(), Type::product(a2, a2));
  MachinePtr m = incrementalize(zip);
  auto [y, c] = m->initialize(Value::pair(vec({1, 2}), vec({3, 4})));
  CHECK(cache_payload_count(c) == 0);
  Change::Map dx, dy;
  dx.emplace(Index(1), Change::real(5));
  Change d = m->step(Change::pair(Change::map(dx), Change::map(dy)), c);
  Value want = denote(zip, Value::pair(vec({0, 5}), vec({})));
  CHECK(values_equal(zip.output(), to_value(zip.output(), d), want));

  Term dup = typecheck(*reg, Term::dup(), reg->parse_type("real"));
  auto md = incrementalize(dup);
  auto cd = md->initialize(Value::real(1)).second;
  Change dd = md->step(Change::real(2), cd);
  CHECK(real_of(dd.first()) == 2.0);
  CHECK(real_of(dd.second()) == 2.0);

  Term cst = typecheck(*reg, Term::cst(a2, vec({1, 1})), reg->parse_type("real"));
  auto mc = incrementalize(cst);
  auto cc = mc->initialize(Value::real(1)).second;
  CHECK(cache_payload_count(cc) == 0);
  CHECK(is_nil(a2, mc->step(Change::real(9), cc)));
}

TEST_CASE("Lin on sum") {
  auto reg = register_linalg();
  Term sum = typecheck(*reg, Term::op("sum"), real_array(*reg, 3));
  MachinePtr m = incrementalize(sum);
  auto [y, c] = m->initialize(vec({1, 2, 3}));
  CHECK(y.as_scalar().as_real() == 6.0);
  Change::Map d;
  d.emplace(Index(1), Change::real(5));
  CHECK(real_of(m->step(Change::map(d), c)) == 5.0);
  CHECK(cache_payload_count(c) == 0);
}

TEST_CASE("BiLin on the relational cross product") {
  auto reg = register_relalg();
  Type r = relation_type(*reg, "(int,int)");
  Term cross = typecheck(*reg, Term::op("cross"), Type::product(r, r));
  MachinePtr m = incrementalize(cross);
  Index t = tup(1, 1), t2 = tup(3, 3), u = tup(2, 2);
  auto [y, c] = m->initialize(Value::pair(ints({{t, 1}}), ints({{u, 1}})));
  Change::Map dr;
  dr.emplace(t2, Change::integer(1));
  Change d = m->step(Change::pair(Change::map(dr), Change::map()), c);
  Value dv = to_value(cross.output(), d);
  CHECK(values_equal(cross.output(), dv, ints({{Index::pair(t2, u), 1}})));
  check_cache(*m, c, Value::pair(ints({{t, 1}, {t2, 1}}), ints({{u, 1}})));
  Change nil = m->step(nil_change(cross.input()), c);
  CHECK(values_equal(cross.output(), to_value(cross.output(), nil), ints({})));
}

TEST_CASE("Add over integers and naturals") {
  MachinePtr m = comb_add(int_t());
  auto [y, c] = m->initialize(Value::pair(Value::integer(1), Value::integer(2)));
  CHECK(y.as_scalar().as_int() == 3);
  CHECK(m->step(Change::pair(Change::integer(10), Change::integer(20)), c).as_scalar().as_int() ==
        30);
  CHECK(m->step(Change::pair(Change::integer(0), Change::integer(0)), c).as_scalar().as_int() ==
        0);
  MachinePtr n = comb_add(nat_t());
  auto [yn, cn] = n->initialize(Value::pair(Value::natural(2), Value::natural(3)));
  CHECK(yn.as_scalar().as_nat() == 5u);
  CHECK(n->step(Change::pair(Change::natural(1), Change::natural(0)), cn).as_scalar().as_nat() ==
        1u);
}

TEST_CASE("dup then plus doubles the change") {
  auto reg = calculus_registry();
  Type z = reg->parse_type("int");
  Term t = typecheck(*reg, Term::seq(Term::dup(), Term::plus()), z);
  MachinePtr m = incrementalize(t);
  auto [y, c] = m->initialize(Value::integer(5));
  CHECK(y.as_scalar().as_int() == 10);
  CHECK(m->step(Change::integer(3), c).as_scalar().as_int() == 6);
}

TEST_CASE("mvmul steps by the column of the changed entry") {
  auto reg = register_linalg();
  Type arg = Type::product(real_matrix(*reg, 2, 2), real_array(*reg, 2));
  Term t = build_program(*reg, "mvmul", arg);
  MachinePtr m = incrementalize(t);
  auto [y, c] = m->initialize(Value::pair(mat({{1, 2}, {3, 4}}), vec({5, 6})));
  CHECK(at(y, 0) == 17.0);
  CHECK(at(y, 1) == 39.0);
  Change::Map dv;
  dv.emplace(Index(0), Change::real(1));
  Change d = m->step(Change::pair(Change::map(), Change::map(dv)), c);
  Value dy = to_value(t.output(), d);
  CHECK(at(dy, 0) == 1.0);
  CHECK(at(dy, 1) == 3.0);
}

TEST_CASE("case switching branch reinitializes the new branch") {
  auto reg = register_linalg();
  Type real = reg->parse_type("real");
  Type in = Type::sum(real, real);
  Term t = typecheck(*reg, Term::case_of(Term::op("relu"), Term::id()), in);
  MachinePtr m = incrementalize(t);
  auto [y, c] = m->initialize(Value::right(Value::real(-4)));
  Change d = m->step(Change::sl(Value::real(-2)), c);
  REQUIRE(d.kind() == Change::Kind::Sl);
  CHECK(d.replacement().as_scalar().as_real() == 0.0);
  Change e = m->step(Change::cl(Change::real(5)), c);
  REQUIRE(e.kind() == Change::Kind::Cl);
  CHECK(real_of(e.local()) == 3.0);
}

TEST_CASE("iter and sum_changes") {
  auto reg = calculus_registry();
  Type real = reg->parse_type("real");
  CHECK(sum_changes(real, Value::real(1), {Change::real(2), Change::real(3)}).as_scalar()
            .as_real() == 6.0);
  CHECK(sum_changes(real, Value::real(1), {}).as_scalar().as_real() == 1.0);
  Type sum = Type::sum(real, real);
  Value r = sum_changes(sum, Value::left(Value::real(1)), {Change::sr(Value::real(9))});
  CHECK(values_equal(sum, r, Value::right(Value::real(9))));
  // back to front: the last element is applied first
  Value s = sum_changes(sum, Value::left(Value::real(1)),
                        {Change::cl(Change::real(1)), Change::sl(Value::real(5))});
  CHECK(values_equal(sum, s, Value::left(Value::real(6))));

  Term seven = typecheck(*reg, Term::cst(real, Value::real(7)), real);
  MachinePtr m = incrementalize(seven);
  CHECK(iter(*m, Value::real(1), {Change::real(2), Change::real(-4)}).first.as_scalar()
            .as_real() == 7.0);
  auto [y0, c0] = iter(*m, Value::real(1), {});
  CHECK(y0.as_scalar().as_real() == 7.0);
}

TEST_CASE("iter on a dense layer equals reevaluation") {
  auto reg = register_linalg();
  GenConfig cfg;
  cfg.seed = 33;
  Generator g(reg, cfg);
  Type mt = real_matrix(*reg, 4, 3);
  Value w = g.gen_value(mt);
  Value b = g.gen_value(real_array(*reg, 4));
  Term t = dense_layer(*reg, w, b, 4, 3);
  MachinePtr m = incrementalize(t);
  for (int k = 0; k < 50; ++k) {
    Value x = g.gen_value(t.input());
    auto ds = g.gen_changes(t.input(), x, 3);
    std::vector<Change> rev(ds.rbegin(), ds.rend());
    Value got = iter(*m, x, rev).first;
    Value want = denote(t, sum_changes(t.input(), x, rev));
    CHECK(values_equal(t.output(), got, want, Tolerance::rel(1e-6)));
  }
}

TEST_CASE("map steps only the touched indices") {
  auto reg = register_linalg();
  Type a4 = real_array(*reg, 4);
  Term t = typecheck(*reg, Term::map(Term::op("relu")), a4);
  MachinePtr m = incrementalize(t);
  GenConfig cfg;
  cfg.seed = 34;
  Generator g(reg, cfg);
  for (int k = 0; k < 200; ++k) {
    Value x = g.gen_value(a4);
    Change d = g.gen_change(a4, x);
    Change::Map dense = d.as_map();
    for (std::int64_t i = 0; i < 4; ++i) dense.try_emplace(Index(i), Change::real(0));
    Cache sparse_c = m->initialize(x).second;
    Cache dense_c = m->initialize(x).second;
    Value y = denote(t, x);
    Value ys = apply_change(a4, y, m->step(d, sparse_c));
    Value yd = apply_change(a4, y, m->step(Change::map(std::move(dense)), dense_c));
    CHECK(values_equal(a4, ys, yd));
    CHECK(m->cache_equal(sparse_c, dense_c, Tolerance::exact()));
  }
}

TEST_CASE("effective nils are handled downstream") {
  auto reg = register_linalg();
  Type real = reg->parse_type("real");
  Term t = typecheck(*reg, Term::seq(Term::op("relu"), Term::op("relu")), real);
  MachinePtr m = incrementalize(t);
  auto [y, c] = m->initialize(Value::real(-3));
  CHECK(real_of(m->step(Change::real(1), c)) == 0.0);
  CHECK(real_of(m->step(Change::real(4), c)) == 2.0);
}
