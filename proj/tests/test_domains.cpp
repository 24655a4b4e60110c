#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "deco/denote.hpp"
#include "deco/domains/bundles.hpp"
#include "deco/domains/gcounter.hpp"
#include "deco/domains/linalg.hpp"
#include "deco/domains/relalg.hpp"
#include "deco/domains/trees.hpp"
#include "deco/errors.hpp"
#include "deco/incrementalize.hpp"
#include "deco/typecheck.hpp"
#include "support.hpp"

using namespace deco;
using namespace deco::test;

namespace {

using Rng = std::mt19937_64;

std::int64_t uniform(Rng& r, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(r);
}

std::int64_t int_of(const Value& v) { return v.as_scalar().as_int(); }

Value random_relation(Rng& r, std::size_t n) {
  Value::Map m;
  std::size_t want = static_cast<std::size_t>(uniform(r, 0, static_cast<std::int64_t>(n)));
  while (m.size() < want) {
    m.emplace(tup(uniform(r, 0, 5), uniform(r, 0, 5)), Value::integer(uniform(r, -2, 3) | 1));
  }
  return Value::map(std::move(m));
}

// Multiset oracles over relations as sorted tuple maps.
using Bag = std::map<Index, std::int64_t>;

Bag bag(const Value& v) {
  Bag b;
  for (const auto& [i, x] : v.as_map()) b[i] = int_of(x);
  return b;
}

Value from_bag(const Bag& b) {
  Value::Map m;
  for (const auto& [i, n] : b) {
    if (n != 0) m.emplace(i, Value::integer(n));
  }
  return Value::map(std::move(m));
}

Bag combine(const Bag& a, const Bag& b, std::int64_t (*f)(std::int64_t, std::int64_t)) {
  Bag out;
  for (const auto& [i, n] : a) out[i] = f(n, b.count(i) ? b.at(i) : 0);
  for (const auto& [i, n] : b) {
    if (!a.count(i)) out[i] = f(0, n);
  }
  return out;
}

Value gc(const std::vector<std::uint64_t>& xs) {
  Value::Map m;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i]) m.emplace(Index(static_cast<std::int64_t>(i)), Value::natural(xs[i]));
  }
  return Value::map(std::move(m));
}

}  // namespace

TEST_CASE("every bundle loads by name") {
  for (const auto& name : bundle_names()) {
    RegistryPtr reg = load_bundle(name);
    CHECK(reg->name() == name);
    CHECK(reg->frozen());
  }
  CHECK_THROWS_AS(load_bundle("nope"), UsageError);
}

TEST_CASE("linalg programs on small inputs") {
  auto reg = register_linalg();
  Type v3 = real_array(*reg, 3);
  Term dot = build_program(*reg, "dot", Type::product(v3, v3));
  CHECK(denote(dot, Value::pair(vec({1, 2, 3}), vec({4, 5, 6}))).as_scalar().as_real() == 32.0);

  Term mv = build_program(*reg, "mvmul",
                          Type::product(real_matrix(*reg, 2, 2), real_array(*reg, 2)));
  Value y = denote(mv, Value::pair(mat({{1, 2}, {3, 4}}), vec({5, 6})));
  CHECK(at(y, 0) == 17.0);
  CHECK(at(y, 1) == 39.0);

  Term dense = dense_layer(*reg, mat({{1, 0}, {0, 1}}), vec({-10, 0}), 2, 2);
  Value d = denote(dense, vec({3, 4}));
  CHECK(at(d, 0) == 0.0);
  CHECK(at(d, 1) == 4.0);
}

TEST_CASE("relalg examples") {
  auto reg = register_relalg();
  Type r = relation_type(*reg, "(int,str)");
  Index t = tup(1, "a"), u = tup(1, "b");
  Term uni = build_program(*reg, "union", Type::product(r, r));
  CHECK(values_equal(uni.output(), denote(uni, Value::pair(ints({{t, 1}}), ints({{t, 2}, {u, 1}}))),
                     ints({{t, 3}, {u, 1}})));

  Term proj = build_program(*reg, "proj", r);
  Value p = denote(proj, ints({{tup(1, "a"), 1}, {tup(1, "b"), 2}, {tup(2, "c"), 1}}));
  CHECK(values_equal(proj.output(), p, ints({{Index(1), 3}, {Index(2), 1}})));

  Term join = build_program(*reg, "join", Type::product(r, r));
  Value j = denote(join, Value::pair(ints({{t, 1}}), ints({{u, 1}})));
  CHECK(values_equal(join.output(), j, ints({{Index::pair(t, u), 1}})));
  Value none = denote(join, Value::pair(ints({{t, 1}}), ints({{tup(2, "b"), 1}})));
  CHECK(none.as_map().empty());
}

TEST_CASE("relational programs against multiset oracles") {
  auto reg = register_relalg();
  Type r = relation_type(*reg, "(int,int)");
  Type rr = Type::product(r, r);
  Term uni = build_program(*reg, "union", rr);
  Term dif = build_program(*reg, "difference", rr);
  Term inter = build_program(*reg, "intersection", rr);
  Term sel = build_program(*reg, "selection", r);
  Term join = build_program(*reg, "join", rr);
  Term proj = build_program(*reg, "proj", r);
  Rng rng(41);
  for (int k = 0; k < 200; ++k) {
    Value a = random_relation(rng, 20), b = random_relation(rng, 20);
    Value ab = Value::pair(a, b);
    Bag x = bag(a), y = bag(b);
    auto add = [](std::int64_t p, std::int64_t q) { return p + q; };
    auto sub = [](std::int64_t p, std::int64_t q) { return p - q; };
    auto mul = [](std::int64_t p, std::int64_t q) { return p * q; };
    CHECK(values_equal(r, denote(uni, ab), from_bag(combine(x, y, add))));
    CHECK(values_equal(r, denote(dif, ab), from_bag(combine(x, y, sub))));
    CHECK(values_equal(r, denote(inter, ab), from_bag(combine(x, y, mul))));

    Bag s;
    for (const auto& [i, n] : x) {
      if (i.first().as_int() % 2 == 0) s[i] = n;
    }
    CHECK(values_equal(r, denote(sel, a), from_bag(s)));

    Bag jn;
    for (const auto& [i, n] : x) {
      for (const auto& [j, m] : y) {
        if (i.first() == j.first()) jn[Index::pair(i, j)] = n * m;
      }
    }
    CHECK(values_equal(join.output(), denote(join, ab), from_bag(jn)));

    Bag groups;
    for (const auto& [i, n] : x) groups[i.first()] += n;
    CHECK(values_equal(proj.output(), denote(proj, a), from_bag(groups)));
  }
}

TEST_CASE("tree folds and conversions") {
  auto reg = register_trees();
  Type ty = reg->parse_type("tree<> int");
  Json rose = Json::parse(R"({"value":1,"children":[{"value":2},{"value":3}]})");
  Value m = tree_to_map(rose);
  CHECK(denote(typecheck(*reg, Term::op("tree_sum"), ty), m).as_scalar().as_int() == 6);
  CHECK(denote(typecheck(*reg, Term::op("tree_size"), ty), m).as_scalar().as_int() == 3);
  CHECK(denote(typecheck(*reg, Term::op("tree_max"), ty), m).as_scalar().as_int() == 3);
  CHECK(values_equal(ty, tree_to_map(map_to_tree(m)), m));

  Json deep = Json::parse(R"({"value":1,"children":[{"value":2,"children":[{"value":4}]}]})");
  Value::Map broken = tree_to_map(deep).as_map();
  broken.erase(Index::path({PathStep(std::int64_t{0})}));
  CHECK_THROWS_AS(map_to_tree(Value::map(std::move(broken))), StructureError);
}

TEST_CASE("document encoding round trips") {
  Json books = bibliography();
  REQUIRE(books.size() == 4);
  Value m = documents_to_map(books);
  Json back = map_to_documents(m);
  REQUIRE(back.size() == books.size());
  for (std::size_t k = 0; k < books.size(); ++k) {
    const Json& doc = back.at(std::to_string(k));
    CHECK(doc["title"] == books[k]["title"]);
    CHECK(doc["year"].get<double>() == books[k]["year"].get<double>());
  }
}

TEST_CASE("Q1 selects the Addison-Wesley books after 1991") {
  auto reg = register_trees();
  Type ty = reg->parse_type("dict<int> tree<> json");
  Term t = build_program(*reg, "q1", ty);
  Json out = map_to_documents(denote(t, documents_to_map(bibliography())));
  Json want = Json::parse(R"([{"title":"TCP/IP Illustrated","year":1994},
    {"title":"Advanced Programming in the Unix environment","year":1992}])");
  REQUIRE(out.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    const Json& doc = out.at(std::to_string(k));
    CHECK(doc["title"] == want[k]["title"]);
    CHECK(doc["year"].get<double>() == want[k]["year"].get<double>());
    CHECK(doc.size() == 2);
  }
}

TEST_CASE("gcounter programs") {
  auto reg = register_gcounter();
  Type g = reg->program("value")->samples.front();
  Term merge = build_program(*reg, "merge", Type::product(g, g));
  CHECK(values_equal(g, denote(merge, Value::pair(gc({2, 0, 1}), gc({1, 3, 0}))), gc({2, 3, 1})));
  Term value = build_program(*reg, "value", g);
  CHECK(denote(value, gc({2, 3, 1})).as_scalar().as_nat() == 6u);
  Term inc = build_program(*reg, "inc_1", g);
  CHECK(values_equal(g, denote(inc, gc({2, 3, 1})), gc({2, 4, 1})));
  CHECK_THROWS_AS(typecheck(*reg, gcounter_inc(Index(7)), g), TypeError);
  CHECK_THROWS_AS(register_gcounter({}), RegistryError);
}

TEST_CASE("incremental merge feeds the running value") {
  auto reg = register_gcounter();
  Type g = reg->program("value")->samples.front();
  Term t = typecheck(*reg, Term::seq(Term::map2(Term::op("max")), Term::op("natsum")),
                     Type::product(g, g));
  MachinePtr m = incrementalize(t);
  auto [y, c] = m->initialize(Value::pair(gc({2, 0, 1}), gc({1, 0, 0})));
  CHECK(y.as_scalar().as_nat() == 3u);
  Change::Map d;
  d.emplace(Index(1), Change::natural(3));
  Change dy = m->step(Change::pair(Change::map(), Change::map(std::move(d))), c);
  CHECK(dy.as_scalar().as_nat() == 3u);
}
