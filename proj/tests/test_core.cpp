#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "deco/codec.hpp"
#include "deco/errors.hpp"
#include "deco/oracle/gen.hpp"
#include "deco/oracle/suites.hpp"
#include "support.hpp"

using namespace deco;
using namespace deco::test;

TEST_CASE("apply_change on a sum adds inside the same injection") {
  Type ty = Type::sum(real_t(), real_t());
  Value v = apply_change(ty, Value::left(Value::real(5)), Change::cl(Change::real(2)));
  CHECK(values_equal(ty, v, Value::left(Value::real(7))));
}

TEST_CASE("apply_change with a nil change is the identity") {
  CHECK(values_equal(real_t(), apply_change(real_t(), Value::real(3.5), Change::real(0)),
                     Value::real(3.5)));
}

TEST_CASE("apply_change on arrays is elementwise") {
  Type ty = array_t(3, real_t());
  Change::Map d;
  d.emplace(Index(1), Change::real(10));
  Value v = apply_change(ty, vec({1, 2, 3}), Change::map(std::move(d)));
  for (std::int64_t i : {0, 1, 2}) CHECK(at(v, i) == std::vector<double>{1, 12, 3}[i]);
}

TEST_CASE("apply_change rejects a structural mismatch") {
  CHECK_THROWS_AS(apply_change(real_t(), Value::real(1), Change::map()), ConformanceError);
}

TEST_CASE("diff_values on reals subtracts") {
  Change d = diff_values(real_t(), Value::real(7), Value::real(3));
  CHECK(d.as_scalar().as_real() == 4.0);
}

TEST_CASE("diff_values across injections replaces") {
  Type ty = Type::sum(real_t(), real_t());
  Change d = diff_values(ty, Value::right(Value::real(2)), Value::left(Value::real(9)));
  REQUIRE(d.kind() == Change::Kind::Sr);
  CHECK(d.replacement().as_scalar().as_real() == 2.0);
}

TEST_CASE("self-difference is an effective nil") {
  Type ty = Type::product(array_t(2, real_t()), Type::sum(int_t(), real_t()));
  Value v = Value::pair(vec({1, 2}), Value::right(Value::real(4)));
  CHECK(values_equal(ty, apply_change(ty, v, diff_values(ty, v, v)), v));
}

TEST_CASE("nil_change is structural") {
  CHECK(nil_change(real_t()).as_scalar().as_real() == 0.0);
  CHECK(nil_change(array_t(3, real_t())).as_map().empty());
  CHECK(nil_change(Type::sum(real_t(), real_t())).kind() == Change::Kind::Null);
}

TEST_CASE("is_nil is canonical, not effective") {
  Type sum = Type::sum(real_t(), real_t());
  CHECK(is_nil(real_t(), Change::real(0)));
  CHECK(is_nil(array_t(3, real_t()), Change::map()));
  CHECK(is_nil(sum, Change::null()));
  CHECK_FALSE(is_nil(sum, Change::cl(Change::real(0))));
}

TEST_CASE("support lists stored keys and drops cancelled entries") {
  Type ty = array_t(3, real_t());
  CHECK(support(vec({1, 0, 5})) == std::vector<Index>{Index(0), Index(2)});
  CHECK(support(vec({})).empty());
  Change::Map d;
  d.emplace(Index(0), Change::real(-1));
  CHECK(support(apply_change(ty, vec({1}), Change::map(std::move(d)))).empty());
  CHECK_THROWS_AS(support(Value::real(1)), UsageError);
}

TEST_CASE("sum changes cover every variant") {
  Type ty = Type::sum(int_t(), int_t());
  Value l = Value::left(Value::integer(1));
  CHECK(values_equal(ty, apply_change(ty, l, Change::cl(Change::integer(2))),
                     Value::left(Value::integer(3))));
  CHECK(values_equal(ty, apply_change(ty, l, Change::sl(Value::integer(8))),
                     Value::left(Value::integer(8))));
  CHECK(values_equal(ty, apply_change(ty, l, Change::sr(Value::integer(9))),
                     Value::right(Value::integer(9))));
  CHECK(values_equal(ty, apply_change(ty, l, Change::null()), l));
}

TEST_CASE("index ordering is total and stable") {
  std::vector<Index> is{Index::string("b"), Index(2), tup(1, 2), Index(-1), Index::string("a")};
  std::sort(is.begin(), is.end());
  for (std::size_t k = 1; k < is.size(); ++k) CHECK(is[k - 1] < is[k]);
  CHECK(index_from_text(index_to_text(tup(3, "x"))) == tup(3, "x"));
}

TEST_CASE("completeness and nil law on random values") {
  GenConfig cfg;
  cfg.seed = 17;
  Generator g(calculus_registry(), cfg);
  for (int k = 0; k < 500; ++k) {
    Type ty = g.gen_type(3);
    Value x = g.gen_value(ty);
    Value y = ty.mentions("nat") ? apply_change(ty, x, g.gen_change(ty, x)) : g.gen_value(ty);
    CHECK_MESSAGE(values_equal(ty, apply_change(ty, x, diff_values(ty, y, x)), y,
                               cfg.tolerance_for(ty)),
                  ty.to_string());
    CHECK(values_equal(ty, apply_change(ty, x, nil_change(ty)), x));
  }
}

TEST_CASE("updates and differences stay canonical") {
  GenConfig cfg;
  cfg.seed = 18;
  Generator g(calculus_registry(), cfg);
  std::function<bool(const Type&, const Value&)> sparse = [&](const Type& ty, const Value& v) {
    switch (ty.kind()) {
      case Type::Kind::Container:
        for (const auto& [i, e] : v.as_map()) {
          if (is_default(ty.elem(), e) || !sparse(ty.elem(), e)) return false;
        }
        return true;
      case Type::Kind::Product:
        return sparse(ty.left(), v.first()) && sparse(ty.right(), v.second());
      default:
        return true;
    }
  };
  for (int k = 0; k < 300; ++k) {
    Type ty = g.gen_type(3);
    Value x = g.gen_value(ty);
    CHECK(sparse(ty, apply_change(ty, x, g.gen_change(ty, x))));
  }
}

TEST_CASE("value and change text round trip") {
  GenConfig cfg;
  cfg.seed = 19;
  Generator g(calculus_registry(), cfg);
  for (int k = 0; k < 300; ++k) {
    Type ty = g.gen_type(3);
    Value x = g.gen_value(ty);
    Change d = g.gen_change(ty, x);
    CHECK(values_equal(ty, value_from_text(ty, value_to_text(ty, x)), x));
    CHECK(change_to_text(ty, change_from_text(ty, change_to_text(ty, d))) ==
          change_to_text(ty, d));
  }
}

TEST_CASE("value text sorts mapping keys") {
  Type ty = array_t(3, real_t());
  CHECK(value_to_text(ty, vec({3, 0, 1})) == "[[0,3.0],[2,1.0]]");
}
