#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "deco/denote.hpp"
#include "deco/domains/bundles.hpp"
#include "deco/domains/linalg.hpp"
#include "deco/errors.hpp"
#include "deco/frontend/lower.hpp"
#include "deco/frontend/syntax.hpp"
#include "deco/oracle/suites.hpp"
#include "support.hpp"

using namespace deco;
using namespace deco::test;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path programs_dir() { return std::filesystem::path(DECO_SOURCE_DIR) / "programs"; }

}  // namespace

TEST_CASE("parse the dense layer text") {
  Expr e = parse_expr("map relu # map2 add # (mvmul # [m, x], b)");
  REQUIRE(e.kind == Expr::Kind::App);
  CHECK(e.fn.kind == FunExpr::Kind::Map);
  REQUIRE(e.kids.size() == 1);
  const Expr& inner = e.kids[0];
  REQUIRE(inner.kind == Expr::Kind::App);
  CHECK(inner.fn.kind == FunExpr::Kind::Map2);
  REQUIRE(inner.kids[0].kind == Expr::Kind::Tuple);
  CHECK(inner.kids[0].kids.size() == 2);
  CHECK(inner.kids[0].kids[1].name == "b");
}

TEST_CASE("parse a let binding") {
  Expr e = parse_expr("let r = relu # a; add # (r, b)");
  REQUIRE(e.kind == Expr::Kind::Let);
  CHECK(e.name == "r");
  REQUIRE(e.kids.size() == 2);
  CHECK(e.kids[0].kind == Expr::Kind::App);
  CHECK(e.kids[1].kind == Expr::Kind::App);
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_expr("add # (a,\n  b");
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.line() == 2);
    CHECK(err.column() >= 3);
    CHECK(std::string(err.what()).rfind("2:", 0) == 0);
  }
  CHECK_THROWS_AS(parse_program("bundle linalg (x : real add # (x, x)"), ParseError);
}

TEST_CASE("resolve assigns context positions") {
  Expr y = resolve(parse_expr("y"), {"x", "y"});
  CHECK(y.ordinal == std::optional<std::size_t>(1));
  Expr x = resolve(parse_expr("x"), {"x", "y"});
  CHECK(x.ordinal == std::optional<std::size_t>(0));
  try {
    resolve(parse_expr("add # (x, z)"), {"x", "y"});
    FAIL("expected a type error");
  } catch (const TypeError& err) {
    CHECK(std::string(err.what()).find("z") != std::string::npos);
  }
}

TEST_CASE("lowering a variable projects the context") {
  auto reg = register_linalg();
  Type a = reg->parse_type("real"), b = real_array(*reg, 2);
  Term t = lower(*reg, resolve(parse_expr("v"), {"u", "v"}), {a, b});
  CHECK(t.input() == Type::product(a, b));
  CHECK(t.output() == b);
  Value in = Value::pair(Value::real(1), vec({2, 3}));
  CHECK(values_equal(b, denote(t, in), vec({2, 3})));
  Term first = lower(*reg, resolve(parse_expr("u"), {"u", "v"}), {a, b});
  CHECK(denote(first, in).as_scalar().as_real() == 1.0);
}

TEST_CASE("let agrees with the reference interpreter") {
  auto reg = register_linalg();
  Type real = reg->parse_type("real");
  ParsedProgram p = parse_program(slurp(programs_dir() / "let.deco"));
  CompiledProgram c = compile_program(*reg, p);
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int k = 0; k < 100; ++k) {
    std::vector<Value> vals{Value::real(u(rng)), Value::real(u(rng))};
    Value want = reference_eval(*reg, p.body, c.names, c.types, vals);
    Value got = denote(c.term, context_value(vals));
    CHECK(values_equal(real, got, want, Tolerance::rel(1e-12)));
    double r = std::max(0.0, vals[0].as_scalar().as_real());
    CHECK(got.as_scalar().as_real() == doctest::Approx(r * r + vals[1].as_scalar().as_real()));
  }
}

TEST_CASE("unused parameters do not change the result") {
  auto reg = register_linalg();
  Type real = reg->parse_type("real");
  Expr body = parse_expr("add # (a, b)");
  Term narrow = lower(*reg, resolve(body, {"a", "b"}), {real, real});
  Term wide = lower(*reg, resolve(body, {"a", "b", "c"}), {real, real, real});
  for (double c : {-3.0, 0.0, 8.0}) {
    Value x = context_value({Value::real(2), Value::real(5)});
    Value xw = context_value({Value::real(2), Value::real(5), Value::real(c)});
    CHECK(denote(narrow, x).as_scalar().as_real() == denote(wide, xw).as_scalar().as_real());
  }
}

TEST_CASE("example programs compile") {
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(programs_dir())) {
    if (entry.path().extension() != ".deco") continue;
    ParsedProgram p = parse_program(slurp(entry.path()));
    RegistryPtr reg = load_bundle(p.bundle);
    CompiledProgram c = compile_program(*reg, p);
    CHECK(c.term.input() == c.input);
    CHECK(c.names.size() == p.params.size());
    ++seen;
  }
  CHECK(seen >= 3);
}

TEST_CASE("compiled dense text matches the built dense layer") {
  auto reg = register_linalg();
  ParsedProgram p = parse_program(slurp(programs_dir() / "dense.deco"));
  CompiledProgram c = compile_program(*reg, p);
  Value m = mat({{1, -1, 0}, {2, 0, 1}}), b = vec({0.5, -4}), x = vec({1, 1, 3});
  Value got = denote(c.term, context_value({m, b, x}));
  Value want = denote(dense_layer(*reg, m, b, 2, 3), x);
  CHECK(values_equal(real_array(*reg, 2), got, want));
}

TEST_CASE("frontend property suite passes") {
  GenConfig cfg;
  cfg.seed = 62;
  for (const CheckRecord& r : frontend_suite(cfg, 50)) {
    CHECK_MESSAGE(r.pass, r.name << " " << r.witness.dump());
  }
}
