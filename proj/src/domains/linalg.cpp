#include "deco/domains/linalg.hpp"

#include "deco/algebra.hpp"
#include "deco/domains/common.hpp"
#include "deco/errors.hpp"
#include "deco/typecheck.hpp"

namespace deco {
namespace {

double real_of(const Value& v) { return v.as_scalar().as_real(); }

bool is_real(const Type& t) { return t.is_base() && t.base().tag() == "real"; }

bool is_real_pair(const Type& t) {
  return t.is_product() && is_real(t.left()) && is_real(t.right());
}

bool is_array_of(const Type& t, auto&& elem) {
  return t.is_container() && t.shape().def().id() == "array" && elem(t.elem());
}

bool is_vector(const Type& t) { return is_array_of(t, is_real); }
bool is_matrix(const Type& t) { return is_array_of(t, is_vector); }

[[noreturn]] void bad_arg(const std::string& prog, const Type& arg,
                          const char* need) {
  throw TypeError(prog + " expects " + need + ", got " + arg.to_string());
}

Term mvmul_term(const Type& arg) {
  if (!arg.is_product() || !is_matrix(arg.left()) || !is_vector(arg.right())) {
    bad_arg("mvmul", arg, "a matrix and a vector");
  }
  return Term::chain({Term::par(Term::id(), Term::replicate(arg.left().shape())),
                      Term::map2(Term::map2(Term::op("mul"))),
                      Term::map(Term::op("sum"))});
}

Term mmmul_term(const Type& arg) {
  if (!arg.is_product() || !is_matrix(arg.left()) || !is_matrix(arg.right())) {
    bad_arg("mmmul", arg, "two matrices");
  }
  const Type& m2 = arg.right();
  Type column_arg = Type::product(arg.left(), Type::container(m2.shape(), m2.elem().elem()));
  return Term::chain(
      {Term::par(Term::replicate(m2.elem().shape()), Term::tp()),
       Term::map2(mvmul_term(column_arg)), Term::tp()});
}

}  // namespace

Type real_array(const Registry& reg, std::int64_t n) {
  return Type::container(Shape(reg.container("array"), ShapeArg::nat(n)),
                         Type::base(reg.base("real")));
}

Type real_matrix(const Registry& reg, std::int64_t n, std::int64_t m) {
  return Type::container(Shape(reg.container("array"), ShapeArg::nat(n)),
                         real_array(reg, m));
}

RegistryPtr register_linalg() {
  auto reg = std::make_shared<Registry>("linalg");
  reg->register_base(real_base());
  reg->register_container(array_container());
  reg->set_literal_base("real");
  Type real = Type::base(reg->base("real"));
  Type pair = Type::product(real, real);
  Type v3 = real_array(*reg, 3);
  Type m23 = real_matrix(*reg, 2, 3);

  reg->register_op(make_op(
      "relu", exactly(real, real),
      [](const Type&, const Type&, const Value& x) {
        double v = real_of(x);
        return Value::real(v > 0 ? v : 0.0);
      },
      Comb::Triv, {real}));
  reg->register_op(make_op(
      "mul", exactly(pair, real),
      [](const Type&, const Type&, const Value& x) {
        return Value::real(real_of(x.first()) * real_of(x.second()));
      },
      Comb::Triv, {pair}));

  OpDef add;
  add.name = "add";
  add.signature = exactly(pair, real);
  add.eval = [](const Type&, const Type&, const Value& x) {
    return Value::real(real_of(x.first()) + real_of(x.second()));
  };
  add.incr = [](const Type&, const Type& out) { return comb_add(out); };
  add.samples = {pair};
  reg->register_op(std::move(add));

  reg->register_op(make_op(
      "sum",
      [](const Type& t) -> std::optional<Type> {
        if (t.is_container() && is_real(t.elem())) return t.elem();
        return std::nullopt;
      },
      [](const Type&, const Type&, const Value& x) {
        double s = 0;
        for (const auto& [i, v] : x.as_map()) s += real_of(v);
        return Value::real(s);
      },
      Comb::Lin, {v3}));

  reg->register_index_fn(IndexFnDef{
      "shift_right",
      [](const Shape& s) -> std::optional<Shape> {
        if (s.def().id() != "array" || s.arg().as_nat() < 1) return std::nullopt;
        return Shape(s.def_ptr(), ShapeArg::nat(s.arg().as_nat() + 1));
      },
      [](const Shape&, const Shape&, const Index& j) {
        return Index(j.as_int() == 0 ? 0 : j.as_int() - 1);
      },
      [](const Shape&, const Shape&, const Index& i)
          -> std::optional<std::vector<Index>> {
        std::vector<Index> js{Index(i.as_int() + 1)};
        if (i.as_int() == 0) js.insert(js.begin(), Index(0));
        return js;
      }});
  reg->register_index_fn(IndexFnDef{
      "reverse",
      [](const Shape& s) -> std::optional<Shape> {
        if (s.def().id() != "array") return std::nullopt;
        return s;
      },
      [](const Shape& s, const Shape&, const Index& j) {
        return Index(s.arg().as_nat() - 1 - j.as_int());
      },
      [](const Shape& s, const Shape&, const Index& i)
          -> std::optional<std::vector<Index>> {
        return std::vector<Index>{Index(s.arg().as_nat() - 1 - i.as_int())};
      }});

  Type vv = Type::product(v3, v3);
  Type mm = Type::product(m23, m23);
  reg->register_program({"vadd",
                         [](const Type&) { return Term::map2(Term::plus()); },
                         {vv}});
  reg->register_program(
      {"madd",
       [](const Type&) { return Term::map2(Term::map2(Term::plus())); },
       {mm}});
  reg->register_program(
      {"hadamard", [](const Type&) { return Term::map2(Term::op("mul")); },
       {vv}});
  reg->register_program(
      {"dot",
       [](const Type&) {
         return Term::seq(Term::map2(Term::op("mul")), Term::op("sum"));
       },
       {vv}});
  reg->register_program(
      {"svmul",
       [](const Type& arg) {
         if (!arg.is_product() || !is_real(arg.left()) ||
             !is_vector(arg.right())) {
           bad_arg("svmul", arg, "a scalar and a vector");
         }
         return Term::seq(
             Term::par(Term::replicate(arg.right().shape()), Term::id()),
             Term::map2(Term::op("mul")));
       },
       {Type::product(real, v3)}});
  reg->register_program(
      {"mvmul", mvmul_term, {Type::product(m23, v3)}});
  reg->register_program(
      {"mmmul", mmmul_term,
       {Type::product(m23, real_matrix(*reg, 3, 2))}});
  reg->register_program(
      {"dense",
       [](const Type& arg) {
         if (!arg.is_product() || !arg.right().is_product()) {
           bad_arg("dense", arg, "m * (b * x)");
         }
         Type mx = Type::product(arg.left(), arg.right().right());
         Term proj_x = Term::seq(Term::snd(), Term::snd());
         Term proj_b = Term::seq(Term::snd(), Term::fst());
         return Term::chain(
             {Term::fork(Term::seq(Term::fork(Term::fst(), proj_x),
                                   mvmul_term(mx)),
                         proj_b),
              Term::map2(Term::plus()), Term::map(Term::op("relu"))});
       },
       {Type::product(m23, Type::product(real_array(*reg, 2), v3))}});
  reg->register_program(
      {"append",
       [](const Type&) {
         return Term::seq(Term::par(Term::id(), Term::reshape("shift_right")),
                          Term::set(Index(0)));
       },
       {Type::product(real, v3)}});

  reg->freeze();
  return reg;
}

Term dense_layer(const Registry& reg, const Value& weights, const Value& bias,
                 std::int64_t n, std::int64_t m) {
  Type mt = real_matrix(reg, n, m);
  Type bt = real_array(reg, n);
  Type xt = real_array(reg, m);
  Term t = Term::chain(
      {Term::fork(Term::cst(mt, weights), Term::id()),
       mvmul_term(Type::product(mt, xt)),
       Term::fork(Term::cst(bt, bias), Term::id()), Term::map2(Term::plus()),
       Term::map(Term::op("relu"))});
  return typecheck(reg, t, xt);
}

Term build_program(const Registry& reg, const std::string& name,
                   const Type& arg) {
  return typecheck(reg, reg.program(name)->build(arg), arg);
}

}  // namespace deco
