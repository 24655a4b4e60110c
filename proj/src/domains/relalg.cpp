#include "deco/domains/relalg.hpp"

#include "deco/domains/common.hpp"
#include "deco/errors.hpp"

namespace deco {
namespace {

std::int64_t int_of(const Value& v) { return v.as_scalar().as_int(); }

bool is_int(const Type& t) { return t.is_base() && t.base().tag() == "int"; }

bool is_relation(const Type& t) {
  return t.is_container() && t.shape().def().id() == "rel" && is_int(t.elem());
}

Value cross(const Value& x) {
  Value::Map out;
  const auto& a = x.first().as_map();
  const auto& b = x.second().as_map();
  out.reserve(a.size() * b.size());
  for (const auto& [i, u] : a) {
    for (const auto& [j, v] : b) {
      out.emplace(Index::pair(i, j), Value::integer(int_of(u) * int_of(v)));
    }
  }
  return Value::map(std::move(out));
}

Value count(const Value& x) {
  std::int64_t n = 0;
  for (const auto& [i, v] : x.as_map()) n += int_of(v);
  return Value::integer(n);
}

}  // namespace

const Index& tuple_key(const Index& i) {
  return i.kind() == Index::Kind::Pair ? i.first() : i;
}

Type relation_type(const Registry& reg, const std::string& schema) {
  return reg.parse_type("rel<" + schema + "> int");
}

RegistryPtr register_relalg() {
  auto reg = std::make_shared<Registry>("relalg");
  reg->register_base(int_base());
  reg->register_container(relation_container());
  reg->register_container(dict_container());
  reg->set_literal_base("int");
  Type z = Type::base(reg->base("int"));
  Type zz = Type::product(z, z);
  Type r1 = relation_type(*reg, "int");
  Type r2 = relation_type(*reg, "(int,str)");
  Type r3 = relation_type(*reg, "(int,int)");
  ContainerPtr dict = reg->container("dict");

  reg->register_op(make_op(
      "intmul", exactly(zz, z),
      [](const Type&, const Type&, const Value& x) {
        return Value::integer(int_of(x.first()) * int_of(x.second()));
      },
      Comb::Triv, {zz}));
  reg->register_op(make_op(
      "intsub", exactly(zz, z),
      [](const Type&, const Type&, const Value& x) {
        return Value::integer(int_of(x.first()) - int_of(x.second()));
      },
      Comb::Lin, {zz}));
  reg->register_op(make_op(
      "cross",
      [](const Type& t) -> std::optional<Type> {
        if (!t.is_product() || !is_relation(t.left()) ||
            !is_relation(t.right())) {
          return std::nullopt;
        }
        Shape s(t.left().shape().def_ptr(),
                ShapeArg::pair(t.left().shape().arg(),
                               t.right().shape().arg()));
        return Type::container(s, t.left().elem());
      },
      [](const Type&, const Type&, const Value& x) { return cross(x); },
      Comb::BiLin, {Type::product(r1, r2), Type::product(r3, r3)}));
  reg->register_op(make_op(
      "count",
      [](const Type& t) -> std::optional<Type> {
        if (is_relation(t)) return t.elem();
        return std::nullopt;
      },
      [](const Type&, const Type&, const Value& x) { return count(x); },
      Comb::Self, {r1, r2}));

  for (bool first : {true, false}) {
    std::string name = first ? "groupBy_fst" : "groupBy_snd";
    reg->register_op(make_op(
        name,
        [dict, first](const Type& t) -> std::optional<Type> {
          if (!is_relation(t) ||
              t.shape().arg().kind() != ShapeArg::Kind::Pair) {
            return std::nullopt;
          }
          const ShapeArg& a = t.shape().arg();
          return Type::container(Shape(dict, first ? a.first() : a.second()),
                                 t);
        },
        [first](const Type&, const Type&, const Value& x) {
          Value::Map out;
          for (const auto& [i, v] : x.as_map()) {
            const Index& k = first ? i.first() : i.second();
            auto it = out.find(k);
            if (it == out.end()) it = out.emplace(k, Value::map()).first;
            it->second.mutable_map().emplace(i, v);
          }
          return Value::map(std::move(out));
        },
        Comb::Self, {r2, r3}));
  }

  reg->register_predicate(
      {"key_eq", [](const Shape&, const Index& i) {
         return i.kind() == Index::Kind::Pair &&
                tuple_key(i.first()) == tuple_key(i.second());
       }});
  reg->register_predicate(
      {"even_key", [](const Shape&, const Index& i) {
         const Index& k = tuple_key(i);
         return k.is_int() && k.as_int() % 2 == 0;
       }});

  Term zero = Term::cst(z, Value::integer(0));
  Type rr = Type::product(r2, r2);
  reg->register_program(
      {"join",
       [zero](const Type&) {
         return Term::chain({Term::op("cross"), Term::fork(zero, Term::id()),
                             Term::filter("key_eq")});
       },
       {Type::product(r2, r2), Type::product(r3, r3)}});
  reg->register_program(
      {"selection",
       [zero](const Type&) {
         return Term::seq(Term::fork(zero, Term::id()),
                          Term::filter("even_key"));
       },
       {r1, r2}});
  reg->register_program(
      {"union", [](const Type&) { return Term::map2(Term::plus()); }, {rr}});
  reg->register_program(
      {"difference",
       [](const Type&) { return Term::map2(Term::op("intsub")); },
       {rr}});
  reg->register_program(
      {"intersection",
       [](const Type&) { return Term::map2(Term::op("intmul")); },
       {rr}});
  reg->register_program(
      {"proj",
       [](const Type&) {
         return Term::seq(Term::op("groupBy_fst"),
                          Term::map(Term::op("count")));
       },
       {r2, r3}});

  reg->freeze();
  return reg;
}

}  // namespace deco
