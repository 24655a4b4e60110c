#include "deco/domains/gcounter.hpp"

#include <algorithm>

#include "deco/domains/common.hpp"
#include "deco/errors.hpp"

namespace deco {
namespace {

std::uint64_t nat_of(const Value& v) { return v.as_scalar().as_nat(); }

Term inc_nat(const Type& nat) {
  return Term::seq(Term::fork(Term::id(), Term::cst(nat, Value::natural(1))),
                   Term::plus());
}

}  // namespace

Term gcounter_inc_nat(const Registry& reg) {
  return inc_nat(Type::base(reg.base("nat")));
}

Term gcounter_inc(const Index& i) {
  Type nat = Type::base(nat_base());
  return Term::seq(
      Term::fork(Term::seq(Term::get(i), inc_nat(nat)), Term::id()),
      Term::set(i));
}

RegistryPtr register_gcounter(std::vector<Index> participants) {
  if (participants.empty()) {
    throw RegistryError("a grow-only counter needs at least one participant");
  }
  std::sort(participants.begin(), participants.end());
  auto reg = std::make_shared<Registry>("gcounter");
  reg->register_base(nat_base());
  reg->register_container(participants_container("gc", participants));
  reg->set_literal_base("nat");
  Type nat = Type::base(reg->base("nat"));
  Type nn = Type::product(nat, nat);
  Type gc = reg->parse_type("gc<> nat");

  reg->register_op(make_op(
      "max", exactly(nn, nat),
      [](const Type&, const Type&, const Value& x) {
        return Value::natural(std::max(nat_of(x.first()), nat_of(x.second())));
      },
      Comb::Triv, {nn}));
  reg->register_op(make_op(
      "natsum",
      [](const Type& t) -> std::optional<Type> {
        if (t.is_container() && t.elem().is_base() &&
            t.elem().base().tag() == "nat") {
          return t.elem();
        }
        return std::nullopt;
      },
      [](const Type&, const Type&, const Value& x) {
        std::uint64_t s = 0;
        for (const auto& [i, v] : x.as_map()) s += nat_of(v);
        return Value::natural(s);
      },
      Comb::Lin, {gc}));

  reg->register_program(
      {"value", [](const Type&) { return Term::op("natsum"); }, {gc}});
  reg->register_program(
      {"incNat", [nat](const Type&) { return inc_nat(nat); }, {nat}});
  reg->register_program(
      {"merge", [](const Type&) { return Term::map2(Term::op("max")); },
       {Type::product(gc, gc)}});
  for (const auto& p : participants) {
    std::string name = "inc_" + (p.is_int() ? std::to_string(p.as_int())
                                            : p.to_string());
    reg->register_program(
        {name, [p](const Type&) { return gcounter_inc(p); }, {gc}});
  }

  reg->freeze();
  return reg;
}

}  // namespace deco
