#include "deco/denote.hpp"

#include "deco/algebra.hpp"
#include "deco/errors.hpp"
#include "deco/generic_ops.hpp"
#include "deco/registry.hpp"

namespace deco {
namespace {

Value denote_map(const Term& t, const Value& v) {
  const Term& f = t.kid(0);
  const Type& in = t.input();
  const Type& out_elem = t.output().elem();
  Value fe = denote(f, epsilon(in.elem()));
  Value::Map out;
  if (is_default(out_elem, fe)) {
    for (const auto& [i, x] : v.as_map()) {
      Value y = denote(f, x);
      if (!is_default(out_elem, y)) out.emplace(i, std::move(y));
    }
    return Value::map(std::move(out));
  }
  if (!in.shape().finite()) {
    throw FiniteSupportError("map over infinite shape " +
                             in.shape().to_string() +
                             " with f(ε) non-default");
  }
  for (const auto& i : in.shape().positions()) {
    const Value* x = v.find(i);
    Value y = x ? denote(f, *x) : fe;
    if (!is_default(out_elem, y)) out.emplace(i, std::move(y));
  }
  return Value::map(std::move(out));
}

}  // namespace

Value denote(const Term& t, const Value& v) {
  if (!t.typed()) throw UsageError("denote needs a checked term");
  using K = Term::Kind;
  using S = ValueSide;
  switch (t.kind()) {
    case K::Seq:
      return denote(t.kid(1), denote(t.kid(0), v));
    case K::Par:
      return Value::pair(denote(t.kid(0), v.first()),
                         denote(t.kid(1), v.second()));
    case K::Id:
      return v;
    case K::Dup:
      return Value::pair(v, v);
    case K::Fst:
      return v.first();
    case K::Snd:
      return v.second();
    case K::Plus:
      return apply_change(t.output(), v.first(),
                          to_change(t.output(), v.second()));
    case K::Cst:
      return t.literal();
    case K::Map:
      return denote_map(t, v);
    case K::Zip:
      return generic::zip<S>(t.input(), v);
    case K::Get:
      return generic::get<S>(t.input(), t.index(), v);
    case K::Set:
      return generic::set<S>(t.input(), t.index(), v);
    case K::Reshape:
      return generic::reshape<S>(*t.index_fn(), t.input(), t.output(), v);
    case K::Replicate:
      return generic::replicate<S>(t.input(), t.shape(), v);
    case K::Tp:
      return generic::tp<S>(v);
    case K::Filter:
      return generic::filter<S>(*t.predicate(), t.input(), v);
    case K::Fuse:
      return v.inner();
    case K::Distr: {
      const Value& s = v.second();
      Value p = Value::pair(v.first(), s.inner());
      return s.is_left() ? Value::left(std::move(p))
                         : Value::right(std::move(p));
    }
    case K::Inl:
      return Value::left(v);
    case K::Inr:
      return Value::right(v);
    case K::Case:
      if (v.is_left()) return Value::left(denote(t.kid(0), v.inner()));
      return Value::right(denote(t.kid(1), v.inner()));
    case K::Op:
      return t.op_def()->eval(t.input(), t.output(), v);
  }
  throw UsageError("unknown constructor");
}

}  // namespace deco
