#pragma once

#include "deco/algebra.hpp"
#include "deco/errors.hpp"
#include "deco/registry.hpp"
#include "deco/term.hpp"
#include "deco/type.hpp"
#include "deco/value.hpp"

namespace deco {

/// The container operations are linear, so one implementation serves both
/// the value semantics and the change semantics (their own derivative).
/// A side fixes the carrier and its per-type default: ε for values, the
/// canonical nil for changes.
struct ValueSide {
  using T = Value;
  static constexpr bool changes = false;
  static T dflt(const Type& ty) { return epsilon(ty); }
  static bool is_dflt(const Type& ty, const T& v) { return is_default(ty, v); }
  static T left(T v) { return Value::left(std::move(v)); }
  static T right(T v) { return Value::right(std::move(v)); }
};

struct ChangeSide {
  using T = Change;
  static constexpr bool changes = true;
  static T dflt(const Type& ty) { return nil_change(ty); }
  static bool is_dflt(const Type& ty, const T& d) { return is_nil(ty, d); }
  static T left(T d) { return Change::cl(std::move(d)); }
  static T right(T d) { return Change::cr(std::move(d)); }
};

namespace generic {

template <class S>
typename S::T entry(const Type& elem, const typename S::T& m, const Index& i) {
  const auto* e = m.find(i);
  return e ? *e : S::dflt(elem);
}

/// zip : F_s X × F_s Y → F_s (X × Y)
template <class S>
typename S::T zip(const Type& in, const typename S::T& x) {
  using T = typename S::T;
  const Type& tx = in.left().elem();
  const Type& ty = in.right().elem();
  const auto& a = x.first().as_map();
  const auto& b = x.second().as_map();
  typename T::Map out;
  out.reserve(a.size() + b.size());
  for (const auto& [i, v] : a) {
    out.emplace(i, T::pair(v, entry<S>(ty, x.second(), i)));
  }
  for (const auto& [i, v] : b) {
    if (!a.count(i)) out.emplace(i, T::pair(S::dflt(tx), v));
  }
  return T::map(std::move(out));
}

/// tp : F_s F_t X → F_t F_s X
template <class S>
typename S::T tp(const typename S::T& x) {
  using T = typename S::T;
  typename T::Map out;
  for (const auto& [i, row] : x.as_map()) {
    for (const auto& [j, v] : row.as_map()) {
      auto it = out.find(j);
      if (it == out.end()) it = out.emplace(j, T::map()).first;
      it->second.mutable_map().emplace(i, v);
    }
  }
  return T::map(std::move(out));
}

template <class S>
typename S::T get(const Type& in, const Index& i, const typename S::T& x) {
  return entry<S>(in.elem(), x, i);
}

/// set i : X × F_s X → F_s X
template <class S>
typename S::T set(const Type& in, const Index& i, const typename S::T& x) {
  typename S::T out = x.second();
  if (S::is_dflt(in.left(), x.first())) {
    out.mutable_map().erase(i);
  } else {
    out.mutable_map().insert_or_assign(i, x.first());
  }
  return out;
}

template <class S>
typename S::T reshape(const IndexFnDef& fn, const Type& in, const Type& out_ty,
                      const typename S::T& x) {
  using T = typename S::T;
  const Shape& s = in.shape();
  const Shape& o = out_ty.shape();
  typename T::Map out;
  if (o.finite()) {
    for (const auto& j : o.positions()) {
      Index i = fn.map(s, o, j);
      if (!s.valid_index(i)) {
        throw UsageError("index function " + fn.name + " maps " +
                         j.to_string() + " to " + i.to_string() +
                         ", which is not a position of " + s.to_string());
      }
      if (const auto* e = x.find(i)) out.emplace(j, *e);
    }
    return T::map(std::move(out));
  }
  if (!fn.preimage) {
    throw FiniteSupportError("index function " + fn.name +
                             " has no preimage for infinite shape " +
                             o.to_string());
  }
  for (const auto& [i, v] : x.as_map()) {
    auto js = fn.preimage(s, o, i);
    if (!js) {
      throw FiniteSupportError("index function " + fn.name +
                               " has an infinite fiber over " + i.to_string());
    }
    for (const auto& j : *js) out.insert_or_assign(j, v);
  }
  return T::map(std::move(out));
}

/// replicate s : A → F_s A. Over an infinite shape the argument is ε before
/// and after every valid change, so its change replicates to nil.
template <class S>
typename S::T replicate(const Type& in, const Shape& s,
                        const typename S::T& x) {
  using T = typename S::T;
  if (S::is_dflt(in, x) || (S::changes && !s.finite())) return T::map();
  if (!s.finite()) {
    throw InputPreconditionError("replicate of a non-default element over "
                             "infinite shape " +
                             s.to_string());
  }
  typename T::Map out;
  out.reserve(s.positions().size());
  for (const auto& i : s.positions()) out.emplace(i, x);
  return T::map(std::move(out));
}

/// filter p : X × F_s X → F_s X, λi. if p i then a i else x. Over an
/// infinite shape the fallback is ε before and after every valid change, so
/// the change at unselected positions is nil whatever its fallback change.
template <class S>
typename S::T filter(const PredicateDef& p, const Type& in,
                     const typename S::T& x) {
  using T = typename S::T;
  const Shape& s = in.right().shape();
  const auto& fallback = x.first();
  const auto& a = x.second();
  typename T::Map out;
  if (S::is_dflt(in.left(), fallback) || (S::changes && !s.finite())) {
    for (const auto& [i, v] : a.as_map()) {
      if (p.test(s, i)) out.emplace(i, v);
    }
    return T::map(std::move(out));
  }
  if (!s.finite()) {
    throw InputPreconditionError("filter with a non-default fallback over "
                             "infinite shape " +
                             s.to_string());
  }
  for (const auto& i : s.positions()) {
    if (p.test(s, i)) {
      if (const auto* e = a.find(i)) out.emplace(i, *e);
    } else {
      out.emplace(i, fallback);
    }
  }
  return T::map(std::move(out));
}

}  // namespace generic
}  // namespace deco
