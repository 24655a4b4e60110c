#include "deco/incrementalize.hpp"

#include "deco/algebra.hpp"
#include "deco/denote.hpp"
#include "deco/errors.hpp"
#include "deco/fault.hpp"
#include "deco/generic_ops.hpp"
#include "deco/registry.hpp"

namespace deco {
namespace {

class SeqMachine final : public Machine {
 public:
  SeqMachine(MachinePtr f, MachinePtr g)
      : Machine(f->input_type(), g->output_type()),
        f_(std::move(f)),
        g_(std::move(g)) {}

  std::pair<Value, Cache> initialize(const Value& x) const override {
    auto [y, c1] = f_->initialize(x);
    auto [z, c2] = g_->initialize(y);
    return {std::move(z), Cache::pair(std::move(c1), std::move(c2))};
  }

  Change step(const Change& dx, Cache& c) const override {
    Change dy = f_->step(dx, c.first());
    if (fault_active(Fault::SeqCache)) {
      Cache stale = c.second();
      return g_->step(dy, stale);
    }
    return g_->step(dy, c.second());
  }

  bool stateless() const override {
    return f_->stateless() && g_->stateless();
  }

  bool cache_equal(const Cache& a, const Cache& b,
                   const Tolerance& tol) const override {
    return f_->cache_equal(a.first(), b.first(), tol) &&
           g_->cache_equal(a.second(), b.second(), tol);
  }

  std::string describe() const override {
    return "(" + f_->describe() + " ; " + g_->describe() + ")";
  }

 private:
  MachinePtr f_;
  MachinePtr g_;
};

class ParMachine final : public Machine {
 public:
  ParMachine(MachinePtr f, MachinePtr g)
      : Machine(Type::product(f->input_type(), g->input_type()),
                Type::product(f->output_type(), g->output_type())),
        f_(std::move(f)),
        g_(std::move(g)) {}

  std::pair<Value, Cache> initialize(const Value& x) const override {
    auto [y1, c1] = f_->initialize(x.first());
    auto [y2, c2] = g_->initialize(x.second());
    return {Value::pair(std::move(y1), std::move(y2)),
            Cache::pair(std::move(c1), std::move(c2))};
  }

  Change step(const Change& dx, Cache& c) const override {
    Change d1 = f_->step(dx.first(), c.first());
    Change d2 = g_->step(dx.second(), c.second());
    return Change::pair(std::move(d1), std::move(d2));
  }

  bool stateless() const override {
    return f_->stateless() && g_->stateless();
  }

  bool cache_equal(const Cache& a, const Cache& b,
                   const Tolerance& tol) const override {
    return f_->cache_equal(a.first(), b.first(), tol) &&
           g_->cache_equal(a.second(), b.second(), tol);
  }

  std::string describe() const override {
    return "(" + f_->describe() + " x " + g_->describe() + ")";
  }

 private:
  MachinePtr f_;
  MachinePtr g_;
};

/// Per-index machine copies. Only touched indices are stepped; absent
/// indices share the cache of f at ε.
class MapMachine final : public Machine {
 public:
  MapMachine(MachinePtr f, const Shape& s)
      : Machine(Type::container(s, f->input_type()),
                Type::container(s, f->output_type())),
        f_(std::move(f)) {
    auto [y, c] = f_->initialize(epsilon(f_->input_type()));
    fe_ = std::move(y);
    fc_ = std::move(c);
  }

  std::pair<Value, Cache> initialize(const Value& x) const override {
    const Type& out_elem = output_type().elem();
    const Shape& s = input_type().shape();
    bool dense = !is_default(out_elem, fe_);
    if (dense && !s.finite()) {
      throw FiniteSupportError("map over infinite shape " + s.to_string() +
                               " with f(ε) non-default");
    }
    Value::Map out;
    Cache::Entries entries;
    for (const auto& [i, xi] : x.as_map()) {
      auto [y, c] = f_->initialize(xi);
      if (!is_default(out_elem, y)) out.emplace(i, std::move(y));
      if (!f_->stateless()) entries.emplace(i, std::move(c));
    }
    if (dense) {
      for (const auto& i : s.positions()) {
        if (!x.find(i)) out.emplace(i, fe_);
      }
    }
    return {Value::map(std::move(out)),
            Cache::indexed(std::move(entries), fc_)};
  }

  Change step(const Change& dx, Cache& c) const override {
    const Type& out_elem = output_type().elem();
    Change::Map out;
    if (f_->stateless()) {
      for (const auto& [i, di] : dx.as_map()) {
        Cache scratch = fc_;
        Change dy = f_->step(di, scratch);
        if (!is_nil(out_elem, dy)) out.emplace(i, std::move(dy));
      }
      return Change::map(std::move(out));
    }
    auto& entries = c.entries();
    for (const auto& [i, di] : dx.as_map()) {
      auto it = entries.find(i);
      if (it == entries.end()) it = entries.emplace(i, c.fallback()).first;
      Change dy = f_->step(di, it->second);
      if (!is_nil(out_elem, dy)) out.emplace(i, std::move(dy));
    }
    return Change::map(std::move(out));
  }

  bool stateless() const override { return f_->stateless(); }

  bool cache_equal(const Cache& a, const Cache& b,
                   const Tolerance& tol) const override {
    if (!f_->cache_equal(a.fallback(), b.fallback(), tol)) return false;
    for (const auto& [i, ca] : a.entries()) {
      auto it = b.entries().find(i);
      const Cache& cb = it == b.entries().end() ? b.fallback() : it->second;
      if (!f_->cache_equal(ca, cb, tol)) return false;
    }
    for (const auto& [i, cb] : b.entries()) {
      if (!a.entries().count(i) && !f_->cache_equal(a.fallback(), cb, tol)) {
        return false;
      }
    }
    return true;
  }

  std::string describe() const override {
    return "map(" + f_->describe() + ")";
  }

 private:
  MachinePtr f_;
  Value fe_;
  Cache fc_;
};

class FuseMachine final : public Machine {
 public:
  explicit FuseMachine(const Type& in) : Machine(in, in.left()) {}

  std::pair<Value, Cache> initialize(const Value& x) const override {
    return {x.inner(), Cache::fuse(x)};
  }

  Change step(const Change& dx, Cache& c) const override {
    const Type& a = output_type();
    Value& s = c.value();
    switch (dx.kind()) {
      case Change::Kind::Cl:
        if (s.is_left()) {
          s = Value::left(apply_change(a, s.inner(), dx.local()));
          return dx.local();
        }
        return diff_values(a, s.inner(), s.inner());
      case Change::Kind::Cr:
        if (s.is_right()) {
          s = Value::right(apply_change(a, s.inner(), dx.local()));
          return dx.local();
        }
        return diff_values(a, s.inner(), s.inner());
      case Change::Kind::Sl: {
        Change d = diff_values(a, dx.replacement(), s.inner());
        s = Value::left(dx.replacement());
        return d;
      }
      case Change::Kind::Sr: {
        Change d = diff_values(a, dx.replacement(), s.inner());
        s = Value::right(dx.replacement());
        return d;
      }
      case Change::Kind::Null:
        return diff_values(a, s.inner(), s.inner());
      default:
        throw ConformanceError("fuse expects a sum change");
    }
  }

  bool cache_equal(const Cache& a, const Cache& b,
                   const Tolerance& tol) const override {
    return values_equal(input_type(), a.value(), b.value(), tol);
  }

  std::string describe() const override { return "fuse"; }
};

class DistrMachine final : public Machine {
 public:
  DistrMachine(const Type& in, const Type& out) : Machine(in, out) {}

  std::pair<Value, Cache> initialize(const Value& x) const override {
    const Value& s = x.second();
    Value p = Value::pair(x.first(), s.inner());
    return {s.is_left() ? Value::left(std::move(p)) : Value::right(std::move(p)),
            Cache::distr(x)};
  }

  Change step(const Change& dx, Cache& c) const override {
    const Type& ta = input_type().left();
    const Type& tb = input_type().right().left();
    const Type& tc = input_type().right().right();
    Value& x = c.value().mutable_first();
    Value& s = c.value().mutable_second();
    const Change& dxa = dx.first();
    const Change& ds = dx.second();
    Change out;
    switch (ds.kind()) {
      case Change::Kind::Cl:
        if (s.is_left()) {
          out = Change::cl(Change::pair(dxa, ds.local()));
          s = Value::left(apply_change(tb, s.inner(), ds.local()));
        } else {
          out = Change::cr(Change::pair(dxa, diff_values(tc, s.inner(), s.inner())));
        }
        break;
      case Change::Kind::Cr:
        if (s.is_right()) {
          out = Change::cr(Change::pair(dxa, ds.local()));
          s = Value::right(apply_change(tc, s.inner(), ds.local()));
        } else {
          out = Change::cl(Change::pair(dxa, diff_values(tb, s.inner(), s.inner())));
        }
        break;
      case Change::Kind::Sl:
        apply_in_place(ta, x, dxa);
        s = Value::left(ds.replacement());
        return Change::sl(Value::pair(x, ds.replacement()));
      case Change::Kind::Sr:
        apply_in_place(ta, x, dxa);
        s = Value::right(ds.replacement());
        return Change::sr(Value::pair(x, ds.replacement()));
      case Change::Kind::Null:
        if (s.is_left()) {
          out = Change::cl(Change::pair(dxa, diff_values(tb, s.inner(), s.inner())));
        } else {
          out = Change::cr(Change::pair(dxa, diff_values(tc, s.inner(), s.inner())));
        }
        break;
      default:
        throw ConformanceError("distr expects a sum change");
    }
    apply_in_place(ta, x, dxa);
    return out;
  }

  bool cache_equal(const Cache& a, const Cache& b,
                   const Tolerance& tol) const override {
    return values_equal(input_type(), a.value(), b.value(), tol);
  }

  std::string describe() const override { return "distr"; }
};

class CaseMachine final : public Machine {
 public:
  CaseMachine(MachinePtr f, MachinePtr g)
      : Machine(Type::sum(f->input_type(), g->input_type()),
                Type::sum(f->output_type(), g->output_type())),
        f_(std::move(f)),
        g_(std::move(g)) {}

  std::pair<Value, Cache> initialize(const Value& x) const override {
    if (x.is_left()) {
      auto [y, c] = f_->initialize(x.inner());
      return {Value::left(y), Cache::case_of(true, std::move(c), y)};
    }
    auto [y, c] = g_->initialize(x.inner());
    return {Value::right(y), Cache::case_of(false, std::move(c), y)};
  }

  Change step(const Change& dx, Cache& c) const override {
    const Type& b1 = output_type().left();
    const Type& b2 = output_type().right();
    switch (dx.kind()) {
      case Change::Kind::Cl: {
        if (!c.left()) return Change::null();
        Change dy = f_->step(dx.local(), c.branch());
        apply_in_place(b1, c.value(), dy);
        return Change::cl(std::move(dy));
      }
      case Change::Kind::Cr: {
        if (c.left()) return Change::null();
        Change dy = g_->step(dx.local(), c.branch());
        apply_in_place(b2, c.value(), dy);
        return Change::cr(std::move(dy));
      }
      case Change::Kind::Sl: {
        auto [y, nc] = f_->initialize(dx.replacement());
        Change out = c.left() ? Change::cl(diff_values(b1, y, c.value()))
                              : Change::sl(y);
        c = Cache::case_of(true, std::move(nc), std::move(y));
        return out;
      }
      case Change::Kind::Sr: {
        auto [y, nc] = g_->initialize(dx.replacement());
        Change out = c.left() ? Change::sr(y)
                              : Change::cr(diff_values(b2, y, c.value()));
        c = Cache::case_of(false, std::move(nc), std::move(y));
        return out;
      }
      case Change::Kind::Null:
        return Change::null();
      default:
        throw ConformanceError("case expects a sum change");
    }
  }

  bool stateless() const override { return false; }

  bool cache_equal(const Cache& a, const Cache& b,
                   const Tolerance& tol) const override {
    if (a.left() != b.left()) return false;
    if (a.left()) {
      return f_->cache_equal(a.branch(), b.branch(), tol) &&
             values_equal(output_type().left(), a.value(), b.value(), tol);
    }
    return g_->cache_equal(a.branch(), b.branch(), tol) &&
           values_equal(output_type().right(), a.value(), b.value(), tol);
  }

  std::string describe() const override {
    return "(" + f_->describe() + " || " + g_->describe() + ")";
  }

 private:
  MachinePtr f_;
  MachinePtr g_;
};

bool self_maintainable(Term::Kind k) {
  using K = Term::Kind;
  switch (k) {
    case K::Id: case K::Dup: case K::Fst: case K::Snd: case K::Zip:
    case K::Tp: case K::Get: case K::Set: case K::Reshape:
    case K::Replicate: case K::Filter: case K::Inl: case K::Inr:
      return true;
    default:
      return false;
  }
}

}  // namespace

Change derive_self(const Term& t, const Change& dx) {
  using K = Term::Kind;
  using S = ChangeSide;
  switch (t.kind()) {
    case K::Id:
      return dx;
    case K::Dup:
      return Change::pair(dx, dx);
    case K::Fst:
      return fault_active(Fault::SwapProjections) ? dx.second() : dx.first();
    case K::Snd:
      return fault_active(Fault::SwapProjections) ? dx.first() : dx.second();
    case K::Zip:
      return generic::zip<S>(t.input(), dx);
    case K::Tp:
      return generic::tp<S>(dx);
    case K::Get:
      return generic::get<S>(t.input(), t.index(), dx);
    case K::Set:
      return generic::set<S>(t.input(), t.index(), dx);
    case K::Reshape:
      return generic::reshape<S>(*t.index_fn(), t.input(), t.output(), dx);
    case K::Replicate:
      return generic::replicate<S>(t.input(), t.shape(), dx);
    case K::Filter:
      return generic::filter<S>(*t.predicate(), t.input(), dx);
    case K::Inl:
      return Change::cl(dx);
    case K::Inr:
      return Change::cr(dx);
    default:
      throw UsageError(std::string(kind_name(t.kind())) +
                       " is not self-maintainable");
  }
}

MachinePtr incrementalize(const Term& t) {
  if (!t.typed()) throw UsageError("incrementalize needs a checked term");
  using K = Term::Kind;
  if (self_maintainable(t.kind())) {
    return comb_self(
        kind_name(t.kind()), [t](const Value& x) { return denote(t, x); },
        [t](const Change& dx) { return derive_self(t, dx); }, t.input(),
        t.output());
  }
  switch (t.kind()) {
    case K::Seq:
      return std::make_shared<SeqMachine>(incrementalize(t.kid(0)),
                                          incrementalize(t.kid(1)));
    case K::Par:
      return std::make_shared<ParMachine>(incrementalize(t.kid(0)),
                                          incrementalize(t.kid(1)));
    case K::Cst: {
      Value c = t.literal();
      Change nil = nil_change(t.output());
      return comb_self(
          "cst", [c](const Value&) { return c; },
          [nil](const Change&) { return nil; }, t.input(), t.output());
    }
    case K::Plus:
      return comb_add(t.output());
    case K::Map:
      return std::make_shared<MapMachine>(incrementalize(t.kid(0)),
                                          t.input().shape());
    case K::Fuse:
      return std::make_shared<FuseMachine>(t.input());
    case K::Distr:
      return std::make_shared<DistrMachine>(t.input(), t.output());
    case K::Case:
      return std::make_shared<CaseMachine>(incrementalize(t.kid(0)),
                                           incrementalize(t.kid(1)));
    case K::Op:
      return t.op_def()->incr(t.input(), t.output());
    default:
      throw UsageError("cannot incrementalize " +
                       std::string(kind_name(t.kind())));
  }
}

std::pair<Value, Cache> iter(const Machine& m, const Value& x,
                             const std::vector<Change>& ds) {
  auto [y, c] = m.initialize(x);
  for (auto it = ds.rbegin(); it != ds.rend(); ++it) {
    Change dy = m.step(*it, c);
    apply_in_place(m.output_type(), y, dy);
  }
  return {std::move(y), std::move(c)};
}

Value sum_changes(const Type& ty, const Value& x,
                  const std::vector<Change>& ds) {
  Value y = x;
  for (auto it = ds.rbegin(); it != ds.rend(); ++it) apply_in_place(ty, y, *it);
  return y;
}

}  // namespace deco
