#include "deco/algebra.hpp"

#include "deco/errors.hpp"

namespace deco {
namespace {

[[noreturn]] void mismatch(const Type& ty, const char* what) {
  throw ConformanceError(std::string(what) + " does not match type " +
                         ty.to_string());
}

const Value& entry_or(const Value::Map& m, const Index& i, const Value& dflt) {
  auto it = m.find(i);
  return it == m.end() ? dflt : it->second;
}

}  // namespace

Value epsilon(const Type& ty) {
  switch (ty.kind()) {
    case Type::Kind::Base:
      return Value(ty.base().epsilon());
    case Type::Kind::Container:
      return Value::map();
    case Type::Kind::Product:
      return Value::pair(epsilon(ty.left()), epsilon(ty.right()));
    case Type::Kind::Sum:
      return Value::left(epsilon(ty.left()));
  }
  return {};
}

bool is_default(const Type& ty, const Value& v) {
  switch (ty.kind()) {
    case Type::Kind::Base:
      return v.is_scalar() && ty.base().is_epsilon(v.as_scalar());
    case Type::Kind::Container:
      return v.is_map() && v.as_map().empty();
    case Type::Kind::Product:
      return v.is_pair() && is_default(ty.left(), v.first()) &&
             is_default(ty.right(), v.second());
    case Type::Kind::Sum:
      return v.is_left() && is_default(ty.left(), v.inner());
  }
  return false;
}

Change nil_change(const Type& ty) {
  switch (ty.kind()) {
    case Type::Kind::Base:
      return Change(ty.base().nil());
    case Type::Kind::Container:
      return Change::map();
    case Type::Kind::Product:
      return Change::pair(nil_change(ty.left()), nil_change(ty.right()));
    case Type::Kind::Sum:
      return Change::null();
  }
  return {};
}

bool is_nil(const Type& ty, const Change& d) {
  switch (ty.kind()) {
    case Type::Kind::Base:
      return d.is_scalar() && ty.base().is_nil(d.as_scalar());
    case Type::Kind::Container:
      return d.is_map() && d.as_map().empty();
    case Type::Kind::Product:
      return d.is_pair() && is_nil(ty.left(), d.first()) &&
             is_nil(ty.right(), d.second());
    case Type::Kind::Sum:
      return d.kind() == Change::Kind::Null;
  }
  return false;
}

void apply_in_place(const Type& ty, Value& v, const Change& d) {
  switch (ty.kind()) {
    case Type::Kind::Base:
      if (!v.is_scalar() || !d.is_scalar()) mismatch(ty, "value or change");
      v = Value(ty.base().apply(v.as_scalar(), d.as_scalar()));
      return;
    case Type::Kind::Container: {
      if (!v.is_map() || !d.is_map()) mismatch(ty, "value or change");
      const auto& dm = d.as_map();
      if (dm.empty()) return;
      const Type& elem = ty.elem();
      auto& m = v.mutable_map();
      for (const auto& [i, di] : dm) {
        auto it = m.find(i);
        if (it == m.end()) {
          Value e = epsilon(elem);
          apply_in_place(elem, e, di);
          if (!is_default(elem, e)) m.emplace(i, std::move(e));
        } else {
          apply_in_place(elem, it->second, di);
          if (is_default(elem, it->second)) m.erase(it);
        }
      }
      return;
    }
    case Type::Kind::Product:
      if (!v.is_pair() || !d.is_pair()) mismatch(ty, "value or change");
      apply_in_place(ty.left(), v.mutable_first(), d.first());
      apply_in_place(ty.right(), v.mutable_second(), d.second());
      return;
    case Type::Kind::Sum:
      if (!v.is_injection()) mismatch(ty, "value");
      switch (d.kind()) {
        case Change::Kind::Cl:
          if (v.is_left()) {
            v = Value::left(apply_change(ty.left(), v.inner(), d.local()));
          }
          return;
        case Change::Kind::Cr:
          if (v.is_right()) {
            v = Value::right(apply_change(ty.right(), v.inner(), d.local()));
          }
          return;
        case Change::Kind::Sl:
          v = Value::left(d.replacement());
          return;
        case Change::Kind::Sr:
          v = Value::right(d.replacement());
          return;
        case Change::Kind::Null:
          return;
        default:
          mismatch(ty, "change");
      }
  }
}

Value apply_change(const Type& ty, const Value& v, const Change& d) {
  Value out = v;
  apply_in_place(ty, out, d);
  return out;
}

Change diff_values(const Type& ty, const Value& y, const Value& x) {
  switch (ty.kind()) {
    case Type::Kind::Base:
      if (!y.is_scalar() || !x.is_scalar()) mismatch(ty, "value");
      return Change(ty.base().diff(y.as_scalar(), x.as_scalar()));
    case Type::Kind::Container: {
      if (!y.is_map() || !x.is_map()) mismatch(ty, "value");
      const Type& elem = ty.elem();
      const auto& ym = y.as_map();
      const auto& xm = x.as_map();
      Value eps = epsilon(elem);
      Change::Map out;
      for (const auto& [i, yi] : ym) {
        Change di = diff_values(elem, yi, entry_or(xm, i, eps));
        if (!is_nil(elem, di)) out.emplace(i, std::move(di));
      }
      for (const auto& [i, xi] : xm) {
        if (ym.count(i)) continue;
        Change di = diff_values(elem, eps, xi);
        if (!is_nil(elem, di)) out.emplace(i, std::move(di));
      }
      return Change::map(std::move(out));
    }
    case Type::Kind::Product:
      if (!y.is_pair() || !x.is_pair()) mismatch(ty, "value");
      return Change::pair(diff_values(ty.left(), y.first(), x.first()),
                          diff_values(ty.right(), y.second(), x.second()));
    case Type::Kind::Sum:
      if (!y.is_injection() || !x.is_injection()) mismatch(ty, "value");
      if (y.is_left() && x.is_left()) {
        return Change::cl(diff_values(ty.left(), y.inner(), x.inner()));
      }
      if (y.is_right() && x.is_right()) {
        return Change::cr(diff_values(ty.right(), y.inner(), x.inner()));
      }
      return y.is_left() ? Change::sl(y.inner()) : Change::sr(y.inner());
  }
  return {};
}

bool values_equal(const Type& ty, const Value& a, const Value& b,
                  const Tolerance& tol) {
  switch (ty.kind()) {
    case Type::Kind::Base:
      return a.is_scalar() && b.is_scalar() &&
             ty.base().equal(a.as_scalar(), b.as_scalar(), tol);
    case Type::Kind::Container: {
      if (!a.is_map() || !b.is_map()) return false;
      const Type& elem = ty.elem();
      const auto& am = a.as_map();
      const auto& bm = b.as_map();
      Value eps;
      bool have_eps = false;
      auto get_eps = [&]() -> const Value& {
        if (!have_eps) {
          eps = epsilon(elem);
          have_eps = true;
        }
        return eps;
      };
      for (const auto& [i, ai] : am) {
        auto it = bm.find(i);
        const Value& bi = it == bm.end() ? get_eps() : it->second;
        if (!values_equal(elem, ai, bi, tol)) return false;
      }
      for (const auto& [i, bi] : bm) {
        if (am.count(i)) continue;
        if (!values_equal(elem, get_eps(), bi, tol)) return false;
      }
      return true;
    }
    case Type::Kind::Product:
      return a.is_pair() && b.is_pair() &&
             values_equal(ty.left(), a.first(), b.first(), tol) &&
             values_equal(ty.right(), a.second(), b.second(), tol);
    case Type::Kind::Sum:
      if (a.is_left() && b.is_left()) {
        return values_equal(ty.left(), a.inner(), b.inner(), tol);
      }
      if (a.is_right() && b.is_right()) {
        return values_equal(ty.right(), a.inner(), b.inner(), tol);
      }
      return false;
  }
  return false;
}

bool changes_equal(const Type& ty, const Change& a, const Change& b,
                   const Tolerance& tol) {
  switch (ty.kind()) {
    case Type::Kind::Base:
      return a.is_scalar() && b.is_scalar() &&
             ty.base().equal(a.as_scalar(), b.as_scalar(), tol);
    case Type::Kind::Container: {
      if (!a.is_map() || !b.is_map()) return false;
      const Type& elem = ty.elem();
      const auto& am = a.as_map();
      const auto& bm = b.as_map();
      Change nil = nil_change(elem);
      for (const auto& [i, ai] : am) {
        auto it = bm.find(i);
        if (!changes_equal(elem, ai, it == bm.end() ? nil : it->second, tol)) {
          return false;
        }
      }
      for (const auto& [i, bi] : bm) {
        if (am.count(i)) continue;
        if (!changes_equal(elem, nil, bi, tol)) return false;
      }
      return true;
    }
    case Type::Kind::Product:
      return a.is_pair() && b.is_pair() &&
             changes_equal(ty.left(), a.first(), b.first(), tol) &&
             changes_equal(ty.right(), a.second(), b.second(), tol);
    case Type::Kind::Sum:
      if (a.kind() != b.kind()) return false;
      switch (a.kind()) {
        case Change::Kind::Cl:
          return changes_equal(ty.left(), a.local(), b.local(), tol);
        case Change::Kind::Cr:
          return changes_equal(ty.right(), a.local(), b.local(), tol);
        case Change::Kind::Sl:
          return values_equal(ty.left(), a.replacement(), b.replacement(),
                              tol);
        case Change::Kind::Sr:
          return values_equal(ty.right(), a.replacement(), b.replacement(),
                              tol);
        case Change::Kind::Null:
          return true;
        default:
          return false;
      }
  }
  return false;
}

namespace {

// Returns an empty string on success, otherwise a description of the
// first violation.
std::string value_violation(const Type& ty, const Value& v) {
  switch (ty.kind()) {
    case Type::Kind::Base:
      if (!v.is_scalar() || !ty.base().is_value(v.as_scalar())) {
        return "expected a " + ty.base().tag() + " value";
      }
      return {};
    case Type::Kind::Container: {
      if (!v.is_map()) return "expected a mapping of " + ty.to_string();
      for (const auto& [i, vi] : v.as_map()) {
        if (!ty.shape().valid_index(i)) {
          return "index " + i.to_string() + " is not a position of " +
                 ty.shape().to_string();
        }
        if (is_default(ty.elem(), vi)) {
          return "default entry stored at " + i.to_string();
        }
        auto inner = value_violation(ty.elem(), vi);
        if (!inner.empty()) return "at " + i.to_string() + ": " + inner;
      }
      return {};
    }
    case Type::Kind::Product: {
      if (!v.is_pair()) return "expected a pair";
      auto l = value_violation(ty.left(), v.first());
      if (!l.empty()) return "first: " + l;
      auto r = value_violation(ty.right(), v.second());
      if (!r.empty()) return "second: " + r;
      return {};
    }
    case Type::Kind::Sum:
      if (v.is_left()) return value_violation(ty.left(), v.inner());
      if (v.is_right()) return value_violation(ty.right(), v.inner());
      return "expected an injection";
  }
  return "invalid type";
}

std::string change_violation(const Type& ty, const Change& d) {
  switch (ty.kind()) {
    case Type::Kind::Base:
      if (!d.is_scalar() || !ty.base().is_change(d.as_scalar())) {
        return "expected a " + ty.base().tag() + " change";
      }
      return {};
    case Type::Kind::Container: {
      if (!d.is_map()) return "expected a mapping change";
      for (const auto& [i, di] : d.as_map()) {
        if (!ty.shape().valid_index(i)) {
          return "index " + i.to_string() + " is not a position of " +
                 ty.shape().to_string();
        }
        if (is_nil(ty.elem(), di)) {
          return "nil entry stored at " + i.to_string();
        }
        auto inner = change_violation(ty.elem(), di);
        if (!inner.empty()) return "at " + i.to_string() + ": " + inner;
      }
      return {};
    }
    case Type::Kind::Product: {
      if (!d.is_pair()) return "expected a pair change";
      auto l = change_violation(ty.left(), d.first());
      if (!l.empty()) return "first: " + l;
      auto r = change_violation(ty.right(), d.second());
      if (!r.empty()) return "second: " + r;
      return {};
    }
    case Type::Kind::Sum:
      switch (d.kind()) {
        case Change::Kind::Cl:
          return change_violation(ty.left(), d.local());
        case Change::Kind::Cr:
          return change_violation(ty.right(), d.local());
        case Change::Kind::Sl:
          return value_violation(ty.left(), d.replacement());
        case Change::Kind::Sr:
          return value_violation(ty.right(), d.replacement());
        case Change::Kind::Null:
          return {};
        default:
          return "expected a sum change";
      }
  }
  return "invalid type";
}

}  // namespace

bool conforms(const Type& ty, const Value& v) {
  return value_violation(ty, v).empty();
}

bool change_conforms(const Type& ty, const Change& d) {
  return change_violation(ty, d).empty();
}

void require_conforms(const Type& ty, const Value& v) {
  auto why = value_violation(ty, v);
  if (!why.empty()) {
    throw ConformanceError("value does not conform to " + ty.to_string() +
                           ": " + why);
  }
}

void require_change_conforms(const Type& ty, const Change& d) {
  auto why = change_violation(ty, d);
  if (!why.empty()) {
    throw ConformanceError("change does not conform to " + ty.to_string() +
                           ": " + why);
  }
}

std::vector<Index> support(const Value& v) {
  if (!v.is_map()) throw UsageError("support of a non-mapping value");
  return sorted_keys(v.as_map());
}

Change to_change(const Type& ty, const Value& v) {
  switch (ty.kind()) {
    case Type::Kind::Base:
      return Change(v.as_scalar());
    case Type::Kind::Container: {
      Change::Map out;
      out.reserve(v.as_map().size());
      for (const auto& [i, vi] : v.as_map()) {
        Change di = to_change(ty.elem(), vi);
        if (!is_nil(ty.elem(), di)) out.emplace(i, std::move(di));
      }
      return Change::map(std::move(out));
    }
    case Type::Kind::Product:
      return Change::pair(to_change(ty.left(), v.first()),
                          to_change(ty.right(), v.second()));
    case Type::Kind::Sum:
      break;
  }
  throw UsageError("values of " + ty.to_string() + " are not changes");
}

Value to_value(const Type& ty, const Change& d) {
  switch (ty.kind()) {
    case Type::Kind::Base:
      return Value(d.as_scalar());
    case Type::Kind::Container: {
      Value::Map out;
      out.reserve(d.as_map().size());
      for (const auto& [i, di] : d.as_map()) {
        Value vi = to_value(ty.elem(), di);
        if (!is_default(ty.elem(), vi)) out.emplace(i, std::move(vi));
      }
      return Value::map(std::move(out));
    }
    case Type::Kind::Product:
      return Value::pair(to_value(ty.left(), d.first()),
                         to_value(ty.right(), d.second()));
    case Type::Kind::Sum:
      break;
  }
  throw UsageError("changes of " + ty.to_string() + " are not values");
}

void add_in_place(const Type& ty, Change& a, const Change& b) {
  switch (ty.kind()) {
    case Type::Kind::Base:
      a = Change(ty.base().apply(a.as_scalar(), b.as_scalar()));
      return;
    case Type::Kind::Container: {
      const auto& bm = b.as_map();
      if (bm.empty()) return;
      const Type& elem = ty.elem();
      auto& am = a.mutable_map();
      for (const auto& [i, bi] : bm) {
        auto it = am.find(i);
        if (it == am.end()) {
          am.emplace(i, bi);
        } else {
          add_in_place(elem, it->second, bi);
          if (is_nil(elem, it->second)) am.erase(it);
        }
      }
      return;
    }
    case Type::Kind::Product:
      add_in_place(ty.left(), a.mutable_first(), b.first());
      add_in_place(ty.right(), a.mutable_second(), b.second());
      return;
    case Type::Kind::Sum:
      break;
  }
  throw UsageError("changes of " + ty.to_string() + " cannot be added");
}

Change add_changes(const Type& ty, const Change& a, const Change& b) {
  Change out = a;
  add_in_place(ty, out, b);
  return out;
}

}  // namespace deco
