#include "deco/codec.hpp"

#include <cmath>

#include "deco/algebra.hpp"
#include "deco/errors.hpp"
#include "deco/json_codec.hpp"

namespace deco {
namespace {

[[noreturn]] void bad(const Type& ty, const Json& j, const char* what) {
  throw ConformanceError(std::string("cannot read ") + what + " of type " +
                         ty.to_string() + " from " + j.dump());
}

Json scalar_json(const Scalar& s) {
  switch (s.kind()) {
    case Scalar::Kind::Null:
      return nullptr;
    case Scalar::Kind::Keep:
      return Json::object();
    case Scalar::Kind::Real:
      return s.as_real();
    case Scalar::Kind::Int:
      return s.as_int();
    case Scalar::Kind::Nat:
      return s.as_nat();
    case Scalar::Kind::Bool:
      return s.as_bool();
    case Scalar::Kind::Str:
      return s.as_string();
  }
  return nullptr;
}

Scalar scalar_from(const Type& ty, const Json& j) {
  const std::string& tag = ty.base().tag();
  if (tag == "real") {
    if (!j.is_number()) bad(ty, j, "value");
    return Scalar::real(j.get<double>());
  }
  if (tag == "int") {
    if (j.is_number_integer()) return Scalar::integer(j.get<std::int64_t>());
    if (j.is_number_float()) {
      double d = j.get<double>();
      if (std::floor(d) == d) {
        return Scalar::integer(static_cast<std::int64_t>(d));
      }
    }
    bad(ty, j, "value");
  }
  if (tag == "nat") {
    if (j.is_number_unsigned()) return Scalar::natural(j.get<std::uint64_t>());
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
      return Scalar::natural(static_cast<std::uint64_t>(j.get<std::int64_t>()));
    }
    bad(ty, j, "value");
  }
  if (tag == "json") {
    if (j.is_null()) return Scalar::null();
    if (j.is_boolean()) return Scalar::boolean(j.get<bool>());
    if (j.is_number()) return Scalar::real(j.get<double>());
    if (j.is_string()) return Scalar::string(j.get<std::string>());
    bad(ty, j, "value");
  }
  throw ConformanceError("no text encoding for base " + tag);
}

Json scalar_change_json(const Type& ty, const Scalar& s) {
  if (ty.base().tag() == "json") {
    if (s.is_keep()) return Json::object();
    return Json{{"set", scalar_json(s)}};
  }
  return scalar_json(s);
}

Scalar scalar_change_from(const Type& ty, const Json& j) {
  if (ty.base().tag() == "json") {
    if (j.is_object() && j.empty()) return Scalar::keep();
    if (j.is_object() && j.size() == 1 && j.contains("set")) {
      return scalar_from(ty, j.at("set"));
    }
    bad(ty, j, "change");
  }
  return scalar_from(ty, j);
}

template <class M>
Json sorted_entries(const M& m, auto&& render) {
  Json out = Json::array();
  for (const auto& k : sorted_keys(m)) {
    out.push_back(Json::array({index_to_json(k), render(m.at(k))}));
  }
  return out;
}

const Json& single(const Json& j, const char* key) { return j.at(key); }

bool is_tagged(const Json& j, const char* key) {
  return j.is_object() && j.size() == 1 && j.contains(key);
}

}  // namespace

Json index_to_json(const Index& i) {
  switch (i.kind()) {
    case Index::Kind::Int:
      return i.as_int();
    case Index::Kind::Str:
      return i.as_string();
    case Index::Kind::Pair:
      return Json::array({index_to_json(i.first()), index_to_json(i.second())});
    case Index::Kind::Path: {
      Json steps = Json::array();
      for (const auto& s : i.steps()) {
        if (s.is_ordinal()) {
          steps.push_back(s.ordinal());
        } else {
          steps.push_back(s.field());
        }
      }
      return Json{{"path", steps}};
    }
  }
  return nullptr;
}

Index index_from_json(const Json& j) {
  if (j.is_number_integer()) return Index(j.get<std::int64_t>());
  if (j.is_string()) return Index::string(j.get<std::string>());
  if (j.is_array() && j.size() == 2) {
    return Index::pair(index_from_json(j[0]), index_from_json(j[1]));
  }
  if (is_tagged(j, "path") && j.at("path").is_array()) {
    Path p;
    for (const auto& s : j.at("path")) {
      if (s.is_number_integer()) {
        p.emplace_back(s.get<std::int64_t>());
      } else if (s.is_string()) {
        p.emplace_back(s.get<std::string>());
      } else {
        throw ConformanceError("bad path step " + s.dump());
      }
    }
    return Index::path(std::move(p));
  }
  throw ConformanceError("cannot read index from " + j.dump());
}

Json value_to_json(const Type& ty, const Value& v) {
  switch (ty.kind()) {
    case Type::Kind::Base:
      return scalar_json(v.as_scalar());
    case Type::Kind::Container:
      return sorted_entries(v.as_map(), [&](const Value& e) {
        return value_to_json(ty.elem(), e);
      });
    case Type::Kind::Product:
      return Json::array({value_to_json(ty.left(), v.first()),
                          value_to_json(ty.right(), v.second())});
    case Type::Kind::Sum:
      if (v.is_left()) return Json{{"inl", value_to_json(ty.left(), v.inner())}};
      return Json{{"inr", value_to_json(ty.right(), v.inner())}};
  }
  return nullptr;
}

Value value_from_json(const Type& ty, const Json& j) {
  switch (ty.kind()) {
    case Type::Kind::Base:
      return Value(scalar_from(ty, j));
    case Type::Kind::Container: {
      if (!j.is_array()) bad(ty, j, "value");
      Value::Map m;
      for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) bad(ty, e, "entry");
        Index i = index_from_json(e[0]);
        if (!ty.shape().valid_index(i)) {
          throw ConformanceError("index " + i.to_string() +
                                 " is not a position of " +
                                 ty.shape().to_string());
        }
        Value x = value_from_json(ty.elem(), e[1]);
        if (is_default(ty.elem(), x)) continue;
        if (!m.emplace(std::move(i), std::move(x)).second) {
          throw ConformanceError("duplicate index in " + j.dump());
        }
      }
      return Value::map(std::move(m));
    }
    case Type::Kind::Product:
      if (!j.is_array() || j.size() != 2) bad(ty, j, "value");
      return Value::pair(value_from_json(ty.left(), j[0]),
                         value_from_json(ty.right(), j[1]));
    case Type::Kind::Sum:
      if (is_tagged(j, "inl")) {
        return Value::left(value_from_json(ty.left(), single(j, "inl")));
      }
      if (is_tagged(j, "inr")) {
        return Value::right(value_from_json(ty.right(), single(j, "inr")));
      }
      bad(ty, j, "value");
  }
  return {};
}

Json change_to_json(const Type& ty, const Change& d) {
  switch (ty.kind()) {
    case Type::Kind::Base:
      return scalar_change_json(ty, d.as_scalar());
    case Type::Kind::Container:
      return sorted_entries(d.as_map(), [&](const Change& e) {
        return change_to_json(ty.elem(), e);
      });
    case Type::Kind::Product:
      return Json::array({change_to_json(ty.left(), d.first()),
                          change_to_json(ty.right(), d.second())});
    case Type::Kind::Sum:
      switch (d.kind()) {
        case Change::Kind::Cl:
          return Json{{"cl", change_to_json(ty.left(), d.local())}};
        case Change::Kind::Cr:
          return Json{{"cr", change_to_json(ty.right(), d.local())}};
        case Change::Kind::Sl:
          return Json{{"sl", value_to_json(ty.left(), d.replacement())}};
        case Change::Kind::Sr:
          return Json{{"sr", value_to_json(ty.right(), d.replacement())}};
        default:
          return "null";
      }
  }
  return nullptr;
}

Change change_from_json(const Type& ty, const Json& j) {
  switch (ty.kind()) {
    case Type::Kind::Base:
      return Change(scalar_change_from(ty, j));
    case Type::Kind::Container: {
      if (!j.is_array()) bad(ty, j, "change");
      Change::Map m;
      for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) bad(ty, e, "entry");
        Index i = index_from_json(e[0]);
        if (!ty.shape().valid_index(i)) {
          throw ConformanceError("index " + i.to_string() +
                                 " is not a position of " +
                                 ty.shape().to_string());
        }
        Change d = change_from_json(ty.elem(), e[1]);
        if (is_nil(ty.elem(), d)) continue;
        if (!m.emplace(std::move(i), std::move(d)).second) {
          throw ConformanceError("duplicate index in " + j.dump());
        }
      }
      return Change::map(std::move(m));
    }
    case Type::Kind::Product:
      if (!j.is_array() || j.size() != 2) bad(ty, j, "change");
      return Change::pair(change_from_json(ty.left(), j[0]),
                          change_from_json(ty.right(), j[1]));
    case Type::Kind::Sum:
      if (j.is_string() && j.get<std::string>() == "null") {
        return Change::null();
      }
      if (is_tagged(j, "cl")) {
        return Change::cl(change_from_json(ty.left(), single(j, "cl")));
      }
      if (is_tagged(j, "cr")) {
        return Change::cr(change_from_json(ty.right(), single(j, "cr")));
      }
      if (is_tagged(j, "sl")) {
        return Change::sl(value_from_json(ty.left(), single(j, "sl")));
      }
      if (is_tagged(j, "sr")) {
        return Change::sr(value_from_json(ty.right(), single(j, "sr")));
      }
      bad(ty, j, "change");
  }
  return {};
}

Json value_debug_json(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Scalar:
      return scalar_json(v.as_scalar());
    case Value::Kind::Map:
      return sorted_entries(v.as_map(),
                            [](const Value& e) { return value_debug_json(e); });
    case Value::Kind::Pair:
      return Json::array({value_debug_json(v.first()),
                          value_debug_json(v.second())});
    case Value::Kind::Left:
      return Json{{"inl", value_debug_json(v.inner())}};
    case Value::Kind::Right:
      return Json{{"inr", value_debug_json(v.inner())}};
  }
  return nullptr;
}

namespace {

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ConformanceError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string value_to_text(const Type& ty, const Value& v) {
  return value_to_json(ty, v).dump();
}
Value value_from_text(const Type& ty, std::string_view text) {
  return value_from_json(ty, parse_json(text));
}
std::string change_to_text(const Type& ty, const Change& d) {
  return change_to_json(ty, d).dump();
}
Change change_from_text(const Type& ty, std::string_view text) {
  return change_from_json(ty, parse_json(text));
}
std::string index_to_text(const Index& i) { return index_to_json(i).dump(); }
Index index_from_text(std::string_view text) {
  return index_from_json(parse_json(text));
}

}  // namespace deco
