#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "deco/algebra.hpp"
#include "deco/container.hpp"
#include "deco/json_codec.hpp"

namespace deco::test {

inline Type real_t() { return Type::base(real_base()); }
inline Type int_t() { return Type::base(int_base()); }
inline Type nat_t() { return Type::base(nat_base()); }
inline Type array_t(std::int64_t n, Type elem) {
  return Type::container(Shape(array_container(), ShapeArg::nat(n)), std::move(elem));
}

/// Dense vector as a sparse map; zero entries are left out.
inline Value vec(const std::vector<double>& xs) {
  Value::Map m;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] != 0) m.emplace(Index(static_cast<std::int64_t>(i)), Value::real(xs[i]));
  }
  return Value::map(std::move(m));
}

inline Value mat(const std::vector<std::vector<double>>& rows) {
  Value::Map m;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Value r = vec(rows[i]);
    if (!r.as_map().empty()) m.emplace(Index(static_cast<std::int64_t>(i)), r);
  }
  return Value::map(std::move(m));
}

inline double at(const Value& v, std::int64_t i) {
  const auto* e = v.find(i);
  return e ? e->as_scalar().numeric() : 0.0;
}

inline Value ints(const std::vector<std::pair<Index, std::int64_t>>& entries) {
  Value::Map m;
  for (const auto& [i, n] : entries) m.emplace(i, Value::integer(n));
  return Value::map(std::move(m));
}

inline Index tup(std::int64_t a, std::int64_t b) { return Index::pair(Index(a), Index(b)); }
inline Index tup(std::int64_t a, const std::string& b) {
  return Index::pair(Index(a), Index::string(b));
}

inline std::string show(const Type& ty, const Value& v) { return value_to_json(ty, v).dump(); }

}  // namespace deco::test
