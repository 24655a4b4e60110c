#include "deco/scalar.hpp"

#include <cstdio>

namespace deco {

double Scalar::numeric() const {
  switch (kind()) {
    case Kind::Real:
      return as_real();
    case Kind::Int:
      return static_cast<double>(as_int());
    case Kind::Nat:
      return static_cast<double>(as_nat());
    default:
      return 0.0;
  }
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Scalar::Kind::Null:
    case Scalar::Kind::Keep:
      return true;
    case Scalar::Kind::Real:
      return a.as_real() == b.as_real();
    case Scalar::Kind::Int:
      return a.as_int() == b.as_int();
    case Scalar::Kind::Nat:
      return a.as_nat() == b.as_nat();
    case Scalar::Kind::Bool:
      return a.as_bool() == b.as_bool();
    case Scalar::Kind::Str:
      return a.as_string() == b.as_string();
  }
  return false;
}

std::string Scalar::to_string() const {
  switch (kind()) {
    case Kind::Null:
      return "null";
    case Kind::Keep:
      return "keep";
    case Kind::Real: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", as_real());
      return buf;
    }
    case Kind::Int:
      return std::to_string(as_int());
    case Kind::Nat:
      return std::to_string(as_nat());
    case Kind::Bool:
      return as_bool() ? "true" : "false";
    case Kind::Str:
      return "\"" + as_string() + "\"";
  }
  return "?";
}

}  // namespace deco
