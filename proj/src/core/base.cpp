#include "deco/base.hpp"

#include <algorithm>
#include <cmath>

#include "deco/errors.hpp"

namespace deco {

bool BaseChangeStructure::equal(const Scalar& a, const Scalar& b,
                                const Tolerance&) const {
  return a == b;
}

namespace {

bool close(double a, double b, double rel) {
  if (a == b) return true;
  double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= rel * scale;
}

class RealBase final : public BaseChangeStructure {
 public:
  const std::string& tag() const override { return tag_; }
  bool is_value(const Scalar& s) const override {
    return s.kind() == Scalar::Kind::Real;
  }
  bool is_change(const Scalar& s) const override { return is_value(s); }
  Scalar apply(const Scalar& v, const Scalar& d) const override {
    return Scalar::real(v.as_real() + d.as_real());
  }
  Scalar diff(const Scalar& y, const Scalar& x) const override {
    return Scalar::real(y.as_real() - x.as_real());
  }
  Scalar nil() const override { return Scalar::real(0.0); }
  Scalar epsilon() const override { return Scalar::real(0.0); }
  Flags flags() const override { return {true, true, true}; }
  bool equal(const Scalar& a, const Scalar& b,
             const Tolerance& tol) const override {
    if (a.kind() != Scalar::Kind::Real || b.kind() != Scalar::Kind::Real) {
      return a == b;
    }
    return close(a.as_real(), b.as_real(), tol.relative);
  }

 private:
  std::string tag_ = "real";
};

class IntBase final : public BaseChangeStructure {
 public:
  const std::string& tag() const override { return tag_; }
  bool is_value(const Scalar& s) const override {
    return s.kind() == Scalar::Kind::Int;
  }
  bool is_change(const Scalar& s) const override { return is_value(s); }
  Scalar apply(const Scalar& v, const Scalar& d) const override {
    return Scalar::integer(v.as_int() + d.as_int());
  }
  Scalar diff(const Scalar& y, const Scalar& x) const override {
    return Scalar::integer(y.as_int() - x.as_int());
  }
  Scalar nil() const override { return Scalar::integer(0); }
  Scalar epsilon() const override { return Scalar::integer(0); }
  Flags flags() const override { return {true, true, true}; }

 private:
  std::string tag_ = "int";
};

class NatBase final : public BaseChangeStructure {
 public:
  const std::string& tag() const override { return tag_; }
  bool is_value(const Scalar& s) const override {
    return s.kind() == Scalar::Kind::Nat;
  }
  bool is_change(const Scalar& s) const override { return is_value(s); }
  Scalar apply(const Scalar& v, const Scalar& d) const override {
    return Scalar::natural(v.as_nat() + d.as_nat());
  }
  Scalar diff(const Scalar& y, const Scalar& x) const override {
    auto a = y.as_nat();
    auto b = x.as_nat();
    return Scalar::natural(a > b ? a - b : 0);
  }
  Scalar nil() const override { return Scalar::natural(0); }
  Scalar epsilon() const override { return Scalar::natural(0); }
  Flags flags() const override { return {true, true, true}; }

 private:
  std::string tag_ = "nat";
};

class JsonBase final : public BaseChangeStructure {
 public:
  const std::string& tag() const override { return tag_; }
  bool is_value(const Scalar& s) const override {
    switch (s.kind()) {
      case Scalar::Kind::Null:
      case Scalar::Kind::Real:
      case Scalar::Kind::Bool:
      case Scalar::Kind::Str:
        return true;
      default:
        return false;
    }
  }
  bool is_change(const Scalar& s) const override {
    return s.is_keep() || is_value(s);
  }
  Scalar apply(const Scalar& v, const Scalar& d) const override {
    return d.is_keep() ? v : d;
  }
  Scalar diff(const Scalar& y, const Scalar& x) const override {
    return y == x ? Scalar::keep() : y;
  }
  Scalar nil() const override { return Scalar::keep(); }
  Scalar epsilon() const override { return Scalar::null(); }
  Flags flags() const override { return {false, false, false}; }
  bool equal(const Scalar& a, const Scalar& b,
             const Tolerance& tol) const override {
    if (a.kind() == Scalar::Kind::Real && b.kind() == Scalar::Kind::Real) {
      return close(a.as_real(), b.as_real(), tol.relative);
    }
    return a == b;
  }

 private:
  std::string tag_ = "json";
};

}  // namespace

BasePtr real_base() {
  static const BasePtr b = std::make_shared<RealBase>();
  return b;
}
BasePtr int_base() {
  static const BasePtr b = std::make_shared<IntBase>();
  return b;
}
BasePtr nat_base() {
  static const BasePtr b = std::make_shared<NatBase>();
  return b;
}
BasePtr json_base() {
  static const BasePtr b = std::make_shared<JsonBase>();
  return b;
}

}  // namespace deco
