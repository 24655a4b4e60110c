#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

namespace deco {

/// Payload of a base-typed value or change. Which alternatives are legal
/// depends on the owning base change structure.
class Scalar {
 public:
  enum class Kind : std::uint8_t { Null, Keep, Real, Int, Nat, Bool, Str };

  struct Null {
    friend bool operator==(Null, Null) { return true; }
  };
  /// The "leave unchanged" change of replacement-style bases.
  struct Keep {
    friend bool operator==(Keep, Keep) { return true; }
  };

  Scalar() = default;
  static Scalar null() { return Scalar(); }
  static Scalar keep() { return Scalar(Rep(Keep{})); }
  static Scalar real(double v) { return Scalar(Rep(v)); }
  static Scalar integer(std::int64_t v) { return Scalar(Rep(v)); }
  static Scalar natural(std::uint64_t v) { return Scalar(Rep(v)); }
  static Scalar boolean(bool v) { return Scalar(Rep(v)); }
  static Scalar string(std::string v) {
    return Scalar(Rep(std::make_shared<const std::string>(std::move(v))));
  }

  Kind kind() const noexcept { return static_cast<Kind>(rep_.index()); }
  bool is_null() const noexcept { return kind() == Kind::Null; }
  bool is_keep() const noexcept { return kind() == Kind::Keep; }

  double as_real() const { return std::get<double>(rep_); }
  std::int64_t as_int() const { return std::get<std::int64_t>(rep_); }
  std::uint64_t as_nat() const { return std::get<std::uint64_t>(rep_); }
  bool as_bool() const { return std::get<bool>(rep_); }
  const std::string& as_string() const {
    return *std::get<std::shared_ptr<const std::string>>(rep_);
  }

  /// Numeric view of Real/Int/Nat payloads.
  double numeric() const;
  bool is_numeric() const noexcept {
    auto k = kind();
    return k == Kind::Real || k == Kind::Int || k == Kind::Nat;
  }

  /// Exact structural equality (no tolerance).
  friend bool operator==(const Scalar& a, const Scalar& b);

  std::string to_string() const;

 private:
  using Rep = std::variant<Null, Keep, double, std::int64_t, std::uint64_t,
                           bool, std::shared_ptr<const std::string>>;
  explicit Scalar(Rep r) : rep_(std::move(r)) {}
  Rep rep_;
};

}  // namespace deco
