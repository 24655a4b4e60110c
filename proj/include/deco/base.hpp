#pragma once

#include <memory>
#include <string>

#include "deco/scalar.hpp"

namespace deco {

/// Comparison tolerance for inexact bases. Two reals a, b are equal when
/// |a - b| <= relative * max(1, |a|, |b|). Exact bases ignore it.
struct Tolerance {
  double relative = 0.0;

  static Tolerance exact() { return {}; }
  static Tolerance rel(double r) { return {r}; }
};

/// A base type together with its change structure: values, changes, update,
/// difference, the canonical nil change and the container default.
class BaseChangeStructure {
 public:
  struct Flags {
    bool values_are_changes = false;
    bool commutative = false;
    bool associative = false;

    bool additive() const {
      return values_are_changes && commutative && associative;
    }
  };

  virtual ~BaseChangeStructure() = default;

  virtual const std::string& tag() const = 0;
  virtual bool is_value(const Scalar& s) const = 0;
  virtual bool is_change(const Scalar& s) const = 0;
  /// v ⊕ d
  virtual Scalar apply(const Scalar& v, const Scalar& d) const = 0;
  /// y ⊖ x, the change taking x to y
  virtual Scalar diff(const Scalar& y, const Scalar& x) const = 0;
  virtual Scalar nil() const = 0;
  /// Default element ε that sparse containers leave implicit.
  virtual Scalar epsilon() const = 0;
  virtual Flags flags() const = 0;

  virtual bool equal(const Scalar& a, const Scalar& b,
                     const Tolerance& tol) const;
  bool is_nil(const Scalar& d) const { return d == nil(); }
  bool is_epsilon(const Scalar& v) const { return v == epsilon(); }
};

using BasePtr = std::shared_ptr<const BaseChangeStructure>;

/// ℝ with ⊕ = +, ⊖ = −.
BasePtr real_base();
/// ℤ with ⊕ = +, ⊖ = −.
BasePtr int_base();
/// ℕ with ⊕ = +, ⊖ = truncated subtraction (complete only for y ≥ x).
BasePtr nat_base();
/// Scalar-with-null for document trees: changes replace, Keep leaves alone.
BasePtr json_base();

}  // namespace deco
