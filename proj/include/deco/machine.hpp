#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "deco/base.hpp"
#include "deco/cache.hpp"
#include "deco/type.hpp"
#include "deco/value.hpp"

namespace deco {

/// Cached incrementalization of a function A ⟿ B: a Mealy machine whose
/// state is a Cache. The machine itself is immutable; step updates the
/// caller's cache in place.
class Machine {
 public:
  Machine(Type in, Type out) : in_(std::move(in)), out_(std::move(out)) {}
  virtual ~Machine() = default;

  const Type& input_type() const { return in_; }
  const Type& output_type() const { return out_; }

  /// (f x, initial cache)
  virtual std::pair<Value, Cache> initialize(const Value& x) const = 0;
  /// Output change for `dx`; advances `c` to the cache of the updated input.
  virtual Change step(const Change& dx, Cache& c) const = 0;
  /// True when every cache this machine produces is unit.
  virtual bool stateless() const { return false; }
  /// Semantic cache equality (Law 3), values compared at `tol`.
  virtual bool cache_equal(const Cache& a, const Cache& b,
                           const Tolerance& tol) const = 0;
  virtual std::string describe() const = 0;

 private:
  Type in_;
  Type out_;
};

using MachinePtr = std::shared_ptr<const Machine>;
using ValueFn = std::function<Value(const Value&)>;
using ChangeFn = std::function<Change(const Change&)>;

/// Caches the input; the derivative is f(x ⊕ x′) ⊖ f x.
MachinePtr comb_triv(std::string name, ValueFn f, Type in, Type out);
/// Caches input and output; f runs once per step.
MachinePtr comb_triv2(std::string name, ValueFn f, Type in, Type out);
/// Self-maintainable: f(x ⊕ x′) = f x ⊕ d x′, unit cache.
MachinePtr comb_self(std::string name, ValueFn f, ChangeFn d, Type in,
                     Type out);
/// Linear: the derivative is f itself.
MachinePtr comb_lin(std::string name, ValueFn f, Type in, Type out);
/// Bilinear f : A × B → C; caches (x, y).
MachinePtr comb_bilin(std::string name, ValueFn f, Type in, Type out);
/// ⊕ : A × A → A.
MachinePtr comb_add(Type a);

}  // namespace deco
