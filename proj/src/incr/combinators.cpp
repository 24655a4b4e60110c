#include "deco/machine.hpp"

#include "deco/algebra.hpp"
#include "deco/errors.hpp"
#include "deco/fault.hpp"

namespace deco {
namespace {

class TrivMachine final : public Machine {
 public:
  TrivMachine(std::string name, ValueFn f, Type in, Type out)
      : Machine(std::move(in), std::move(out)),
        name_(std::move(name)),
        f_(std::move(f)) {}

  std::pair<Value, Cache> initialize(const Value& x) const override {
    return {f_(x), Cache::input(x)};
  }

  Change step(const Change& dx, Cache& c) const override {
    Value y0 = f_(c.value());
    if (fault_active(Fault::TrivCache)) {
      Value x = apply_change(input_type(), c.value(), dx);
      return diff_values(output_type(), f_(x), y0);
    }
    apply_in_place(input_type(), c.value(), dx);
    return diff_values(output_type(), f_(c.value()), y0);
  }

  bool cache_equal(const Cache& a, const Cache& b,
                   const Tolerance& tol) const override {
    return values_equal(input_type(), a.value(), b.value(), tol);
  }

  std::string describe() const override { return "Triv " + name_; }

 private:
  std::string name_;
  ValueFn f_;
};

class Triv2Machine final : public Machine {
 public:
  Triv2Machine(std::string name, ValueFn f, Type in, Type out)
      : Machine(std::move(in), std::move(out)),
        name_(std::move(name)),
        f_(std::move(f)) {}

  std::pair<Value, Cache> initialize(const Value& x) const override {
    Value y = f_(x);
    return {y, Cache::input_output(x, y)};
  }

  Change step(const Change& dx, Cache& c) const override {
    apply_in_place(input_type(), c.value(), dx);
    Value y2 = f_(c.value());
    Change dy = diff_values(output_type(), y2, c.output());
    c.output() = std::move(y2);
    return dy;
  }

  bool cache_equal(const Cache& a, const Cache& b,
                   const Tolerance& tol) const override {
    return values_equal(input_type(), a.value(), b.value(), tol) &&
           values_equal(output_type(), a.output(), b.output(), tol);
  }

  std::string describe() const override { return "Triv2 " + name_; }

 private:
  std::string name_;
  ValueFn f_;
};

class SelfMachine final : public Machine {
 public:
  SelfMachine(std::string name, ValueFn f, ChangeFn d, Type in, Type out)
      : Machine(std::move(in), std::move(out)),
        name_(std::move(name)),
        f_(std::move(f)),
        d_(std::move(d)) {}

  std::pair<Value, Cache> initialize(const Value& x) const override {
    return {f_(x), Cache::unit()};
  }
  Change step(const Change& dx, Cache&) const override { return d_(dx); }
  bool stateless() const override { return true; }
  bool cache_equal(const Cache& a, const Cache& b,
                   const Tolerance&) const override {
    return a.is_unit() && b.is_unit();
  }
  std::string describe() const override { return "Self " + name_; }

 private:
  std::string name_;
  ValueFn f_;
  ChangeFn d_;
};

class LinMachine final : public Machine {
 public:
  LinMachine(std::string name, ValueFn f, Type in, Type out)
      : Machine(std::move(in), std::move(out)),
        name_(std::move(name)),
        f_(std::move(f)) {}

  std::pair<Value, Cache> initialize(const Value& x) const override {
    return {f_(x), Cache::unit()};
  }
  Change step(const Change& dx, Cache&) const override {
    return to_change(output_type(), f_(to_value(input_type(), dx)));
  }
  bool stateless() const override { return true; }
  bool cache_equal(const Cache& a, const Cache& b,
                   const Tolerance&) const override {
    return a.is_unit() && b.is_unit();
  }
  std::string describe() const override { return "Lin " + name_; }

 private:
  std::string name_;
  ValueFn f_;
};

class BiLinMachine final : public Machine {
 public:
  BiLinMachine(std::string name, ValueFn f, Type in, Type out)
      : Machine(std::move(in), std::move(out)),
        name_(std::move(name)),
        f_(std::move(f)) {}

  std::pair<Value, Cache> initialize(const Value& x) const override {
    return {f_(x), Cache::input(x)};
  }

  Change step(const Change& dx, Cache& c) const override {
    const Type& a = input_type().left();
    const Type& b = input_type().right();
    const Type& out = output_type();
    Change dy = nil_change(out);
    bool nil_x = is_nil(a, dx.first());
    bool nil_y = is_nil(b, dx.second());
    if (nil_x && nil_y) return dy;
    Value x1 = to_value(a, dx.first());
    Value y1 = to_value(b, dx.second());
    const Value& x = c.value().first();
    const Value& y = c.value().second();
    if (!nil_x && !nil_y && !fault_active(Fault::BiLinCross)) {
      add_in_place(out, dy, to_change(out, f_(Value::pair(x1, y1))));
    }
    if (!nil_x) add_in_place(out, dy, to_change(out, f_(Value::pair(x1, y))));
    if (!nil_y) add_in_place(out, dy, to_change(out, f_(Value::pair(x, y1))));
    if (!nil_x) apply_in_place(a, c.value().mutable_first(), dx.first());
    if (!nil_y) apply_in_place(b, c.value().mutable_second(), dx.second());
    return dy;
  }

  bool cache_equal(const Cache& a, const Cache& b,
                   const Tolerance& tol) const override {
    return values_equal(input_type(), a.value(), b.value(), tol);
  }

  std::string describe() const override { return "BiLin " + name_; }

 private:
  std::string name_;
  ValueFn f_;
};

class AddMachine final : public Machine {
 public:
  explicit AddMachine(const Type& a) : Machine(Type::product(a, a), a) {}

  std::pair<Value, Cache> initialize(const Value& x) const override {
    return {apply_change(output_type(), x.first(),
                         to_change(output_type(), x.second())),
            Cache::unit()};
  }
  Change step(const Change& dx, Cache&) const override {
    return add_changes(output_type(), dx.first(), dx.second());
  }
  bool stateless() const override { return true; }
  bool cache_equal(const Cache& a, const Cache& b,
                   const Tolerance&) const override {
    return a.is_unit() && b.is_unit();
  }
  std::string describe() const override { return "Add"; }
};

void require_values_are_changes(const char* comb, const std::string& name,
                                const Type& t) {
  if (!t.values_are_changes()) {
    throw TypeError(std::string(comb) + " " + name + " needs values equal to "
                    "changes, which " + t.to_string() + " lacks");
  }
}

void require_additive(const char* comb, const std::string& name,
                      const Type& t) {
  if (!t.additive()) {
    throw TypeError(std::string(comb) + " " + name + " needs a commutative, "
                    "associative update on " + t.to_string());
  }
}

}  // namespace

MachinePtr comb_triv(std::string name, ValueFn f, Type in, Type out) {
  return std::make_shared<TrivMachine>(std::move(name), std::move(f),
                                       std::move(in), std::move(out));
}

MachinePtr comb_triv2(std::string name, ValueFn f, Type in, Type out) {
  return std::make_shared<Triv2Machine>(std::move(name), std::move(f),
                                        std::move(in), std::move(out));
}

MachinePtr comb_self(std::string name, ValueFn f, ChangeFn d, Type in,
                     Type out) {
  return std::make_shared<SelfMachine>(std::move(name), std::move(f),
                                       std::move(d), std::move(in),
                                       std::move(out));
}

MachinePtr comb_lin(std::string name, ValueFn f, Type in, Type out) {
  require_values_are_changes("Lin", name, in);
  require_values_are_changes("Lin", name, out);
  return std::make_shared<LinMachine>(std::move(name), std::move(f),
                                      std::move(in), std::move(out));
}

MachinePtr comb_bilin(std::string name, ValueFn f, Type in, Type out) {
  if (!in.is_product()) {
    throw TypeError("BiLin " + name + " needs a product input, got " +
                    in.to_string());
  }
  require_values_are_changes("BiLin", name, in);
  require_additive("BiLin", name, out);
  return std::make_shared<BiLinMachine>(std::move(name), std::move(f),
                                        std::move(in), std::move(out));
}

MachinePtr comb_add(Type a) {
  require_additive("Add", "plus", a);
  return std::make_shared<AddMachine>(a);
}

}  // namespace deco
