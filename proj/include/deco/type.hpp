#pragma once

#include <memory>
#include <string>

#include "deco/base.hpp"
#include "deco/container.hpp"

namespace deco {

/// Object-language type: base | F_s A | A × B | A + B.
class Type {
 public:
  enum class Kind : std::uint8_t { Base, Container, Product, Sum };

  Type() = default;
  static Type base(BasePtr b);
  static Type container(Shape s, Type elem);
  static Type product(Type a, Type b);
  static Type sum(Type a, Type b);

  bool valid() const noexcept { return node_ != nullptr; }
  Kind kind() const { return node_->kind; }
  bool is_base() const { return kind() == Kind::Base; }
  bool is_container() const { return kind() == Kind::Container; }
  bool is_product() const { return kind() == Kind::Product; }
  bool is_sum() const { return kind() == Kind::Sum; }

  const BaseChangeStructure& base() const { return *node_->base; }
  const BasePtr& base_ptr() const { return node_->base; }
  const Shape& shape() const { return node_->shape; }
  const Type& elem() const { return node_->kids[0]; }
  const Type& left() const { return node_->kids[0]; }
  const Type& right() const { return node_->kids[1]; }

  /// True when values and changes coincide structurally (every base has
  /// β = β′ and no sum occurs), so a value can serve as a change.
  bool values_are_changes() const { return node_->values_are_changes; }
  /// values_are_changes() plus commutative, associative ⊕ everywhere.
  bool additive() const { return node_->additive; }
  /// True when a base with this tag occurs anywhere in the type.
  bool mentions(const std::string& base_tag) const;

  friend bool operator==(const Type& a, const Type& b);
  std::string to_string() const;

 private:
  struct Node {
    Kind kind;
    BasePtr base;
    Shape shape;
    std::vector<Type> kids;
    bool values_are_changes = false;
    bool additive = false;
  };
  std::shared_ptr<const Node> node_;
};

}  // namespace deco
