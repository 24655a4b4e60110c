#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "deco/index.hpp"

namespace deco {

/// Container-specific shape datum: unit, a length, a schema atom ("int",
/// "str") or a pair of shape data (product schema).
class ShapeArg {
 public:
  enum class Kind : std::uint8_t { Unit, Nat, Atom, Pair };

  ShapeArg() = default;
  static ShapeArg unit() { return ShapeArg(); }
  static ShapeArg nat(std::int64_t n);
  static ShapeArg atom(std::string name);
  static ShapeArg pair(ShapeArg a, ShapeArg b);

  Kind kind() const noexcept { return kind_; }
  std::int64_t as_nat() const { return nat_; }
  const std::string& atom_name() const { return node_->atom; }
  const ShapeArg& first() const { return node_->items[0]; }
  const ShapeArg& second() const { return node_->items[1]; }

  friend bool operator==(const ShapeArg& a, const ShapeArg& b);
  std::string to_string() const;

 private:
  struct Node {
    std::string atom;
    std::vector<ShapeArg> items;
  };
  Kind kind_ = Kind::Unit;
  std::int64_t nat_ = 0;
  std::shared_ptr<const Node> node_;
};

/// A container: a family of shapes and, per shape, a set of positions.
class ContainerDef {
 public:
  virtual ~ContainerDef() = default;
  virtual const std::string& id() const = 0;
  virtual bool valid_shape(const ShapeArg& s) const = 0;
  virtual bool valid_index(const ShapeArg& s, const Index& i) const = 0;
  /// All positions of a finite shape in ascending order, or nullopt when
  /// the position set is infinite.
  virtual std::optional<std::vector<Index>> enumerate(
      const ShapeArg& s) const = 0;
  bool finite(const ShapeArg& s) const { return enumerate(s).has_value(); }
};

using ContainerPtr = std::shared_ptr<const ContainerDef>;

/// A shape: the owning container plus its datum.
class Shape {
 public:
  Shape() = default;
  Shape(ContainerPtr def, ShapeArg arg);

  const ContainerDef& def() const { return *def_; }
  const ContainerPtr& def_ptr() const { return def_; }
  const ShapeArg& arg() const { return arg_; }

  bool valid_index(const Index& i) const { return def_->valid_index(arg_, i); }
  bool finite() const { return finite_; }
  /// Ascending positions of a finite shape; empty for infinite ones.
  const std::vector<Index>& positions() const;

  friend bool operator==(const Shape& a, const Shape& b);
  std::string to_string() const;

 private:
  ContainerPtr def_;
  ShapeArg arg_;
  bool finite_ = false;
  std::shared_ptr<const std::vector<Index>> positions_;
};

/// Arrays: shape n, positions 0..n-1.
ContainerPtr array_container();
/// Relations: shape is a schema over int, str and pairs; positions are the
/// tuples of that schema.
ContainerPtr relation_container();
/// Dictionaries D^K: one shape per key schema K, positions are keys.
ContainerPtr dict_container();
/// Path-indexed trees: unit shape, positions are paths.
ContainerPtr tree_container();
/// A fixed finite participant set with a single unit shape.
ContainerPtr participants_container(std::string id,
                                    std::vector<Index> participants);

/// Is `i` a tuple of the schema `s` (atoms "int", "str"; pairs)?
bool index_matches_schema(const ShapeArg& s, const Index& i);

}  // namespace deco
