#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "deco/base.hpp"
#include "deco/container.hpp"
#include "deco/term.hpp"
#include "deco/type.hpp"
#include "deco/value.hpp"

namespace deco {

class Machine;
using MachinePtr = std::shared_ptr<const Machine>;

/// A user-defined operation: batch semantics plus its cached
/// incrementalization. Operations may be polymorphic; `signature` decides
/// which input types are accepted and what they produce.
struct OpDef {
  std::string name;
  std::function<std::optional<Type>(const Type& in)> signature;
  std::function<Value(const Type& in, const Type& out, const Value& x)> eval;
  std::function<MachinePtr(const Type& in, const Type& out)> incr;
  /// Input types on which the law suites exercise the operation.
  std::vector<Type> samples;
};

/// Shape transformation for reshape: r maps output positions to input
/// positions. `preimage` lists the output positions mapping to a given input
/// position, or returns nullopt when that fiber is infinite; it may be left
/// empty when the output shape is always finite.
struct IndexFnDef {
  std::string name;
  std::function<std::optional<Shape>(const Shape& in)> out_shape;
  std::function<Index(const Shape& in, const Shape& out, const Index& j)> map;
  std::function<std::optional<std::vector<Index>>(
      const Shape& in, const Shape& out, const Index& i)>
      preimage;
};

struct PredicateDef {
  std::string name;
  std::function<bool(const Shape& s, const Index& i)> test;
};

/// A named derived program, built for a concrete argument type.
struct ProgramDef {
  std::string name;
  std::function<Term(const Type& arg)> build;
  std::vector<Type> samples;
};

/// Names available to terms of one instance. Mutable until freeze().
class Registry {
 public:
  explicit Registry(std::string name = "core") : name_(std::move(name)) {}

  const std::string& name() const { return name_; }

  void register_base(BasePtr b);
  void register_container(ContainerPtr c);
  void register_op(OpDef def);
  void register_index_fn(IndexFnDef def);
  void register_predicate(PredicateDef def);
  void register_program(ProgramDef def);
  /// Base used for literals in surface programs.
  void set_literal_base(const std::string& tag);

  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  BasePtr base(const std::string& tag) const;
  ContainerPtr container(const std::string& id) const;
  std::shared_ptr<const OpDef> op(const std::string& name) const;
  std::shared_ptr<const IndexFnDef> index_fn(const std::string& name) const;
  std::shared_ptr<const PredicateDef> predicate(const std::string& name) const;
  std::shared_ptr<const ProgramDef> program(const std::string& name) const;

  bool has_op(const std::string& name) const { return ops_.count(name) > 0; }
  bool has_program(const std::string& name) const {
    return programs_.count(name) > 0;
  }

  std::vector<std::string> op_names() const;
  std::vector<std::string> program_names() const;
  std::vector<std::string> index_fn_names() const;
  std::vector<std::string> predicate_names() const;
  std::vector<std::string> base_tags() const;
  std::vector<std::string> container_ids() const;
  BasePtr literal_base() const;

  /// Parses the type syntax: `real`, `array<3> real`, `rel<(int,str)> int`,
  /// `tree<> json`, `A * B`, `A + B`, parentheses. `*` binds tighter than
  /// `+`; both associate to the right.
  Type parse_type(const std::string& text) const;
  Shape parse_shape(const std::string& text) const;

 private:
  void check_open(const std::string& what) const;

  std::string name_;
  bool frozen_ = false;
  std::map<std::string, BasePtr> bases_;
  std::map<std::string, ContainerPtr> containers_;
  std::map<std::string, std::shared_ptr<const OpDef>> ops_;
  std::map<std::string, std::shared_ptr<const IndexFnDef>> fns_;
  std::map<std::string, std::shared_ptr<const PredicateDef>> preds_;
  std::map<std::string, std::shared_ptr<const ProgramDef>> programs_;
  std::string literal_base_;
};

using RegistryPtr = std::shared_ptr<const Registry>;

}  // namespace deco
