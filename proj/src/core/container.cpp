#include "deco/container.hpp"

#include <algorithm>

#include "deco/errors.hpp"

namespace deco {

ShapeArg ShapeArg::nat(std::int64_t n) {
  ShapeArg s;
  s.kind_ = Kind::Nat;
  s.nat_ = n;
  return s;
}

ShapeArg ShapeArg::atom(std::string name) {
  ShapeArg s;
  s.kind_ = Kind::Atom;
  s.node_ = std::make_shared<const Node>(Node{std::move(name), {}});
  return s;
}

ShapeArg ShapeArg::pair(ShapeArg a, ShapeArg b) {
  ShapeArg s;
  s.kind_ = Kind::Pair;
  s.node_ = std::make_shared<const Node>(
      Node{{}, {std::move(a), std::move(b)}});
  return s;
}

bool operator==(const ShapeArg& a, const ShapeArg& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case ShapeArg::Kind::Unit:
      return true;
    case ShapeArg::Kind::Nat:
      return a.nat_ == b.nat_;
    case ShapeArg::Kind::Atom:
      return a.atom_name() == b.atom_name();
    case ShapeArg::Kind::Pair:
      return a.first() == b.first() && a.second() == b.second();
  }
  return false;
}

std::string ShapeArg::to_string() const {
  switch (kind_) {
    case Kind::Unit:
      return "";
    case Kind::Nat:
      return std::to_string(nat_);
    case Kind::Atom:
      return atom_name();
    case Kind::Pair:
      return "(" + first().to_string() + "," + second().to_string() + ")";
  }
  return "";
}

Shape::Shape(ContainerPtr def, ShapeArg arg)
    : def_(std::move(def)), arg_(std::move(arg)) {
  if (!def_) throw UsageError("shape without container");
  if (!def_->valid_shape(arg_)) {
    throw TypeError("invalid shape " + arg_.to_string() + " for container " +
                    def_->id());
  }
  if (auto all = def_->enumerate(arg_)) {
    finite_ = true;
    positions_ = std::make_shared<const std::vector<Index>>(std::move(*all));
  }
}

const std::vector<Index>& Shape::positions() const {
  static const std::vector<Index> none;
  return positions_ ? *positions_ : none;
}

bool operator==(const Shape& a, const Shape& b) {
  if (a.def_ == b.def_) return a.arg_ == b.arg_;
  if (!a.def_ || !b.def_) return false;
  return a.def_->id() == b.def_->id() && a.arg_ == b.arg_;
}

std::string Shape::to_string() const {
  return def_->id() + "<" + arg_.to_string() + ">";
}

bool index_matches_schema(const ShapeArg& s, const Index& i) {
  switch (s.kind()) {
    case ShapeArg::Kind::Atom:
      if (s.atom_name() == "int") return i.kind() == Index::Kind::Int;
      if (s.atom_name() == "str") return i.kind() == Index::Kind::Str;
      if (s.atom_name() == "path") return i.kind() == Index::Kind::Path;
      return false;
    case ShapeArg::Kind::Pair:
      return i.kind() == Index::Kind::Pair &&
             index_matches_schema(s.first(), i.first()) &&
             index_matches_schema(s.second(), i.second());
    default:
      return false;
  }
}

namespace {

bool valid_schema(const ShapeArg& s) {
  switch (s.kind()) {
    case ShapeArg::Kind::Atom:
      return s.atom_name() == "int" || s.atom_name() == "str" ||
             s.atom_name() == "path";
    case ShapeArg::Kind::Pair:
      return valid_schema(s.first()) && valid_schema(s.second());
    default:
      return false;
  }
}

class ArrayContainer final : public ContainerDef {
 public:
  const std::string& id() const override { return id_; }
  bool valid_shape(const ShapeArg& s) const override {
    return s.kind() == ShapeArg::Kind::Nat && s.as_nat() >= 0;
  }
  bool valid_index(const ShapeArg& s, const Index& i) const override {
    return i.is_int() && i.as_int() >= 0 && i.as_int() < s.as_nat();
  }
  std::optional<std::vector<Index>> enumerate(
      const ShapeArg& s) const override {
    std::vector<Index> out;
    out.reserve(static_cast<std::size_t>(s.as_nat()));
    for (std::int64_t k = 0; k < s.as_nat(); ++k) out.emplace_back(k);
    return out;
  }

 private:
  std::string id_ = "array";
};

class SchemaContainer final : public ContainerDef {
 public:
  explicit SchemaContainer(std::string id) : id_(std::move(id)) {}
  const std::string& id() const override { return id_; }
  bool valid_shape(const ShapeArg& s) const override {
    return valid_schema(s);
  }
  bool valid_index(const ShapeArg& s, const Index& i) const override {
    return index_matches_schema(s, i);
  }
  std::optional<std::vector<Index>> enumerate(
      const ShapeArg&) const override {
    return std::nullopt;
  }

 private:
  std::string id_;
};

class TreeContainer final : public ContainerDef {
 public:
  const std::string& id() const override { return id_; }
  bool valid_shape(const ShapeArg& s) const override {
    return s.kind() == ShapeArg::Kind::Unit;
  }
  bool valid_index(const ShapeArg&, const Index& i) const override {
    return i.kind() == Index::Kind::Path;
  }
  std::optional<std::vector<Index>> enumerate(
      const ShapeArg&) const override {
    return std::nullopt;
  }

 private:
  std::string id_ = "tree";
};

class ParticipantsContainer final : public ContainerDef {
 public:
  ParticipantsContainer(std::string id, std::vector<Index> ps)
      : id_(std::move(id)), participants_(std::move(ps)) {
    std::sort(participants_.begin(), participants_.end());
    participants_.erase(
        std::unique(participants_.begin(), participants_.end()),
        participants_.end());
  }
  const std::string& id() const override { return id_; }
  bool valid_shape(const ShapeArg& s) const override {
    return s.kind() == ShapeArg::Kind::Unit;
  }
  bool valid_index(const ShapeArg&, const Index& i) const override {
    return std::binary_search(participants_.begin(), participants_.end(), i);
  }
  std::optional<std::vector<Index>> enumerate(
      const ShapeArg&) const override {
    return participants_;
  }

 private:
  std::string id_;
  std::vector<Index> participants_;
};

}  // namespace

ContainerPtr array_container() {
  static const ContainerPtr c = std::make_shared<ArrayContainer>();
  return c;
}
ContainerPtr relation_container() {
  static const ContainerPtr c = std::make_shared<SchemaContainer>("rel");
  return c;
}
ContainerPtr dict_container() {
  static const ContainerPtr c = std::make_shared<SchemaContainer>("dict");
  return c;
}
ContainerPtr tree_container() {
  static const ContainerPtr c = std::make_shared<TreeContainer>();
  return c;
}
ContainerPtr participants_container(std::string id,
                                    std::vector<Index> participants) {
  if (participants.empty()) {
    throw RegistryError("participant set must be non-empty");
  }
  return std::make_shared<ParticipantsContainer>(std::move(id),
                                                 std::move(participants));
}

}  // namespace deco
