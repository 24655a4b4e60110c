#include "deco/type.hpp"

#include "deco/errors.hpp"

namespace deco {

Type Type::base(BasePtr b) {
  if (!b) throw UsageError("null base structure");
  Type t;
  auto f = b->flags();
  t.node_ = std::make_shared<const Node>(
      Node{Kind::Base, std::move(b), Shape{}, {}, f.values_are_changes,
           f.additive()});
  return t;
}

Type Type::container(Shape s, Type elem) {
  if (!elem.valid()) throw UsageError("container of invalid type");
  Type t;
  bool vc = elem.values_are_changes();
  bool add = elem.additive();
  t.node_ = std::make_shared<const Node>(
      Node{Kind::Container, nullptr, std::move(s), {std::move(elem)}, vc,
           add});
  return t;
}

Type Type::product(Type a, Type b) {
  if (!a.valid() || !b.valid()) throw UsageError("product of invalid type");
  Type t;
  bool vc = a.values_are_changes() && b.values_are_changes();
  bool add = a.additive() && b.additive();
  t.node_ = std::make_shared<const Node>(
      Node{Kind::Product, nullptr, Shape{}, {std::move(a), std::move(b)}, vc,
           add});
  return t;
}

Type Type::sum(Type a, Type b) {
  if (!a.valid() || !b.valid()) throw UsageError("sum of invalid type");
  Type t;
  t.node_ = std::make_shared<const Node>(Node{
      Kind::Sum, nullptr, Shape{}, {std::move(a), std::move(b)}, false, false});
  return t;
}

bool Type::mentions(const std::string& base_tag) const {
  switch (kind()) {
    case Kind::Base:
      return base().tag() == base_tag;
    case Kind::Container:
      return elem().mentions(base_tag);
    case Kind::Product:
    case Kind::Sum:
      return left().mentions(base_tag) || right().mentions(base_tag);
  }
  return false;
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Type::Kind::Base:
      return a.base().tag() == b.base().tag();
    case Type::Kind::Container:
      return a.shape() == b.shape() && a.elem() == b.elem();
    case Type::Kind::Product:
    case Type::Kind::Sum:
      return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

namespace {

std::string render(const Type& t, int prec) {
  // prec: 0 = sum level, 1 = product level, 2 = atom
  switch (t.kind()) {
    case Type::Kind::Base:
      return t.base().tag();
    case Type::Kind::Container: {
      return t.shape().to_string() + " " + render(t.elem(), 2);
    }
    case Type::Kind::Product: {
      std::string s = render(t.left(), 2) + " * " + render(t.right(), 1);
      return prec > 1 ? "(" + s + ")" : s;
    }
    case Type::Kind::Sum: {
      std::string s = render(t.left(), 1) + " + " + render(t.right(), 0);
      return prec > 0 ? "(" + s + ")" : s;
    }
  }
  return "?";
}

}  // namespace

std::string Type::to_string() const {
  if (!valid()) return "<invalid>";
  return render(*this, 0);
}

}  // namespace deco
