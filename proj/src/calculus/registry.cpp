#include "deco/registry.hpp"

#include <cctype>

#include "deco/errors.hpp"

namespace deco {
namespace {

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') {
    return false;
  }
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

template <class M>
std::vector<std::string> keys_of(const M& m) {
  std::vector<std::string> out;
  for (const auto& [k, v] : m) out.push_back(k);
  return out;
}

template <class M>
void insert_unique(M& m, const std::string& name, auto value,
                   const char* what) {
  if (!valid_name(name)) {
    throw RegistryError(std::string("invalid ") + what + " name '" + name +
                        "'");
  }
  if (!m.emplace(name, std::move(value)).second) {
    throw RegistryError(std::string("duplicate ") + what + " '" + name + "'");
  }
}

}  // namespace

void Registry::check_open(const std::string& what) const {
  if (frozen_) {
    throw RegistryError("registry '" + name_ + "' is frozen; cannot register " +
                        what);
  }
}

void Registry::register_base(BasePtr b) {
  check_open("a base");
  if (!b) throw RegistryError("null base");
  insert_unique(bases_, b->tag(), b, "base");
}

void Registry::register_container(ContainerPtr c) {
  check_open("a container");
  if (!c) throw RegistryError("null container");
  insert_unique(containers_, c->id(), c, "container");
}

void Registry::register_op(OpDef def) {
  check_open("an operation");
  if (!def.signature || !def.eval || !def.incr) {
    throw RegistryError("operation '" + def.name +
                        "' lacks a signature, evaluator or incrementalization");
  }
  for (const auto& t : def.samples) {
    if (!t.valid() || !def.signature(t)) {
      throw RegistryError("operation '" + def.name +
                          "' rejects its own sample type " + t.to_string());
    }
  }
  std::string name = def.name;
  insert_unique(ops_, name, std::make_shared<const OpDef>(std::move(def)),
                "operation");
}

void Registry::register_index_fn(IndexFnDef def) {
  check_open("an index function");
  if (!def.out_shape || !def.map) {
    throw RegistryError("index function '" + def.name + "' is incomplete");
  }
  std::string name = def.name;
  insert_unique(fns_, name, std::make_shared<const IndexFnDef>(std::move(def)),
                "index function");
}

void Registry::register_predicate(PredicateDef def) {
  check_open("a predicate");
  if (!def.test) throw RegistryError("predicate '" + def.name + "' is empty");
  std::string name = def.name;
  insert_unique(preds_, name,
                std::make_shared<const PredicateDef>(std::move(def)),
                "predicate");
}

void Registry::register_program(ProgramDef def) {
  check_open("a program");
  if (!def.build) throw RegistryError("program '" + def.name + "' is empty");
  std::string name = def.name;
  insert_unique(programs_, name,
                std::make_shared<const ProgramDef>(std::move(def)), "program");
}

void Registry::set_literal_base(const std::string& tag) {
  check_open("a literal base");
  if (!bases_.count(tag)) throw RegistryError("unknown base '" + tag + "'");
  literal_base_ = tag;
}

BasePtr Registry::base(const std::string& tag) const {
  auto it = bases_.find(tag);
  if (it == bases_.end()) throw TypeError("unknown base type '" + tag + "'");
  return it->second;
}

ContainerPtr Registry::container(const std::string& id) const {
  auto it = containers_.find(id);
  if (it == containers_.end()) {
    throw TypeError("unknown container '" + id + "'");
  }
  return it->second;
}

std::shared_ptr<const OpDef> Registry::op(const std::string& name) const {
  auto it = ops_.find(name);
  if (it == ops_.end()) throw TypeError("unknown operation '" + name + "'");
  return it->second;
}

std::shared_ptr<const IndexFnDef> Registry::index_fn(
    const std::string& name) const {
  auto it = fns_.find(name);
  if (it == fns_.end()) {
    throw TypeError("unknown index function '" + name + "'");
  }
  return it->second;
}

std::shared_ptr<const PredicateDef> Registry::predicate(
    const std::string& name) const {
  auto it = preds_.find(name);
  if (it == preds_.end()) throw TypeError("unknown predicate '" + name + "'");
  return it->second;
}

std::shared_ptr<const ProgramDef> Registry::program(
    const std::string& name) const {
  auto it = programs_.find(name);
  if (it == programs_.end()) {
    throw TypeError("unknown program '" + name + "'");
  }
  return it->second;
}

std::vector<std::string> Registry::op_names() const { return keys_of(ops_); }
std::vector<std::string> Registry::program_names() const {
  return keys_of(programs_);
}
std::vector<std::string> Registry::index_fn_names() const {
  return keys_of(fns_);
}
std::vector<std::string> Registry::predicate_names() const {
  return keys_of(preds_);
}
std::vector<std::string> Registry::base_tags() const { return keys_of(bases_); }
std::vector<std::string> Registry::container_ids() const {
  return keys_of(containers_);
}

BasePtr Registry::literal_base() const {
  if (!literal_base_.empty()) return base(literal_base_);
  if (bases_.size() == 1) return bases_.begin()->second;
  throw TypeError("registry '" + name_ + "' has no literal base");
}

namespace {

class TypeParser {
 public:
  TypeParser(const Registry& reg, const std::string& text)
      : reg_(reg), text_(text) {}

  Type parse_all() {
    Type t = sum();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

  Shape parse_shape_all() {
    Shape s = shape();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " in type '" + text_ + "'", 1, pos_ + 1);
  }

  void skip() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::string ident() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a name");
    return text_.substr(start, pos_ - start);
  }

  Type sum() {
    Type l = product();
    if (eat('+')) return Type::sum(l, sum());
    return l;
  }

  Type product() {
    Type l = atom();
    if (eat('*')) return Type::product(l, product());
    return l;
  }

  Type atom() {
    if (eat('(')) {
      Type t = sum();
      expect(')');
      return t;
    }
    std::string name = ident();
    skip();
    if (pos_ < text_.size() && text_[pos_] == '<') {
      ContainerPtr c = reg_.container(name);
      ++pos_;
      ShapeArg arg = shape_arg();
      expect('>');
      return Type::container(Shape(c, arg), atom());
    }
    return Type::base(reg_.base(name));
  }

  Shape shape() {
    std::string name = ident();
    ContainerPtr c = reg_.container(name);
    expect('<');
    ShapeArg arg = shape_arg();
    expect('>');
    return Shape(c, arg);
  }

  ShapeArg shape_arg() {
    skip();
    if (pos_ < text_.size() && text_[pos_] == '>') return ShapeArg::unit();
    if (eat('(')) {
      ShapeArg a = shape_arg();
      expect(',');
      ShapeArg b = shape_arg();
      expect(')');
      return ShapeArg::pair(a, b);
    }
    skip();
    if (pos_ < text_.size() &&
        std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      return ShapeArg::nat(std::stoll(text_.substr(start, pos_ - start)));
    }
    return ShapeArg::atom(ident());
  }

  const Registry& reg_;
  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

Type Registry::parse_type(const std::string& text) const {
  return TypeParser(*this, text).parse_all();
}

Shape Registry::parse_shape(const std::string& text) const {
  return TypeParser(*this, text).parse_shape_all();
}

}  // namespace deco
