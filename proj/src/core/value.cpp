#include "deco/value.hpp"

#include "deco/errors.hpp"

namespace deco {
namespace {

template <class T>
T& cow(std::shared_ptr<T>& p) {
  if (p.use_count() > 1) p = std::make_shared<T>(*p);
  return *p;
}

[[noreturn]] void wrong_kind(const char* what) {
  throw UsageError(std::string("value is not a ") + what);
}

}  // namespace

Value Value::map(Map m) {
  Value v;
  v.kind_ = Kind::Map;
  v.rep_ = std::make_shared<Map>(std::move(m));
  return v;
}

Value Value::pair(Value a, Value b) {
  Value v;
  v.kind_ = Kind::Pair;
  v.rep_ = std::make_shared<PairNode>(PairNode{std::move(a), std::move(b)});
  return v;
}

Value Value::left(Value inner) {
  Value v;
  v.kind_ = Kind::Left;
  v.rep_ = std::make_shared<InjNode>(InjNode{std::move(inner)});
  return v;
}

Value Value::right(Value inner) {
  Value v;
  v.kind_ = Kind::Right;
  v.rep_ = std::make_shared<InjNode>(InjNode{std::move(inner)});
  return v;
}

const Scalar& Value::as_scalar() const {
  if (!is_scalar()) wrong_kind("scalar");
  return std::get<Scalar>(rep_);
}

const Value::Map& Value::as_map() const {
  if (!is_map()) wrong_kind("mapping");
  return *std::get<std::shared_ptr<Map>>(rep_);
}

Value::Map& Value::mutable_map() {
  if (!is_map()) wrong_kind("mapping");
  return cow(std::get<std::shared_ptr<Map>>(rep_));
}

const Value& Value::first() const {
  if (!is_pair()) wrong_kind("pair");
  return std::get<std::shared_ptr<PairNode>>(rep_)->first;
}

const Value& Value::second() const {
  if (!is_pair()) wrong_kind("pair");
  return std::get<std::shared_ptr<PairNode>>(rep_)->second;
}

Value& Value::mutable_first() {
  if (!is_pair()) wrong_kind("pair");
  return cow(std::get<std::shared_ptr<PairNode>>(rep_)).first;
}

Value& Value::mutable_second() {
  if (!is_pair()) wrong_kind("pair");
  return cow(std::get<std::shared_ptr<PairNode>>(rep_)).second;
}

const Value& Value::inner() const {
  if (!is_injection()) wrong_kind("injection");
  return std::get<std::shared_ptr<InjNode>>(rep_)->inner;
}

const Value* Value::find(const Index& i) const {
  const auto& m = as_map();
  auto it = m.find(i);
  return it == m.end() ? nullptr : &it->second;
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Value::Kind::Scalar:
      return a.as_scalar() == b.as_scalar();
    case Value::Kind::Map:
      return a.as_map() == b.as_map();
    case Value::Kind::Pair:
      return a.first() == b.first() && a.second() == b.second();
    case Value::Kind::Left:
    case Value::Kind::Right:
      return a.inner() == b.inner();
  }
  return false;
}

Change Change::map(Map m) {
  Change c;
  c.kind_ = Kind::Map;
  c.rep_ = std::make_shared<Map>(std::move(m));
  return c;
}

Change Change::pair(Change a, Change b) {
  Change c;
  c.kind_ = Kind::Pair;
  c.rep_ = std::make_shared<PairNode>(PairNode{std::move(a), std::move(b)});
  return c;
}

Change Change::cl(Change d) {
  Change c;
  c.kind_ = Kind::Cl;
  c.rep_ = std::make_shared<LocalNode>(LocalNode{std::move(d)});
  return c;
}

Change Change::cr(Change d) {
  Change c;
  c.kind_ = Kind::Cr;
  c.rep_ = std::make_shared<LocalNode>(LocalNode{std::move(d)});
  return c;
}

Change Change::sl(Value v) {
  Change c;
  c.kind_ = Kind::Sl;
  c.rep_ = std::make_shared<ReplaceNode>(ReplaceNode{std::move(v)});
  return c;
}

Change Change::sr(Value v) {
  Change c;
  c.kind_ = Kind::Sr;
  c.rep_ = std::make_shared<ReplaceNode>(ReplaceNode{std::move(v)});
  return c;
}

Change Change::null() {
  Change c;
  c.kind_ = Kind::Null;
  return c;
}

const Scalar& Change::as_scalar() const {
  if (!is_scalar()) wrong_kind("scalar change");
  return std::get<Scalar>(rep_);
}

const Change::Map& Change::as_map() const {
  if (!is_map()) wrong_kind("mapping change");
  return *std::get<std::shared_ptr<Map>>(rep_);
}

Change::Map& Change::mutable_map() {
  if (!is_map()) wrong_kind("mapping change");
  return cow(std::get<std::shared_ptr<Map>>(rep_));
}

const Change& Change::first() const {
  if (!is_pair()) wrong_kind("pair change");
  return std::get<std::shared_ptr<PairNode>>(rep_)->first;
}

const Change& Change::second() const {
  if (!is_pair()) wrong_kind("pair change");
  return std::get<std::shared_ptr<PairNode>>(rep_)->second;
}

Change& Change::mutable_first() {
  if (!is_pair()) wrong_kind("pair change");
  return cow(std::get<std::shared_ptr<PairNode>>(rep_)).first;
}

Change& Change::mutable_second() {
  if (!is_pair()) wrong_kind("pair change");
  return cow(std::get<std::shared_ptr<PairNode>>(rep_)).second;
}

const Change& Change::local() const {
  if (kind_ != Kind::Cl && kind_ != Kind::Cr) wrong_kind("cl/cr change");
  return std::get<std::shared_ptr<LocalNode>>(rep_)->inner;
}

const Value& Change::replacement() const {
  if (kind_ != Kind::Sl && kind_ != Kind::Sr) wrong_kind("sl/sr change");
  return std::get<std::shared_ptr<ReplaceNode>>(rep_)->value;
}

const Change* Change::find(const Index& i) const {
  const auto& m = as_map();
  auto it = m.find(i);
  return it == m.end() ? nullptr : &it->second;
}

bool operator==(const Change& a, const Change& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Change::Kind::Scalar:
      return a.as_scalar() == b.as_scalar();
    case Change::Kind::Map:
      return a.as_map() == b.as_map();
    case Change::Kind::Pair:
      return a.first() == b.first() && a.second() == b.second();
    case Change::Kind::Cl:
    case Change::Kind::Cr:
      return a.local() == b.local();
    case Change::Kind::Sl:
    case Change::Kind::Sr:
      return a.replacement() == b.replacement();
    case Change::Kind::Null:
      return true;
  }
  return false;
}

}  // namespace deco
