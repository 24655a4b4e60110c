#pragma once

#include <algorithm>
#include <memory>
#include <unordered_map>
#include <variant>
#include <vector>

#include "deco/index.hpp"
#include "deco/scalar.hpp"

namespace deco {

template <class T>
using SparseMap = std::unordered_map<Index, T, IndexHash>;

/// Runtime value. Containers are finitely supported maps whose absent keys
/// read as the element default ε. Copies share structure; the mutable_*
/// accessors copy a node only when it is shared.
class Value {
 public:
  enum class Kind : std::uint8_t { Scalar, Map, Pair, Left, Right };
  using Map = SparseMap<Value>;

  Value() = default;
  Value(Scalar s) : kind_(Kind::Scalar), rep_(std::move(s)) {}  // NOLINT

  static Value real(double v) { return Value(Scalar::real(v)); }
  static Value integer(std::int64_t v) { return Value(Scalar::integer(v)); }
  static Value natural(std::uint64_t v) { return Value(Scalar::natural(v)); }
  static Value map(Map m = {});
  static Value pair(Value a, Value b);
  static Value left(Value v);
  static Value right(Value v);

  Kind kind() const noexcept { return kind_; }
  bool is_scalar() const noexcept { return kind_ == Kind::Scalar; }
  bool is_map() const noexcept { return kind_ == Kind::Map; }
  bool is_pair() const noexcept { return kind_ == Kind::Pair; }
  bool is_left() const noexcept { return kind_ == Kind::Left; }
  bool is_right() const noexcept { return kind_ == Kind::Right; }
  bool is_injection() const noexcept { return is_left() || is_right(); }

  const Scalar& as_scalar() const;
  const Map& as_map() const;
  Map& mutable_map();
  const Value& first() const;
  const Value& second() const;
  Value& mutable_first();
  Value& mutable_second();
  /// Payload of an injection.
  const Value& inner() const;

  /// Entry at `i`, or nullptr when absent (reads as ε).
  const Value* find(const Index& i) const;

  /// Exact structural identity of the representation.
  friend bool operator==(const Value& a, const Value& b);

 private:
  struct PairNode;
  struct InjNode;
  Kind kind_ = Kind::Scalar;
  std::variant<Scalar, std::shared_ptr<Map>, std::shared_ptr<PairNode>,
               std::shared_ptr<InjNode>>
      rep_;
};

/// Runtime change. Mapping changes omit canonically-nil entries; sum changes
/// are cl/cr (local), sl/sr (replace by a value) or null.
class Change {
 public:
  enum class Kind : std::uint8_t { Scalar, Map, Pair, Cl, Cr, Sl, Sr, Null };
  using Map = SparseMap<Change>;

  Change() = default;
  Change(Scalar s) : kind_(Kind::Scalar), rep_(std::move(s)) {}  // NOLINT

  static Change real(double v) { return Change(Scalar::real(v)); }
  static Change integer(std::int64_t v) { return Change(Scalar::integer(v)); }
  static Change natural(std::uint64_t v) {
    return Change(Scalar::natural(v));
  }
  static Change map(Map m = {});
  static Change pair(Change a, Change b);
  static Change cl(Change d);
  static Change cr(Change d);
  static Change sl(Value v);
  static Change sr(Value v);
  static Change null();

  Kind kind() const noexcept { return kind_; }
  bool is_scalar() const noexcept { return kind_ == Kind::Scalar; }
  bool is_map() const noexcept { return kind_ == Kind::Map; }
  bool is_pair() const noexcept { return kind_ == Kind::Pair; }
  bool is_sum_change() const noexcept {
    return kind_ == Kind::Cl || kind_ == Kind::Cr || kind_ == Kind::Sl ||
           kind_ == Kind::Sr || kind_ == Kind::Null;
  }

  const Scalar& as_scalar() const;
  const Map& as_map() const;
  Map& mutable_map();
  const Change& first() const;
  const Change& second() const;
  Change& mutable_first();
  Change& mutable_second();
  /// Payload of cl/cr.
  const Change& local() const;
  /// Payload of sl/sr.
  const Value& replacement() const;

  const Change* find(const Index& i) const;

  friend bool operator==(const Change& a, const Change& b);

 private:
  struct PairNode;
  struct LocalNode;
  struct ReplaceNode;
  Kind kind_ = Kind::Scalar;
  std::variant<Scalar, std::shared_ptr<Map>, std::shared_ptr<PairNode>,
               std::shared_ptr<LocalNode>, std::shared_ptr<ReplaceNode>>
      rep_;
};

struct Value::PairNode {
  Value first;
  Value second;
};
struct Value::InjNode {
  Value inner;
};
struct Change::PairNode {
  Change first;
  Change second;
};
struct Change::LocalNode {
  Change inner;
};
struct Change::ReplaceNode {
  Value value;
};

/// Keys of a map in ascending order.
template <class M>
std::vector<Index> sorted_keys(const M& m) {
  std::vector<Index> keys;
  keys.reserve(m.size());
  for (const auto& [k, v] : m) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace deco
