#pragma once

#include <memory>
#include <vector>

#include "deco/json_codec.hpp"
#include "deco/value.hpp"

namespace deco {

/// State carried by an incremental machine between steps. Copies share
/// structure; mutable accessors copy shared nodes first.
class Cache {
 public:
  enum class Kind : std::uint8_t {
    Unit, Pair, Indexed, Input, InputOutput, Fuse, Distr, Case, Opaque
  };
  using Entries = SparseMap<Cache>;

  Cache() = default;

  static Cache unit() { return Cache(); }
  static Cache pair(Cache a, Cache b);
  /// Per-index caches; absent indices use `fallback`.
  static Cache indexed(Entries entries, Cache fallback);
  static Cache input(Value x);
  static Cache input_output(Value x, Value y);
  /// The sum value last seen by fuse.
  static Cache fuse(Value s);
  /// The pair (x, ι y) last seen by distr.
  static Cache distr(Value p);
  /// Active branch, its cache and its last output.
  static Cache case_of(bool left, Cache c, Value y);
  static Cache opaque(Value payload);

  Kind kind() const noexcept { return kind_; }
  bool is_unit() const noexcept { return kind_ == Kind::Unit; }

  const Cache& first() const { return kids_.at(0); }
  const Cache& second() const { return kids_.at(1); }
  Cache& first() { return kids_.at(0); }
  Cache& second() { return kids_.at(1); }

  const Entries& entries() const;
  Entries& entries();
  const Cache& fallback() const { return kids_.at(0); }

  /// Input, fuse, distr and opaque payload; the last output of a case.
  const Value& value() const { return a_; }
  Value& value() { return a_; }
  /// Cached output of InputOutput.
  const Value& output() const { return b_; }
  Value& output() { return b_; }

  bool left() const noexcept { return left_; }
  const Cache& branch() const { return kids_.at(0); }
  Cache& branch() { return kids_.at(0); }

 private:
  Kind kind_ = Kind::Unit;
  bool left_ = false;
  Value a_;
  Value b_;
  std::vector<Cache> kids_;
  std::shared_ptr<Entries> entries_;
};

/// Sorted, canonical debug rendering.
Json cache_to_json(const Cache& c);
/// Number of leaves carrying data (everything except unit).
std::size_t cache_payload_count(const Cache& c);

}  // namespace deco
