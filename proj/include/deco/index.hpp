#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace deco {

/// One step of a tree path: either an ordinal (child position) or a field
/// name.
class PathStep {
 public:
  PathStep(std::int64_t ordinal) : rep_(ordinal) {}  // NOLINT
  PathStep(std::string field) : rep_(std::move(field)) {}  // NOLINT
  PathStep(const char* field) : rep_(std::string(field)) {}  // NOLINT

  bool is_ordinal() const noexcept { return rep_.index() == 0; }
  bool is_field() const noexcept { return rep_.index() == 1; }
  std::int64_t ordinal() const { return std::get<0>(rep_); }
  const std::string& field() const { return std::get<1>(rep_); }

  friend bool operator==(const PathStep&, const PathStep&) = default;
  friend std::strong_ordering operator<=>(const PathStep& a,
                                          const PathStep& b);

  std::size_t hash() const noexcept;

 private:
  std::variant<std::int64_t, std::string> rep_;
};

using Path = std::vector<PathStep>;

/// A container position. Integer keys double as natural keys: array
/// containers accept exactly the non-negative integers below their length.
class Index {
 public:
  enum class Kind : std::uint8_t { Int = 0, Str = 1, Pair = 2, Path = 3 };

  Index() : rep_(std::int64_t{0}) {}
  Index(std::int64_t i) : rep_(i) {}  // NOLINT
  Index(int i) : rep_(std::int64_t{i}) {}  // NOLINT

  static Index integer(std::int64_t i) { return Index(i); }
  static Index string(std::string s);
  static Index pair(Index a, Index b);
  static Index path(Path steps);

  Kind kind() const noexcept { return static_cast<Kind>(rep_.index()); }
  bool is_int() const noexcept { return kind() == Kind::Int; }

  std::int64_t as_int() const { return std::get<0>(rep_); }
  const std::string& as_string() const { return *std::get<1>(rep_); }
  const Index& first() const { return std::get<2>(rep_)->first; }
  const Index& second() const { return std::get<2>(rep_)->second; }
  const Path& steps() const { return *std::get<3>(rep_); }

  std::size_t hash() const noexcept;

  friend bool operator==(const Index& a, const Index& b);
  friend std::strong_ordering operator<=>(const Index& a, const Index& b);

  /// Human-readable rendering, used in diagnostics.
  std::string to_string() const;

 private:
  using PairRep = std::pair<Index, Index>;
  std::variant<std::int64_t, std::shared_ptr<const std::string>,
               std::shared_ptr<const PairRep>, std::shared_ptr<const Path>>
      rep_;
};

struct IndexHash {
  std::size_t operator()(const Index& i) const noexcept { return i.hash(); }
};

}  // namespace deco

template <>
struct std::hash<deco::Index> {
  std::size_t operator()(const deco::Index& i) const noexcept {
    return i.hash();
  }
};
