#include "deco/index.hpp"

#include <sstream>

namespace deco {
namespace {

std::size_t mix(std::size_t seed, std::size_t v) noexcept {
  // splitmix-style combiner
  std::uint64_t x = seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  x ^= x >> 31;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 29;
  return static_cast<std::size_t>(x);
}

}  // namespace

std::strong_ordering operator<=>(const PathStep& a, const PathStep& b) {
  if (a.rep_.index() != b.rep_.index()) {
    return a.rep_.index() <=> b.rep_.index();
  }
  if (a.is_ordinal()) return a.ordinal() <=> b.ordinal();
  return a.field().compare(b.field()) <=> 0;
}

std::size_t PathStep::hash() const noexcept {
  if (is_ordinal()) return mix(0x51, static_cast<std::size_t>(ordinal()));
  return mix(0x52, std::hash<std::string>{}(field()));
}

Index Index::string(std::string s) {
  Index i;
  i.rep_ = std::make_shared<const std::string>(std::move(s));
  return i;
}

Index Index::pair(Index a, Index b) {
  Index i;
  i.rep_ = std::make_shared<const PairRep>(std::move(a), std::move(b));
  return i;
}

Index Index::path(Path steps) {
  Index i;
  i.rep_ = std::make_shared<const Path>(std::move(steps));
  return i;
}

std::size_t Index::hash() const noexcept {
  switch (kind()) {
    case Kind::Int: {
      auto v = static_cast<std::uint64_t>(as_int());
      v ^= v >> 33;
      v *= 0xff51afd7ed558ccdULL;
      v ^= v >> 33;
      return static_cast<std::size_t>(v);
    }
    case Kind::Str:
      return mix(0x11, std::hash<std::string>{}(as_string()));
    case Kind::Pair:
      return mix(mix(0x22, first().hash()), second().hash());
    case Kind::Path: {
      std::size_t h = 0x33;
      for (const auto& s : steps()) h = mix(h, s.hash());
      return h;
    }
  }
  return 0;
}

bool operator==(const Index& a, const Index& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Index::Kind::Int:
      return a.as_int() == b.as_int();
    case Index::Kind::Str:
      return a.as_string() == b.as_string();
    case Index::Kind::Pair:
      return a.first() == b.first() && a.second() == b.second();
    case Index::Kind::Path:
      return a.steps() == b.steps();
  }
  return false;
}

std::strong_ordering operator<=>(const Index& a, const Index& b) {
  if (a.kind() != b.kind()) return a.kind() <=> b.kind();
  switch (a.kind()) {
    case Index::Kind::Int:
      return a.as_int() <=> b.as_int();
    case Index::Kind::Str:
      return a.as_string().compare(b.as_string()) <=> 0;
    case Index::Kind::Pair: {
      auto c = a.first() <=> b.first();
      if (c != 0) return c;
      return a.second() <=> b.second();
    }
    case Index::Kind::Path: {
      const auto& x = a.steps();
      const auto& y = b.steps();
      return std::lexicographical_compare_three_way(x.begin(), x.end(),
                                                    y.begin(), y.end());
    }
  }
  return std::strong_ordering::equal;
}

std::string Index::to_string() const {
  switch (kind()) {
    case Kind::Int:
      return std::to_string(as_int());
    case Kind::Str:
      return "\"" + as_string() + "\"";
    case Kind::Pair:
      return "(" + first().to_string() + ", " + second().to_string() + ")";
    case Kind::Path: {
      std::ostringstream os;
      os << "/";
      bool first_step = true;
      for (const auto& s : steps()) {
        if (!first_step) os << "/";
        first_step = false;
        if (s.is_ordinal()) {
          os << s.ordinal();
        } else {
          os << s.field();
        }
      }
      return os.str();
    }
  }
  return "?";
}

}  // namespace deco
