#include "deco/cache.hpp"

#include "deco/errors.hpp"

namespace deco {

Cache Cache::pair(Cache a, Cache b) {
  Cache c;
  c.kind_ = Kind::Pair;
  c.kids_ = {std::move(a), std::move(b)};
  return c;
}

Cache Cache::indexed(Entries entries, Cache fallback) {
  Cache c;
  c.kind_ = Kind::Indexed;
  c.kids_ = {std::move(fallback)};
  c.entries_ = std::make_shared<Entries>(std::move(entries));
  return c;
}

Cache Cache::input(Value x) {
  Cache c;
  c.kind_ = Kind::Input;
  c.a_ = std::move(x);
  return c;
}

Cache Cache::input_output(Value x, Value y) {
  Cache c;
  c.kind_ = Kind::InputOutput;
  c.a_ = std::move(x);
  c.b_ = std::move(y);
  return c;
}

Cache Cache::fuse(Value s) {
  Cache c;
  c.kind_ = Kind::Fuse;
  c.a_ = std::move(s);
  return c;
}

Cache Cache::distr(Value p) {
  Cache c;
  c.kind_ = Kind::Distr;
  c.a_ = std::move(p);
  return c;
}

Cache Cache::case_of(bool left, Cache branch, Value y) {
  Cache c;
  c.kind_ = Kind::Case;
  c.left_ = left;
  c.kids_ = {std::move(branch)};
  c.a_ = std::move(y);
  return c;
}

Cache Cache::opaque(Value payload) {
  Cache c;
  c.kind_ = Kind::Opaque;
  c.a_ = std::move(payload);
  return c;
}

const Cache::Entries& Cache::entries() const {
  if (kind_ != Kind::Indexed) throw UsageError("cache is not indexed");
  return *entries_;
}

Cache::Entries& Cache::entries() {
  if (kind_ != Kind::Indexed) throw UsageError("cache is not indexed");
  if (entries_.use_count() > 1) entries_ = std::make_shared<Entries>(*entries_);
  return *entries_;
}

Json cache_to_json(const Cache& c) {
  switch (c.kind()) {
    case Cache::Kind::Unit:
      return "unit";
    case Cache::Kind::Pair:
      return Json{{"pair", {cache_to_json(c.first()), cache_to_json(c.second())}}};
    case Cache::Kind::Indexed: {
      Json entries = Json::array();
      for (const auto& k : sorted_keys(c.entries())) {
        entries.push_back(
            Json::array({index_to_json(k), cache_to_json(c.entries().at(k))}));
      }
      return Json{{"indexed",
                   {{"entries", entries},
                    {"fallback", cache_to_json(c.fallback())}}}};
    }
    case Cache::Kind::Input:
      return Json{{"input", value_debug_json(c.value())}};
    case Cache::Kind::InputOutput:
      return Json{{"input_output",
                   {value_debug_json(c.value()), value_debug_json(c.output())}}};
    case Cache::Kind::Fuse:
      return Json{{"fuse", value_debug_json(c.value())}};
    case Cache::Kind::Distr:
      return Json{{"distr", value_debug_json(c.value())}};
    case Cache::Kind::Case:
      return Json{{"case",
                   {{"side", c.left() ? "left" : "right"},
                    {"cache", cache_to_json(c.branch())},
                    {"output", value_debug_json(c.value())}}}};
    case Cache::Kind::Opaque:
      return Json{{"opaque", value_debug_json(c.value())}};
  }
  return nullptr;
}

std::size_t cache_payload_count(const Cache& c) {
  switch (c.kind()) {
    case Cache::Kind::Unit:
      return 0;
    case Cache::Kind::Pair:
      return cache_payload_count(c.first()) + cache_payload_count(c.second());
    case Cache::Kind::Indexed: {
      std::size_t n = cache_payload_count(c.fallback());
      for (const auto& [k, e] : c.entries()) n += cache_payload_count(e);
      return n;
    }
    case Cache::Kind::Case:
      return 1 + cache_payload_count(c.branch());
    default:
      return 1;
  }
}

}  // namespace deco
