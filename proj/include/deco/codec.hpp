#pragma once

#include <string>
#include <string_view>

#include "deco/type.hpp"
#include "deco/value.hpp"

namespace deco {

// Textual interchange format (JSON):
//   scalar      number | string | true | false | null
//   mapping     [[index, payload], ...]   ascending by index
//   pair        [first, second]
//   injection   {"inl": v} | {"inr": v}
//   sum change  {"cl": d} | {"cr": d} | {"sl": v} | {"sr": v} | "null"
//   json-base change  {} (keep) | {"set": v}
//   index       integer | string | [a, b] | {"path": [step, ...]}
// Parsing canonicalizes: entries equal to the default or nil are dropped.

std::string value_to_text(const Type& ty, const Value& v);
Value value_from_text(const Type& ty, std::string_view text);
std::string change_to_text(const Type& ty, const Change& d);
Change change_from_text(const Type& ty, std::string_view text);
std::string index_to_text(const Index& i);
Index index_from_text(std::string_view text);

}  // namespace deco
