#pragma once

#include <json.hpp>

#include "deco/type.hpp"
#include "deco/value.hpp"

namespace deco {

using Json = nlohmann::json;

Json value_to_json(const Type& ty, const Value& v);
Value value_from_json(const Type& ty, const Json& j);
Json change_to_json(const Type& ty, const Change& d);
Change change_from_json(const Type& ty, const Json& j);
Json index_to_json(const Index& i);
Index index_from_json(const Json& j);
/// Untyped rendering used for cache dumps.
Json value_debug_json(const Value& v);

}  // namespace deco
