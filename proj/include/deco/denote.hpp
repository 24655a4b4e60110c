#pragma once

#include "deco/term.hpp"
#include "deco/value.hpp"

namespace deco {

/// Batch semantics of a checked term. Absent map keys read as ε; results
/// are in canonical sparse form.
Value denote(const Term& t, const Value& v);

}  // namespace deco
