#pragma once

#include "deco/registry.hpp"
#include "deco/term.hpp"
#include "deco/type.hpp"

namespace deco {

/// Checks `t` at input type `in` and returns a copy in which every node is
/// annotated with its input/output type and its registry references are
/// resolved. Throws TypeError on any rule violation and FiniteSupportError
/// when map over an infinite shape would not preserve finite support.
Term typecheck(const Registry& reg, const Term& t, const Type& in);

}  // namespace deco
