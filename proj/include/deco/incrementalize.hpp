#pragma once

#include <utility>
#include <vector>

#include "deco/machine.hpp"
#include "deco/term.hpp"

namespace deco {

/// Cached incrementalization of a checked term, by structural recursion.
MachinePtr incrementalize(const Term& t);

/// The change semantics of a Self◇ constructor (its own derivative).
Change derive_self(const Term& t, const Change& dx);

/// Changes are applied back to front: the last element first.
std::pair<Value, Cache> iter(const Machine& m, const Value& x,
                             const std::vector<Change>& ds);
Value sum_changes(const Type& ty, const Value& x,
                  const std::vector<Change>& ds);

}  // namespace deco
