#pragma once

#include <vector>

#include "deco/registry.hpp"

namespace deco {

/// Grow-only counter over ℕ, one entry per participant (container "gc").
/// Ops max, natsum; programs value, incNat, merge and inc_<i> per
/// participant. Throws RegistryError for an empty participant set.
RegistryPtr register_gcounter(std::vector<Index> participants = {
                                  Index(0), Index(1), Index(2)});

/// ⟨get i ; incNat, id⟩ ; set i
Term gcounter_inc(const Index& i);
/// ⟨id, cst 1⟩ ; +
Term gcounter_inc_nat(const Registry& reg);

}  // namespace deco
