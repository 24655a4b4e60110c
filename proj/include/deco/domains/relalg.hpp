#pragma once

#include "deco/registry.hpp"

namespace deco {

/// Z-sets: relations as maps from tuples to integer multiplicities, plus
/// dictionaries keyed by a schema. Ops intmul, intsub, cross, count,
/// groupBy_fst, groupBy_snd; predicates key_eq, even_key; programs join,
/// selection, union, difference, intersection, proj.
RegistryPtr register_relalg();

/// rel<schema> int, e.g. relation_type(reg, "(int,str)")
Type relation_type(const Registry& reg, const std::string& schema);

/// First component of a pair index, the index itself otherwise.
const Index& tuple_key(const Index& i);

}  // namespace deco
