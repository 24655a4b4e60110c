#pragma once

#include <string>
#include <vector>

#include "deco/base.hpp"
#include "deco/type.hpp"
#include "deco/value.hpp"

namespace deco {

/// Container default ε lifted to every type. The default of a sum is ι₁ ε.
Value epsilon(const Type& ty);
bool is_default(const Type& ty, const Value& v);

/// Canonical structural nil: base nil, empty mapping, pairwise, null.
Change nil_change(const Type& ty);
/// Equal to the canonical nil; cl(0) over a sum is not.
bool is_nil(const Type& ty, const Change& d);

/// v ⊕ d
Value apply_change(const Type& ty, const Value& v, const Change& d);
/// v ⊕= d, copying only shared nodes.
void apply_in_place(const Type& ty, Value& v, const Change& d);
/// y ⊖ x
Change diff_values(const Type& ty, const Value& y, const Value& x);

bool values_equal(const Type& ty, const Value& a, const Value& b,
                  const Tolerance& tol = {});
bool changes_equal(const Type& ty, const Change& a, const Change& b,
                   const Tolerance& tol = {});

/// Structure, key validity and canonical sparse form.
bool conforms(const Type& ty, const Value& v);
bool change_conforms(const Type& ty, const Change& d);
/// Throws ConformanceError naming the first offending position.
void require_conforms(const Type& ty, const Value& v);
void require_change_conforms(const Type& ty, const Change& d);

/// Stored (non-default) keys of a mapping value, ascending.
std::vector<Index> support(const Value& v);

/// Reinterpretations for types whose values and changes coincide.
Change to_change(const Type& ty, const Value& v);
Value to_value(const Type& ty, const Change& d);

/// a ⊕ b on changes of an additive type.
Change add_changes(const Type& ty, const Change& a, const Change& b);
void add_in_place(const Type& ty, Change& a, const Change& b);

}  // namespace deco
