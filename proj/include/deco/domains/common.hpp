#pragma once

#include <functional>
#include <string>
#include <vector>

#include "deco/machine.hpp"
#include "deco/registry.hpp"

namespace deco {

/// How a registered operation is incrementalized.
enum class Comb { Triv, Triv2, Self, Lin, BiLin };

using Signature = std::function<std::optional<Type>(const Type&)>;
using Eval = std::function<Value(const Type&, const Type&, const Value&)>;

using Derive = std::function<Change(const Type&, const Type&, const Change&)>;

/// An operation whose machine is built by `comb` from `eval`. Self reuses
/// `eval` on changes unless `derive` is given, so it is only offered for
/// additive types.
OpDef make_op(std::string name, Signature sig, Eval eval, Comb comb,
              std::vector<Type> samples, Derive derive = nullptr);

/// Signature accepting exactly one input type.
Signature exactly(Type in, Type out);

}  // namespace deco
