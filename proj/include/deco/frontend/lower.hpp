#pragma once

#include <string>
#include <vector>

#include "deco/frontend/syntax.hpp"
#include "deco/registry.hpp"
#include "deco/term.hpp"

namespace deco {

/// Replaces variable names by their context position. `context` lists the
/// parameters in declaration order; let binders are pushed in front.
/// Throws TypeError naming the first unbound variable.
Expr resolve(const Expr& e, const std::vector<std::string>& context);

/// Point-free translation of a resolved expression over the right-nested
/// context product of `context`. Returns a checked term.
Term lower(const Registry& reg, const Expr& resolved,
           const std::vector<Type>& context);

/// Right-nested product of the context types (the type itself for one).
Type context_type(const std::vector<Type>& context);

struct CompiledProgram {
  std::vector<std::string> names;
  std::vector<Type> types;
  Type input;
  Term term;
};

CompiledProgram compile_program(const Registry& reg, const ParsedProgram& p);

/// Environment-passing interpreter of the named syntax; function heads are
/// built with the same resolution rules as lower() and run with denote().
Value reference_eval(const Registry& reg, const Expr& e,
                     const std::vector<std::string>& names,
                     const std::vector<Type>& types,
                     const std::vector<Value>& values);

/// Packs parameter values into the context product.
Value context_value(const std::vector<Value>& values);

}  // namespace deco
