#pragma once

#include <string_view>

#include "deco/registry.hpp"
#include "deco/term.hpp"

namespace deco {

/// Reads the parenthesized form produced by Term::to_string():
///
///   term  ::= atom | "(" head args ")"
///   atom  ::= id | dup | fst | snd | plus | zip | tp | fuse | distr
///   (seq t t) (par t t) (case t t) (map t)
///   (cst "TYPE" "JSON") (inl "TYPE") (inr "TYPE")
///   (get IDX) (set IDX)         IDX is an integer or a quoted JSON index
///   (reshape NAME) (filter NAME) (op NAME)
///   (replicate "SHAPE")
///
/// Types and shapes are resolved in `reg`. Throws ParseError.
Term parse_term(const Registry& reg, std::string_view text);

}  // namespace deco
