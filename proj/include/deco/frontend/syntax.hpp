#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "deco/json_codec.hpp"

namespace deco {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
  std::string to_string() const {
    return std::to_string(line) + ":" + std::to_string(column);
  }
};

/// Function position of an application: a registered name, map F,
/// map2 F, or replicate with an optional array extent.
struct FunExpr {
  enum class Kind { Name, Map, Map2, Replicate };
  Kind kind = Kind::Name;
  std::string name;
  std::optional<std::int64_t> extent;
  std::shared_ptr<const FunExpr> inner;
  SourcePos pos;

  std::string to_string() const;
};

/// Surface expression. After resolve(), variables carry their position in
/// the context (0 = innermost binder).
struct Expr {
  enum class Kind { Var, Let, App, Tuple, Literal };
  Kind kind = Kind::Var;
  /// Variable or let-bound name.
  std::string name;
  std::optional<std::size_t> ordinal;
  FunExpr fn;
  /// Let: bound expression, body. App: argument. Tuple: elements.
  std::vector<Expr> kids;
  Json literal;
  SourcePos pos;

  std::string to_string() const;
};

struct Param {
  std::string name;
  std::string type_text;
  SourcePos pos;
};

/// `bundle NAME (x : T, ...)` followed by a body expression.
struct ParsedProgram {
  std::string bundle;
  std::vector<Param> params;
  Expr body;
};

/// Grammar:
///   program ::= "bundle" IDENT "(" param ("," param)* ")" expr
///   param   ::= IDENT ":" TYPE
///   expr    ::= "let" IDENT "=" expr ";" expr | fun "#" expr | atom
///   atom    ::= IDENT | NUMBER | STRING | "null" | "true" | "false"
///             | "(" expr ("," expr)* ")" | "[" expr ("," expr)* "]"
///   fun     ::= "map" fun | "map2" fun | "replicate" ("<" NAT ">")?
///             | IDENT | "(" fun ")"
/// `#` associates to the right; tuples nest to the right; `//` starts a
/// comment. Throws ParseError.
ParsedProgram parse_program(std::string_view text);
Expr parse_expr(std::string_view text);

}  // namespace deco
