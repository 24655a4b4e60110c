#include "deco/frontend/lower.hpp"

#include <algorithm>

#include "deco/denote.hpp"
#include "deco/errors.hpp"
#include "deco/fault.hpp"
#include "deco/typecheck.hpp"

namespace deco {
namespace {

[[noreturn]] void type_error(const SourcePos& pos, const std::string& msg) {
  throw TypeError(pos.to_string() + ": " + msg);
}

Term core_name(const std::string& name) {
  if (name == "id") return Term::id();
  if (name == "dup") return Term::dup();
  if (name == "fst") return Term::fst();
  if (name == "snd") return Term::snd();
  if (name == "plus") return Term::plus();
  if (name == "zip") return Term::zip();
  if (name == "tp") return Term::tp();
  if (name == "fuse") return Term::fuse();
  if (name == "distr") return Term::distr();
  return {};
}

Term checked(const Registry& reg, const Term& t, const Type& in,
             const SourcePos& pos) {
  try {
    return typecheck(reg, t, in);
  } catch (const TypeError& e) {
    type_error(pos, e.what());
  }
}

/// Unchecked term for a function head applied at `arg`.
Term head_term(const Registry& reg, const FunExpr& f, const Type& arg,
               const std::optional<Shape>& hint) {
  switch (f.kind) {
    case FunExpr::Kind::Name: {
      if (Term t = core_name(f.name); t.valid()) return t;
      if (reg.has_op(f.name)) return Term::op(f.name);
      if (reg.has_program(f.name)) {
        try {
          return reg.program(f.name)->build(arg);
        } catch (const TypeError& e) {
          type_error(f.pos, e.what());
        }
      }
      type_error(f.pos, "unknown function '" + f.name + "'");
    }
    case FunExpr::Kind::Map:
      if (!arg.is_container()) {
        type_error(f.pos, "map expects a container, got " + arg.to_string());
      }
      return Term::map(head_term(reg, *f.inner, arg.elem(), std::nullopt));
    case FunExpr::Kind::Map2:
      if (!arg.is_product() || !arg.left().is_container() ||
          !arg.right().is_container()) {
        type_error(f.pos,
                   "map2 expects a pair of containers, got " + arg.to_string());
      }
      return Term::map2(head_term(
          reg, *f.inner,
          Type::product(arg.left().elem(), arg.right().elem()), std::nullopt));
    case FunExpr::Kind::Replicate:
      if (f.extent) {
        return Term::replicate(
            Shape(reg.container("array"), ShapeArg::nat(*f.extent)));
      }
      if (!hint) {
        type_error(f.pos,
                   "replicate needs an extent or a container sibling in the "
                   "enclosing tuple");
      }
      return Term::replicate(*hint);
  }
  type_error(f.pos, "bad function expression");
}

Term head(const Registry& reg, const FunExpr& f, const Type& arg,
          const std::optional<Shape>& hint) {
  return checked(reg, head_term(reg, f, arg, hint), arg, f.pos);
}

bool needs_hint(const Expr& e) {
  return e.kind == Expr::Kind::App &&
         e.fn.kind == FunExpr::Kind::Replicate && !e.fn.extent;
}

Value literal_value(const Registry& reg, const Expr& e, Type& ty) {
  ty = Type::base(reg.literal_base());
  try {
    return value_from_json(ty, e.literal);
  } catch (const ConformanceError& err) {
    type_error(e.pos, err.what());
  }
}

Term projection(std::size_t j, std::size_t k) {
  if (k == 1) return Term::id();
  std::vector<Term> steps(j, Term::snd());
  if (j + 1 < k) steps.push_back(Term::fst());
  return Term::chain(std::move(steps));
}

Term right_tuple(const std::vector<Term>& ts, std::size_t from) {
  if (from + 1 == ts.size()) return ts[from];
  return Term::fork(ts[from], right_tuple(ts, from + 1));
}

class Lowerer {
 public:
  explicit Lowerer(const Registry& reg) : reg_(reg) {}

  Term lower(const Expr& e, const std::vector<Type>& ctx,
             const std::optional<Shape>& hint) {
    Type in = context_type(ctx);
    switch (e.kind) {
      case Expr::Kind::Var: {
        if (!e.ordinal) type_error(e.pos, "unresolved variable '" + e.name + "'");
        if (*e.ordinal >= ctx.size()) {
          type_error(e.pos, "variable index out of range");
        }
        return checked(reg_, projection(*e.ordinal, ctx.size()), in, e.pos);
      }
      case Expr::Kind::Literal: {
        Type ty;
        Value v = literal_value(reg_, e, ty);
        return checked(reg_, Term::cst(ty, v), in, e.pos);
      }
      case Expr::Kind::Let: {
        Term t1 = lower(e.kids[0], ctx, std::nullopt);
        std::vector<Type> inner = ctx;
        inner.insert(inner.begin(), t1.output());
        Term t2 = lower(e.kids[1], inner, hint);
        return checked(
            reg_, Term::chain({Term::dup(), Term::par(t1, Term::id()), t2}), in,
            e.pos);
      }
      case Expr::Kind::App: {
        Term arg = lower(e.kids[0], ctx, std::nullopt);
        Term f = head(reg_, e.fn, arg.output(), hint);
        return checked(reg_, Term::seq(arg, f), in, e.pos);
      }
      case Expr::Kind::Tuple: {
        std::vector<Term> ts(e.kids.size());
        std::optional<Shape> sibling;
        for (std::size_t k = 0; k < e.kids.size(); ++k) {
          if (needs_hint(e.kids[k])) continue;
          ts[k] = lower(e.kids[k], ctx, std::nullopt);
          if (!sibling && ts[k].output().is_container()) {
            sibling = ts[k].output().shape();
          }
        }
        for (std::size_t k = 0; k < e.kids.size(); ++k) {
          if (needs_hint(e.kids[k])) ts[k] = lower(e.kids[k], ctx, sibling);
        }
        return checked(reg_, right_tuple(ts, 0), in, e.pos);
      }
    }
    type_error(e.pos, "bad expression");
  }

 private:
  const Registry& reg_;
};

void resolve_into(Expr& e, std::vector<std::string>& ctx) {
  switch (e.kind) {
    case Expr::Kind::Var: {
      auto it = std::find(ctx.begin(), ctx.end(), e.name);
      if (it == ctx.end()) {
        type_error(e.pos, "unbound variable '" + e.name + "'");
      }
      std::size_t j = static_cast<std::size_t>(it - ctx.begin());
      if (fault_active(Fault::DeBruijn)) j = (j + 1) % ctx.size();
      e.ordinal = j;
      return;
    }
    case Expr::Kind::Let:
      resolve_into(e.kids[0], ctx);
      ctx.insert(ctx.begin(), e.name);
      resolve_into(e.kids[1], ctx);
      ctx.erase(ctx.begin());
      return;
    default:
      for (auto& k : e.kids) resolve_into(k, ctx);
  }
}

struct Binding {
  std::string name;
  Type type;
  Value value;
};

class Interpreter {
 public:
  explicit Interpreter(const Registry& reg) : reg_(reg) {}

  std::pair<Type, Value> eval(const Expr& e, std::vector<Binding>& env,
                              const std::optional<Shape>& hint) {
    switch (e.kind) {
      case Expr::Kind::Var:
        for (const auto& b : env) {
          if (b.name == e.name) return {b.type, b.value};
        }
        type_error(e.pos, "unbound variable '" + e.name + "'");
      case Expr::Kind::Literal: {
        Type ty;
        Value v = literal_value(reg_, e, ty);
        return {ty, v};
      }
      case Expr::Kind::Let: {
        auto [ty, v] = eval(e.kids[0], env, std::nullopt);
        env.insert(env.begin(), Binding{e.name, ty, v});
        auto out = eval(e.kids[1], env, hint);
        env.erase(env.begin());
        return out;
      }
      case Expr::Kind::App: {
        auto [ty, v] = eval(e.kids[0], env, std::nullopt);
        Term f = head(reg_, e.fn, ty, hint);
        return {f.output(), denote(f, v)};
      }
      case Expr::Kind::Tuple: {
        std::vector<std::pair<Type, Value>> parts(e.kids.size());
        std::optional<Shape> sibling;
        for (std::size_t k = 0; k < e.kids.size(); ++k) {
          if (needs_hint(e.kids[k])) continue;
          parts[k] = eval(e.kids[k], env, std::nullopt);
          if (!sibling && parts[k].first.is_container()) {
            sibling = parts[k].first.shape();
          }
        }
        for (std::size_t k = 0; k < e.kids.size(); ++k) {
          if (needs_hint(e.kids[k])) parts[k] = eval(e.kids[k], env, sibling);
        }
        auto acc = parts.back();
        for (std::size_t k = parts.size() - 1; k-- > 0;) {
          acc = {Type::product(parts[k].first, acc.first),
                 Value::pair(parts[k].second, acc.second)};
        }
        return acc;
      }
    }
    type_error(e.pos, "bad expression");
  }

 private:
  const Registry& reg_;
};

}  // namespace

Expr resolve(const Expr& e, const std::vector<std::string>& context) {
  Expr out = e;
  std::vector<std::string> ctx = context;
  resolve_into(out, ctx);
  return out;
}

Type context_type(const std::vector<Type>& context) {
  if (context.empty()) throw UsageError("empty variable context");
  Type acc = context.back();
  for (std::size_t k = context.size() - 1; k-- > 0;) {
    acc = Type::product(context[k], acc);
  }
  return acc;
}

Value context_value(const std::vector<Value>& values) {
  if (values.empty()) throw UsageError("empty variable context");
  Value acc = values.back();
  for (std::size_t k = values.size() - 1; k-- > 0;) {
    acc = Value::pair(values[k], acc);
  }
  return acc;
}

Term lower(const Registry& reg, const Expr& resolved,
           const std::vector<Type>& context) {
  return Lowerer(reg).lower(resolved, context, std::nullopt);
}

CompiledProgram compile_program(const Registry& reg, const ParsedProgram& p) {
  CompiledProgram c;
  if (p.params.empty()) {
    throw TypeError("program declares no parameters");
  }
  for (const auto& prm : p.params) {
    if (std::find(c.names.begin(), c.names.end(), prm.name) != c.names.end()) {
      type_error(prm.pos, "duplicate parameter '" + prm.name + "'");
    }
    c.names.push_back(prm.name);
    try {
      c.types.push_back(reg.parse_type(prm.type_text));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), prm.pos.line, prm.pos.column);
    } catch (const TypeError& e) {
      type_error(prm.pos, e.what());
    }
  }
  c.input = context_type(c.types);
  c.term = lower(reg, resolve(p.body, c.names), c.types);
  return c;
}

Value reference_eval(const Registry& reg, const Expr& e,
                     const std::vector<std::string>& names,
                     const std::vector<Type>& types,
                     const std::vector<Value>& values) {
  if (names.size() != types.size() || names.size() != values.size()) {
    throw UsageError("context names, types and values differ in length");
  }
  std::vector<Binding> env;
  for (std::size_t k = 0; k < names.size(); ++k) {
    env.push_back(Binding{names[k], types[k], values[k]});
  }
  return Interpreter(reg).eval(e, env, std::nullopt).second;
}

}  // namespace deco
