#include "deco/oracle/gen.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "deco/algebra.hpp"
#include "deco/denote.hpp"
#include "deco/typecheck.hpp"

namespace deco {

Tolerance GenConfig::tolerance_for(const Type& ty) const {
  double r = 0;
  for (const auto& [tag, rel] : tolerance) {
    if (ty.mentions(tag)) r = std::max(r, rel);
  }
  return Tolerance::rel(r);
}

Tolerance GenConfig::cache_tolerance() const {
  double r = 0;
  for (const auto& [tag, rel] : tolerance) r = std::max(r, rel);
  return Tolerance::rel(r);
}

Generator::Generator(RegistryPtr reg, GenConfig cfg)
    : reg_(std::move(reg)), cfg_(std::move(cfg)), rng_(cfg_.seed) {
  std::vector<std::string> tags =
      cfg_.bases.empty() ? reg_->base_tags() : cfg_.bases;
  for (const auto& t : tags) bases_.push_back(reg_->base(t));
  if (bases_.empty()) throw GenerationError("registry has no base types");
  if (cfg_.max_extent < 1) throw GenerationError("max_extent must be >= 1");
}

std::size_t Generator::below(std::size_t n) {
  if (n == 0) throw GenerationError("empty choice");
  return static_cast<std::size_t>(rng_() % n);
}

std::int64_t Generator::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(
                  below(static_cast<std::size_t>(hi - lo + 1)));
}

bool Generator::chance(double p) {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p;
}

Type Generator::gen_base_type() {
  return Type::base(bases_[below(bases_.size())]);
}

Shape Generator::gen_finite_shape() {
  std::vector<ContainerPtr> finite;
  for (const auto& id : reg_->container_ids()) {
    ContainerPtr c = reg_->container(id);
    if (id == "array" || (c->valid_shape(ShapeArg::unit()) &&
                          c->finite(ShapeArg::unit()))) {
      finite.push_back(c);
    }
  }
  if (finite.empty()) throw GenerationError("registry has no finite container");
  ContainerPtr c = finite[below(finite.size())];
  if (c->id() == "array") {
    return Shape(c, ShapeArg::nat(between(1, cfg_.max_extent)));
  }
  return Shape(c, ShapeArg::unit());
}

Shape Generator::gen_shape() {
  std::vector<std::string> ids = reg_->container_ids();
  const std::string& id = ids[below(ids.size())];
  ContainerPtr c = reg_->container(id);
  if (id == "array") return Shape(c, ShapeArg::nat(between(1, cfg_.max_extent)));
  if (c->valid_shape(ShapeArg::unit())) return Shape(c, ShapeArg::unit());
  static const std::array<const char*, 3> atoms{"int", "int", "str"};
  ShapeArg a = ShapeArg::atom(atoms[below(atoms.size())]);
  if (chance(0.4)) a = ShapeArg::pair(a, ShapeArg::atom(atoms[below(2)]));
  if (!c->valid_shape(a)) {
    throw GenerationError("cannot choose a shape for container " + id);
  }
  return Shape(c, a);
}

Type Generator::gen_type(std::size_t depth) {
  if (depth == 0) return gen_base_type();
  double u = static_cast<double>(below(100)) / 100.0;
  if (u < 0.4) return gen_base_type();
  if (u < 0.7) return Type::container(gen_shape(), gen_type(depth - 1));
  if (u < 0.9) return Type::product(gen_type(depth - 1), gen_type(depth - 1));
  return Type::sum(gen_type(depth - 1), gen_type(depth - 1));
}

Type Generator::gen_additive_type(std::size_t depth) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Type t = gen_type(depth);
    if (t.additive()) return t;
  }
  for (const auto& b : bases_) {
    Type t = Type::base(b);
    if (t.additive()) return t;
  }
  throw GenerationError("registry has no additive base type");
}

Index Generator::gen_schema_index(const ShapeArg& a) {
  switch (a.kind()) {
    case ShapeArg::Kind::Pair:
      return Index::pair(gen_schema_index(a.first()),
                         gen_schema_index(a.second()));
    case ShapeArg::Kind::Atom:
      if (a.atom_name() == "int") return Index(between(0, cfg_.max_extent));
      if (a.atom_name() == "str") {
        return Index::string(std::string(1, static_cast<char>(
                                                'a' + below(3))));
      }
      break;
    default:
      break;
  }
  Path p;
  std::size_t n = 1 + below(2);
  for (std::size_t k = 0; k < n; ++k) p.emplace_back(between(0, 1));
  return Index::path(std::move(p));
}

Index Generator::gen_index(const Shape& s) {
  if (s.finite()) {
    const auto& ps = s.positions();
    if (ps.empty()) throw GenerationError("shape " + s.to_string() + " is empty");
    return ps[below(ps.size())];
  }
  Index i = gen_schema_index(s.arg());
  if (!s.valid_index(i)) {
    throw GenerationError("cannot sample a position of " + s.to_string());
  }
  return i;
}

namespace {

Scalar random_scalar(Generator& g, const std::string& tag, bool as_change) {
  if (tag == "real") {
    if (g.chance(0.15)) return Scalar::real(0.0);
    double v = static_cast<double>(g.between(-4000, 4000)) / 1000.0 +
               static_cast<double>(g.below(1000)) * 1e-7;
    return Scalar::real(v);
  }
  if (tag == "int") return Scalar::integer(g.between(-5, 5));
  if (tag == "nat") {
    return Scalar::natural(static_cast<std::uint64_t>(g.between(0, 6)));
  }
  if (tag == "json") {
    if (as_change && g.chance(0.4)) return Scalar::keep();
    switch (g.below(5)) {
      case 0: return Scalar::null();
      case 1: return Scalar::boolean(g.chance(0.5));
      case 2: return Scalar::real(static_cast<double>(g.between(1985, 1999)));
      case 3: return Scalar::string("Addison-Wesley");
      default: return Scalar::string(std::string(1, static_cast<char>('p' + g.below(4))));
    }
  }
  throw GenerationError("no generator for base '" + tag + "'");
}

}  // namespace

Value Generator::gen_value(const Type& ty) {
  switch (ty.kind()) {
    case Type::Kind::Base:
      return Value(random_scalar(*this, ty.base().tag(), false));
    case Type::Kind::Container: {
      Value::Map m;
      const Shape& s = ty.shape();
      auto put = [&](const Index& i) {
        Value v = gen_value(ty.elem());
        if (!is_default(ty.elem(), v)) m.insert_or_assign(i, std::move(v));
      };
      if (s.finite()) {
        for (const auto& i : s.positions()) {
          if (chance(0.7)) put(i);
        }
      } else {
        std::size_t n = below(static_cast<std::size_t>(cfg_.max_extent) + 1);
        for (std::size_t k = 0; k < n; ++k) put(gen_index(s));
      }
      return Value::map(std::move(m));
    }
    case Type::Kind::Product: {
      Value a = gen_value(ty.left());
      return Value::pair(std::move(a), gen_value(ty.right()));
    }
    case Type::Kind::Sum:
      if (chance(0.5)) return Value::left(gen_value(ty.left()));
      return Value::right(gen_value(ty.right()));
  }
  throw GenerationError("unknown type kind");
}

Change Generator::gen_change(const Type& ty, const Value& x) {
  switch (ty.kind()) {
    case Type::Kind::Base:
      if (chance(0.1)) return nil_change(ty);
      return Change(random_scalar(*this, ty.base().tag(), true));
    case Type::Kind::Container: {
      const Shape& s = ty.shape();
      std::vector<Index> touched;
      if (s.finite()) {
        for (const auto& i : s.positions()) {
          if (chance(0.5)) touched.push_back(i);
        }
      } else {
        for (const auto& i : support(x)) {
          if (chance(0.5)) touched.push_back(i);
        }
        std::size_t n = below(3);
        for (std::size_t k = 0; k < n; ++k) touched.push_back(gen_index(s));
      }
      Change::Map m;
      Value eps = epsilon(ty.elem());
      for (const auto& i : touched) {
        if (m.count(i)) continue;
        const Value* xi = x.find(i);
        Change d = gen_change(ty.elem(), xi ? *xi : eps);
        if (!is_nil(ty.elem(), d)) m.emplace(i, std::move(d));
      }
      return Change::map(std::move(m));
    }
    case Type::Kind::Product: {
      Change a = gen_change(ty.left(), x.first());
      return Change::pair(std::move(a), gen_change(ty.right(), x.second()));
    }
    case Type::Kind::Sum:
      switch (ty.mentions("nat") ? (below(4) == 3 ? 3 : 0) : below(4)) {
        case 0:
          return x.is_left() ? Change::cl(gen_change(ty.left(), x.inner()))
                             : Change::cr(gen_change(ty.right(), x.inner()));
        case 1:
          return Change::sl(gen_value(ty.left()));
        case 2:
          return Change::sr(gen_value(ty.right()));
        default:
          return Change::null();
      }
  }
  throw GenerationError("unknown type kind");
}

std::vector<Change> Generator::gen_changes(const Type& ty, const Value& x,
                                           std::size_t n) {
  std::vector<Change> ds;
  Value cur = x;
  for (std::size_t k = 0; k < n; ++k) {
    ds.push_back(gen_change(ty, cur));
    cur = apply_change(ty, cur, ds.back());
  }
  return ds;
}

std::pair<std::size_t, std::size_t> Generator::split(std::size_t budget) {
  std::size_t a = 1 + below(budget - 1);
  return {a, budget - a};
}

std::optional<std::vector<Term>> Generator::reach(const Type& a,
                                                  const Type& b,
                                                  std::size_t steps) {
  if (a == b) return std::vector<Term>{};
  if (steps == 0) return std::nullopt;
  std::vector<std::pair<Term, Type>> next;
  if (a.is_product()) {
    next.emplace_back(Term::fst(), a.left());
    next.emplace_back(Term::snd(), a.right());
  }
  if (a.is_container()) {
    try {
      next.emplace_back(Term::get(gen_index(a.shape())), a.elem());
    } catch (const GenerationError&) {
    }
  }
  if (next.size() == 2 && chance(0.5)) std::swap(next[0], next[1]);
  for (auto& [t, ty] : next) {
    if (auto rest = reach(ty, b, steps - 1)) {
      rest->insert(rest->begin(), t);
      return rest;
    }
  }
  return std::nullopt;
}

Term Generator::leaf(const Type& a, const Type& b, std::size_t size) {
  if (a == b) return Term::id();
  if (auto path = reach(a, b, (size + 1) / 2); path && chance(0.85)) {
    return Term::chain(*path);
  }
  std::vector<Term> cands;
  if (a.is_container() && a.elem() == b) {
    try {
      cands.push_back(Term::get(gen_index(a.shape())));
    } catch (const GenerationError&) {
    }
  }
  if (a.is_product()) {
    if (a.left() == b) cands.push_back(Term::fst());
    if (a.right() == b) cands.push_back(Term::snd());
    if (a.left() == b && a.right() == b && b.additive()) {
      cands.push_back(Term::plus());
    }
  }
  if (b.is_product() && b.left() == a && b.right() == a) {
    cands.push_back(Term::dup());
  }
  if (a.is_sum() && a.left() == b && a.right() == b) {
    cands.push_back(Term::fuse());
  }
  for (const auto& name : reg_->op_names()) {
    auto out = reg_->op(name)->signature(a);
    if (out && *out == b) cands.push_back(Term::op(name));
  }
  if (!cands.empty() && chance(0.8)) return cands[below(cands.size())];
  return Term::cst(b, gen_value(b));
}

std::optional<Term> Generator::op_into(const Type& a, const Type& b,
                                       std::size_t size) {
  if (size < 3) return std::nullopt;
  std::vector<std::pair<std::string, Type>> cands;
  std::vector<Type> guesses{b, Type::product(b, b)};
  try {
    guesses.push_back(Type::container(gen_shape(), b));
  } catch (const Error&) {
  }
  if (b.is_container() && b.shape().arg().kind() == ShapeArg::Kind::Pair) {
    const Shape& s = b.shape();
    guesses.push_back(Type::product(
        Type::container(Shape(s.def_ptr(), s.arg().first()), b.elem()),
        Type::container(Shape(s.def_ptr(), s.arg().second()), b.elem())));
  }
  for (const auto& name : reg_->op_names()) {
    auto def = reg_->op(name);
    std::vector<Type> ins = def->samples;
    ins.insert(ins.end(), guesses.begin(), guesses.end());
    for (const auto& c : ins) {
      auto out = def->signature(c);
      if (out && *out == b) cands.emplace_back(name, c);
    }
  }
  if (cands.empty()) return std::nullopt;
  auto [name, c] = cands[below(cands.size())];
  return Term::seq(raw(a, c, size - 2), Term::op(name));
}

std::optional<Term> Generator::reshape_into(const Type& a, const Type& b,
                                            std::size_t size) {
  if (size < 3 || !b.is_container()) return std::nullopt;
  std::vector<std::pair<std::string, Shape>> cands;
  std::vector<Shape> sources{b.shape()};
  if (b.shape().def().id() == "array") {
    for (std::int64_t n = 0; n <= cfg_.max_extent + 1; ++n) {
      sources.emplace_back(b.shape().def_ptr(), ShapeArg::nat(n));
    }
  }
  for (const auto& name : reg_->index_fn_names()) {
    auto fn = reg_->index_fn(name);
    for (const auto& s : sources) {
      auto out = fn->out_shape(s);
      if (out && *out == b.shape()) cands.emplace_back(name, s);
    }
  }
  if (cands.empty()) return std::nullopt;
  auto [name, s] = cands[below(cands.size())];
  return Term::seq(raw(a, Type::container(s, b.elem()), size - 2),
                   Term::reshape(name));
}

std::optional<Term> Generator::map_fn(const Type& elem, const Type& out,
                                      const Shape& s, std::size_t size) {
  for (int attempt = 0; attempt < 6; ++attempt) {
    Term f = raw(elem, out, size);
    if (s.finite()) return f;
    try {
      Term checked = typecheck(*reg_, f, elem);
      if (is_default(out, denote(checked, epsilon(elem)))) return f;
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

std::optional<Term> Generator::forward_step(const Type& a) {
  std::vector<Term> cands{Term::dup()};
  if (a.is_product()) {
    cands.push_back(Term::fst());
    cands.push_back(Term::snd());
    cands.push_back(Term::zip());
    cands.push_back(Term::distr());
    cands.push_back(Term::plus());
    for (const auto& p : reg_->predicate_names()) cands.push_back(Term::filter(p));
    if (a.right().is_container()) {
      try {
        cands.push_back(Term::set(gen_index(a.right().shape())));
      } catch (const GenerationError&) {
      }
    }
  }
  if (a.is_sum()) cands.push_back(Term::fuse());
  if (a.is_container()) {
    cands.push_back(Term::tp());
    try {
      cands.push_back(Term::get(gen_index(a.shape())));
    } catch (const GenerationError&) {
    }
    for (const auto& f : reg_->index_fn_names()) cands.push_back(Term::reshape(f));
    for (const auto& name : reg_->op_names()) {
      if (reg_->op(name)->signature(a.elem())) {
        cands.push_back(Term::map(Term::op(name)));
      }
    }
  }
  for (const auto& name : reg_->op_names()) {
    if (reg_->op(name)->signature(a)) cands.push_back(Term::op(name));
  }
  try {
    cands.push_back(Term::replicate(gen_finite_shape()));
  } catch (const GenerationError&) {
  }
  cands.push_back(chance(0.5) ? Term::inl(gen_type(1)) : Term::inr(gen_type(1)));
  for (int attempt = 0; attempt < 6; ++attempt) {
    const Term& t = cands[below(cands.size())];
    try {
      return typecheck(*reg_, t, a);
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

Term Generator::self_leaf(const Type& a) {
  std::vector<Term> cands{Term::id(), Term::dup()};
  if (a.is_product()) {
    cands.push_back(Term::fst());
    cands.push_back(Term::snd());
    cands.push_back(Term::zip());
    cands.push_back(Term::plus());
    for (const auto& p : reg_->predicate_names()) cands.push_back(Term::filter(p));
    if (a.right().is_container()) {
      try {
        cands.push_back(Term::set(gen_index(a.right().shape())));
      } catch (const GenerationError&) {
      }
    }
  }
  if (a.is_container()) {
    cands.push_back(Term::tp());
    try {
      cands.push_back(Term::get(gen_index(a.shape())));
    } catch (const GenerationError&) {
    }
    for (const auto& f : reg_->index_fn_names()) cands.push_back(Term::reshape(f));
  }
  try {
    cands.push_back(Term::replicate(gen_finite_shape()));
  } catch (const GenerationError&) {
  }
  cands.push_back(chance(0.5) ? Term::inl(gen_type(1)) : Term::inr(gen_type(1)));
  Type c = gen_type(1);
  cands.push_back(Term::cst(c, gen_value(c)));
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Term& t = cands[below(cands.size())];
    try {
      return typecheck(*reg_, t, a);
    } catch (const Error&) {
    }
  }
  return typecheck(*reg_, Term::id(), a);
}

Term Generator::self_raw(const Type& a, std::size_t size) {
  if (size >= 3 && chance(0.5)) {
    auto [k1, k2] = split(size - 1);
    Term f = self_raw(a, k1);
    Term g = self_raw(f.output(), k2);
    return typecheck(*reg_, Term::seq(f, g), a);
  }
  if (size >= 3 && a.is_product() && chance(0.5)) {
    auto [k1, k2] = split(size - 1);
    return typecheck(
        *reg_, Term::par(self_raw(a.left(), k1), self_raw(a.right(), k2)), a);
  }
  if (size >= 2 && a.is_container() && chance(0.5)) {
    return typecheck(*reg_, Term::map(self_raw(a.elem(), size - 1)), a);
  }
  return self_leaf(a);
}

Term Generator::gen_self_maintainable(const Type& a, std::size_t size) {
  std::string last;
  for (int attempt = 0; attempt < 200; ++attempt) {
    try {
      return self_raw(a, std::max<std::size_t>(size, 1));
    } catch (const Error& e) {
      last = e.what();
    }
  }
  throw GenerationError("no self-maintainable term from " + a.to_string() +
                        ": " + last);
}

enum Rule {
  kForward,
  kProj,
  kSeq,
  kFork,
  kPar,
  kMap,
  kZip,
  kTp,
  kGet,
  kSet,
  kReplicate,
  kFilter,
  kReshape,
  kFuse,
  kDistr,
  kInj,
  kCase,
  kOp,
  kPlus,
  kRuleCount
};

std::optional<Term> Generator::rule(int r, const Type& a, const Type& b,
                                    std::size_t size) {
  switch (r) {
    case kForward: {
      if (size < 3) return std::nullopt;
      auto step = forward_step(a);
      if (!step) return std::nullopt;
      return Term::seq(*step, raw(step->output(), b, size - 1 - step->size()));
    }
    case kProj: {
      if (!a.is_product() || size < 3) return std::nullopt;
      bool left = chance(0.5);
      return Term::seq(left ? Term::fst() : Term::snd(),
                       raw(left ? a.left() : a.right(), b, size - 2));
    }
    case kSeq: {
      if (size < 3) return std::nullopt;
      std::vector<Type> near{a, b};
      if (a.is_product()) near.insert(near.end(), {a.left(), a.right()});
      if (a.is_container()) near.push_back(a.elem());
      Type c = chance(0.5) ? near[below(near.size())] : gen_type(1);
      auto [k1, k2] = split(size - 1);
      return Term::seq(raw(a, c, k1), raw(c, b, k2));
    }
    case kFork: {
      if (!b.is_product() || size < 5) return std::nullopt;
      auto [k1, k2] = split(size - 3);
      return Term::fork(raw(a, b.left(), k1), raw(a, b.right(), k2));
    }
    case kPar: {
      if (!a.is_product() || !b.is_product() || size < 3) return std::nullopt;
      auto [k1, k2] = split(size - 1);
      return Term::par(raw(a.left(), b.left(), k1),
                       raw(a.right(), b.right(), k2));
    }
    case kMap: {
      if (!b.is_container() || size < 2) return std::nullopt;
      if (a.is_container() && a.shape() == b.shape() && chance(0.5)) {
        auto f = map_fn(a.elem(), b.elem(), b.shape(), size - 1);
        if (!f) return std::nullopt;
        return Term::map(*f);
      }
      if (size < 4) return std::nullopt;
      Type c = gen_type(1);
      auto [k1, k2] = split(size - 2);
      auto f = map_fn(c, b.elem(), b.shape(), k2);
      if (!f) return std::nullopt;
      return Term::seq(raw(a, Type::container(b.shape(), c), k1),
                       Term::map(*f));
    }
    case kZip: {
      if (!b.is_container() || !b.elem().is_product() || size < 6) {
        return std::nullopt;
      }
      auto [k1, k2] = split(size - 4);
      return Term::seq(
          Term::fork(raw(a, Type::container(b.shape(), b.elem().left()), k1),
                     raw(a, Type::container(b.shape(), b.elem().right()), k2)),
          Term::zip());
    }
    case kTp: {
      if (!b.is_container() || !b.elem().is_container() || size < 3) {
        return std::nullopt;
      }
      Type src = Type::container(b.elem().shape(),
                                 Type::container(b.shape(), b.elem().elem()));
      return Term::seq(raw(a, src, size - 2), Term::tp());
    }
    case kGet: {
      if (size < 3) return std::nullopt;
      Shape s = gen_shape();
      return Term::seq(raw(a, Type::container(s, b), size - 2),
                       Term::get(gen_index(s)));
    }
    case kSet: {
      if (!b.is_container() || size < 6) return std::nullopt;
      auto [k1, k2] = split(size - 4);
      return Term::seq(Term::fork(raw(a, b.elem(), k1), raw(a, b, k2)),
                       Term::set(gen_index(b.shape())));
    }
    case kReplicate: {
      if (!b.is_container() || !b.shape().finite() || size < 3) {
        return std::nullopt;
      }
      return Term::seq(raw(a, b.elem(), size - 2), Term::replicate(b.shape()));
    }
    case kFilter: {
      auto preds = reg_->predicate_names();
      if (!b.is_container() || preds.empty() || size < 6) return std::nullopt;
      return Term::seq(
          Term::fork(Term::cst(b.elem(), epsilon(b.elem())), raw(a, b, size - 4)),
          Term::filter(preds[below(preds.size())]));
    }
    case kReshape:
      return reshape_into(a, b, size);
    case kFuse:
      if (size < 3) return std::nullopt;
      return Term::seq(raw(a, Type::sum(b, b), size - 2), Term::fuse());
    case kDistr: {
      if (!b.is_sum() || !b.left().is_product() || !b.right().is_product() ||
          !(b.left().left() == b.right().left()) || size < 3) {
        return std::nullopt;
      }
      Type src = Type::product(b.left().left(),
                               Type::sum(b.left().right(), b.right().right()));
      return Term::seq(raw(a, src, size - 2), Term::distr());
    }
    case kInj: {
      if (!b.is_sum() || size < 3) return std::nullopt;
      if (chance(0.5)) {
        return Term::seq(raw(a, b.left(), size - 2), Term::inl(b.right()));
      }
      return Term::seq(raw(a, b.right(), size - 2), Term::inr(b.left()));
    }
    case kCase: {
      if (!a.is_sum() || !b.is_sum() || size < 3) return std::nullopt;
      auto [k1, k2] = split(size - 1);
      return Term::case_of(raw(a.left(), b.left(), k1),
                           raw(a.right(), b.right(), k2));
    }
    case kOp:
      return op_into(a, b, size);
    case kPlus: {
      if (!b.additive() || size < 6) return std::nullopt;
      auto [k1, k2] = split(size - 4);
      return Term::seq(Term::fork(raw(a, b, k1), raw(a, b, k2)), Term::plus());
    }
    default:
      return std::nullopt;
  }
}

Term Generator::raw(const Type& a, const Type& b, std::size_t size) {
  if (size <= 1 || chance(0.05)) return leaf(a, b, size);
  for (int attempt = 0; attempt < 24; ++attempt) {
    int r = chance(0.35) ? kForward : static_cast<int>(below(kRuleCount));
    try {
      if (auto t = rule(r, a, b, size)) return *t;
    } catch (const GenerationError&) {
    }
  }
  return leaf(a, b, size);
}

Term Generator::gen_term(const Type& a, const Type& b, std::size_t size) {
  if (size == 0) throw GenerationError("term size must be positive");
  std::string last;
  for (int attempt = 0; attempt < 200; ++attempt) {
    Term t = raw(a, b, size);
    if (t.size() > size) continue;
    try {
      Term c = typecheck(*reg_, t, a);
      if (c.output() == b) return c;
    } catch (const TypeError& e) {
      last = e.what();
    } catch (const FiniteSupportError& e) {
      last = e.what();
    }
  }
  throw GenerationError("no term " + a.to_string() + " ~> " + b.to_string() +
                        " of size <= " + std::to_string(size) + ": " + last);
}

Term Generator::gen_term(const Type& a, std::size_t size) {
  for (int attempt = 0; attempt < 20; ++attempt) {
    Type b = chance(0.3) ? a : gen_type();
    try {
      return gen_term(a, b, size);
    } catch (const GenerationError&) {
    }
  }
  throw GenerationError("no term from " + a.to_string());
}

Term Generator::rooted_once(Term::Kind k, std::size_t size, Type& in) {
  using K = Term::Kind;
  std::size_t rest = size > 1 ? size - 1 : 1;
  auto two = [&]() { return rest >= 2 ? split(rest) : std::pair<std::size_t, std::size_t>{1, 1}; };
  switch (k) {
    case K::Seq: {
      in = gen_type();
      Type c = gen_type(), b = gen_type();
      auto [k1, k2] = two();
      return Term::seq(raw(in, c, k1), raw(c, b, k2));
    }
    case K::Par: {
      in = Type::product(gen_type(), gen_type());
      auto [k1, k2] = two();
      return Term::par(raw(in.left(), gen_type(), k1),
                       raw(in.right(), gen_type(), k2));
    }
    case K::Id:
      in = gen_type();
      return Term::id();
    case K::Dup:
      in = gen_type();
      return Term::dup();
    case K::Fst:
    case K::Snd:
      in = Type::product(gen_type(), gen_type());
      return k == K::Fst ? Term::fst() : Term::snd();
    case K::Plus: {
      Type b = gen_additive_type(cfg_.max_type_depth);
      in = Type::product(b, b);
      return Term::plus();
    }
    case K::Cst: {
      in = gen_type();
      Type b = gen_type();
      return Term::cst(b, gen_value(b));
    }
    case K::Map: {
      Shape s = gen_shape();
      in = Type::container(s, gen_type(1));
      auto f = map_fn(in.elem(), gen_type(1), s, rest);
      if (!f) throw GenerationError("no default-preserving map body");
      return Term::map(*f);
    }
    case K::Zip: {
      Shape s = gen_shape();
      in = Type::product(Type::container(s, gen_type(1)),
                         Type::container(s, gen_type(1)));
      return Term::zip();
    }
    case K::Get: {
      Shape s = gen_shape();
      in = Type::container(s, gen_type(1));
      return Term::get(gen_index(s));
    }
    case K::Set: {
      Shape s = gen_shape();
      Type e = gen_type(1);
      in = Type::product(e, Type::container(s, e));
      return Term::set(gen_index(s));
    }
    case K::Reshape: {
      auto names = reg_->index_fn_names();
      if (names.empty()) throw GenerationError("registry has no index functions");
      const std::string& name = names[below(names.size())];
      auto fn = reg_->index_fn(name);
      for (int attempt = 0; attempt < 32; ++attempt) {
        Shape s = gen_shape();
        if (fn->out_shape(s)) {
          in = Type::container(s, gen_type(1));
          return Term::reshape(name);
        }
      }
      throw GenerationError("no shape accepted by " + name);
    }
    case K::Replicate:
      in = gen_type();
      return Term::replicate(gen_finite_shape());
    case K::Tp: {
      in = Type::container(gen_shape(), Type::container(gen_shape(), gen_type(1)));
      return Term::tp();
    }
    case K::Filter: {
      auto preds = reg_->predicate_names();
      if (preds.empty()) throw GenerationError("registry has no predicates");
      Shape s = gen_shape();
      Type e = gen_type(1);
      in = Type::product(e, Type::container(s, e));
      return Term::filter(preds[below(preds.size())]);
    }
    case K::Fuse: {
      Type b = gen_type();
      in = Type::sum(b, b);
      return Term::fuse();
    }
    case K::Distr:
      in = Type::product(gen_type(1), Type::sum(gen_type(1), gen_type(1)));
      return Term::distr();
    case K::Inl:
    case K::Inr:
      in = gen_type();
      return k == K::Inl ? Term::inl(gen_type()) : Term::inr(gen_type());
    case K::Case: {
      in = Type::sum(gen_type(), gen_type());
      auto [k1, k2] = two();
      return Term::case_of(raw(in.left(), gen_type(), k1),
                           raw(in.right(), gen_type(), k2));
    }
    case K::Op: {
      auto names = reg_->op_names();
      if (names.empty()) throw GenerationError("registry has no operations");
      auto def = reg_->op(names[below(names.size())]);
      if (def->samples.empty()) {
        throw GenerationError("operation " + def->name + " has no samples");
      }
      in = def->samples[below(def->samples.size())];
      return Term::op(def->name);
    }
  }
  throw GenerationError("unknown constructor");
}

Term Generator::gen_rooted(Term::Kind k, std::size_t size) {
  std::string last;
  for (int attempt = 0; attempt < 200; ++attempt) {
    Type in;
    try {
      Term t = rooted_once(k, size, in);
      return typecheck(*reg_, t, in);
    } catch (const TypeError& e) {
      last = e.what();
    } catch (const FiniteSupportError& e) {
      last = e.what();
    } catch (const GenerationError& e) {
      last = e.what();
    }
  }
  throw GenerationError(std::string("no term rooted at ") + kind_name(k) +
                        ": " + last);
}

}  // namespace deco
