#include "deco/oracle/suites.hpp"

#include <cmath>
#include <sstream>

#include "deco/algebra.hpp"
#include "deco/denote.hpp"
#include "deco/domains/bundles.hpp"
#include "deco/domains/common.hpp"
#include "deco/domains/linalg.hpp"
#include "deco/frontend/lower.hpp"
#include "deco/incrementalize.hpp"
#include "deco/typecheck.hpp"

namespace deco {
namespace {

std::int64_t int_of(const Value& v) { return v.as_scalar().as_int(); }
double real_of(const Value& v) { return v.as_scalar().as_real(); }

bool is_base(const Type& t, const char* tag) {
  return t.is_base() && t.base().tag() == tag;
}

Value sum_entries(const Type& elem, const Value& x) {
  if (is_base(elem, "int")) {
    std::int64_t s = 0;
    for (const auto& [i, v] : x.as_map()) s += int_of(v);
    return Value::integer(s);
  }
  double s = 0;
  for (const auto& [i, v] : x.as_map()) s += real_of(v);
  return Value::real(s);
}

Value times(const Type& ty, const Value& x) {
  if (is_base(ty, "int")) {
    return Value::integer(int_of(x.first()) * int_of(x.second()));
  }
  return Value::real(real_of(x.first()) * real_of(x.second()));
}

/// Drops samples on which batch evaluation itself leaves finite support.
std::vector<LawSample> evaluable(const Term& t, std::vector<LawSample> ss) {
  std::vector<LawSample> out;
  for (auto& s : ss) {
    try {
      Value cur = s.x;
      denote(t, cur);
      for (const auto& d : s.ds) {
        cur = apply_change(t.input(), cur, d);
        denote(t, cur);
      }
      out.push_back(std::move(s));
    } catch (const FiniteSupportError&) {
    }
  }
  return out;
}

}  // namespace

RegistryPtr calculus_registry(bool with_violation) {
  auto reg = std::make_shared<Registry>(with_violation ? "calculus+violation"
                                                       : "calculus");
  reg->register_base(int_base());
  reg->register_base(real_base());
  reg->register_container(array_container());
  reg->register_container(relation_container());
  reg->set_literal_base("int");
  Type z = Type::base(reg->base("int"));
  Type r = Type::base(reg->base("real"));
  Type zz = Type::product(z, z);
  Type rr = Type::product(r, r);
  Type az = reg->parse_type("array<3> int");
  Type ar = reg->parse_type("array<3> real");
  Type rel = reg->parse_type("rel<int> int");
  Type rel2 = reg->parse_type("rel<(int,int)> int");

  reg->register_op(make_op(
      "sq", exactly(z, z),
      [](const Type&, const Type&, const Value& x) {
        return Value::integer(int_of(x) * int_of(x));
      },
      Comb::Triv, {z}));
  reg->register_op(make_op(
      "relu", exactly(r, r),
      [](const Type&, const Type&, const Value& x) {
        return Value::real(std::max(0.0, real_of(x)));
      },
      Comb::Triv, {r}));
  reg->register_op(make_op(
      "cube", exactly(r, r),
      [](const Type&, const Type&, const Value& x) {
        double v = real_of(x);
        return Value::real(v * v * v);
      },
      Comb::Triv2, {r}));
  reg->register_op(make_op(
      "neg", exactly(z, z),
      [](const Type&, const Type&, const Value& x) {
        return Value::integer(-int_of(x));
      },
      Comb::Self, {z}));
  reg->register_op(make_op(
      "count",
      [](const Type& t) -> std::optional<Type> {
        if (t.is_container() && t.shape().def().id() == "rel" &&
            is_base(t.elem(), "int")) {
          return t.elem();
        }
        return std::nullopt;
      },
      [](const Type& in, const Type&, const Value& x) {
        return sum_entries(in.elem(), x);
      },
      Comb::Self, {rel, rel2}));
  reg->register_op(make_op(
      "total",
      [](const Type& t) -> std::optional<Type> {
        if (t.is_container() && t.shape().def().id() == "array" &&
            (is_base(t.elem(), "int") || is_base(t.elem(), "real"))) {
          return t.elem();
        }
        return std::nullopt;
      },
      [](const Type& in, const Type&, const Value& x) {
        return sum_entries(in.elem(), x);
      },
      Comb::Lin, {az, ar}));
  for (const auto& [name, ty] :
       {std::pair{std::string("imul"), z}, std::pair{std::string("rmul"), r}}) {
    Type base = ty;
    reg->register_op(make_op(
        name, exactly(Type::product(ty, ty), ty),
        [base](const Type&, const Type&, const Value& x) {
          return times(base, x);
        },
        Comb::BiLin, {Type::product(ty, ty)}));
  }
  for (const auto& [name, ty] :
       {std::pair{std::string("iadd"), z}, std::pair{std::string("radd"), r}}) {
    OpDef add;
    add.name = name;
    add.signature = exactly(Type::product(ty, ty), ty);
    Type base = ty;
    add.eval = [base](const Type&, const Type&, const Value& x) {
      if (is_base(base, "int")) {
        return Value::integer(int_of(x.first()) + int_of(x.second()));
      }
      return Value::real(real_of(x.first()) + real_of(x.second()));
    };
    add.incr = [](const Type&, const Type& out) { return comb_add(out); };
    add.samples = {Type::product(ty, ty)};
    reg->register_op(std::move(add));
  }

  reg->register_index_fn(IndexFnDef{
      "reverse",
      [](const Shape& s) -> std::optional<Shape> {
        if (s.def().id() != "array") return std::nullopt;
        return s;
      },
      [](const Shape& s, const Shape&, const Index& j) {
        return Index(s.arg().as_nat() - 1 - j.as_int());
      },
      [](const Shape& s, const Shape&, const Index& i)
          -> std::optional<std::vector<Index>> {
        return std::vector<Index>{Index(s.arg().as_nat() - 1 - i.as_int())};
      }});
  reg->register_index_fn(IndexFnDef{
      "grow",
      [](const Shape& s) -> std::optional<Shape> {
        if (s.def().id() != "array" || s.arg().as_nat() < 1) {
          return std::nullopt;
        }
        return Shape(s.def_ptr(), ShapeArg::nat(s.arg().as_nat() + 1));
      },
      [](const Shape& in, const Shape&, const Index& j) {
        return Index(j.as_int() % in.arg().as_nat());
      },
      [](const Shape& in, const Shape& out, const Index& i)
          -> std::optional<std::vector<Index>> {
        std::vector<Index> js;
        for (std::int64_t j = 0; j < out.arg().as_nat(); ++j) {
          if (j % in.arg().as_nat() == i.as_int()) {
            js.emplace_back(j);
          }
        }
        return js;
      }});
  reg->register_index_fn(IndexFnDef{
      "swap",
      [](const Shape& s) -> std::optional<Shape> {
        if (s.def().id() != "rel" || s.arg().kind() != ShapeArg::Kind::Pair) {
          return std::nullopt;
        }
        return Shape(s.def_ptr(),
                     ShapeArg::pair(s.arg().second(), s.arg().first()));
      },
      [](const Shape&, const Shape&, const Index& j) {
        return Index::pair(j.second(), j.first());
      },
      [](const Shape&, const Shape&, const Index& i)
          -> std::optional<std::vector<Index>> {
        return std::vector<Index>{Index::pair(i.second(), i.first())};
      }});
  if (with_violation) {
    reg->register_index_fn(IndexFnDef{
        "const0",
        [](const Shape& s) -> std::optional<Shape> {
          if (s.def().id() != "rel" || s.arg().kind() != ShapeArg::Kind::Atom ||
              s.arg().atom_name() != "int") {
            return std::nullopt;
          }
          return s;
        },
        [](const Shape&, const Shape&, const Index&) { return Index(0); },
        [](const Shape&, const Shape&, const Index& i)
            -> std::optional<std::vector<Index>> {
          if (i == Index(0)) return std::nullopt;
          return std::vector<Index>{};
        }});
  }
  reg->register_predicate({"even", [](const Shape&, const Index& i) {
                             const Index& k =
                                 i.kind() == Index::Kind::Pair ? i.first() : i;
                             return k.is_int() && k.as_int() % 2 == 0;
                           }});
  reg->register_predicate(
      {"diagonal", [](const Shape&, const Index& i) {
         return i.kind() == Index::Kind::Pair && i.first() == i.second();
       }});
  reg->freeze();
  return reg;
}

std::vector<MachineFixture> combinator_fixtures(const Registry& calc) {
  Type z = Type::base(calc.base("int"));
  Type r = Type::base(calc.base("real"));
  Type zz = Type::product(z, z);
  Type rr = Type::product(r, r);
  Type az = calc.parse_type("array<4> int");
  Type ar = calc.parse_type("array<4> real");
  auto sq = [](const Value& x) { return Value::integer(int_of(x) * int_of(x)); };
  auto relu = [](const Value& x) {
    return Value::real(std::max(0.0, real_of(x)));
  };
  auto cube = [](const Value& x) {
    double v = real_of(x);
    return Value::real(v * v * v);
  };
  auto neg = [](const Value& x) { return Value::integer(-int_of(x)); };
  auto dneg = [](const Change& d) {
    return Change::integer(-d.as_scalar().as_int());
  };
  auto total_r = [](const Value& x) {
    double s = 0;
    for (const auto& [i, v] : x.as_map()) s += real_of(v);
    return Value::real(s);
  };
  auto izz = [zz](const Value& x) { return times(zz.left(), x); };
  auto rrr = [rr](const Value& x) { return times(rr.left(), x); };
  auto addz = [](const Value& x) {
    return Value::integer(int_of(x.first()) + int_of(x.second()));
  };
  auto addr = [](const Value& x) {
    return Value::real(real_of(x.first()) + real_of(x.second()));
  };
  auto vadd = [az](const Value& x) {
    return apply_change(az, x.first(), to_change(az, x.second()));
  };
  auto total_zi = [](const Value& x) {
    std::int64_t s = 0;
    for (const auto& [i, v] : x.as_map()) s += int_of(v);
    return Value::integer(s);
  };
  return {
      {"Triv sq int", comb_triv("sq", sq, z, z), sq},
      {"Triv relu real", comb_triv("relu", relu, r, r), relu},
      {"Triv2 sq int", comb_triv2("sq", sq, z, z), sq},
      {"Triv2 cube real", comb_triv2("cube", cube, r, r), cube},
      {"Self neg int", comb_self("neg", neg, dneg, z, z), neg},
      {"Lin total array<4> int", comb_lin("total", total_zi, az, z), total_zi},
      {"Lin total array<4> real", comb_lin("total", total_r, ar, r), total_r},
      {"BiLin mul int", comb_bilin("mul", izz, zz, z), izz},
      {"BiLin mul real", comb_bilin("mul", rrr, rr, r), rrr},
      {"Add int", comb_add(z), addz},
      {"Add real", comb_add(r), addr},
      {"Add array<4> int", comb_add(az), vadd},
  };
}

std::vector<CheckRecord> constructor_suite(RegistryPtr reg,
                                           const GenConfig& cfg,
                                           std::size_t samples,
                                           std::size_t depth) {
  using K = Term::Kind;
  std::vector<CheckRecord> out;
  Generator g(reg, cfg);
  for (K k : {K::Seq, K::Par, K::Id, K::Dup, K::Fst, K::Snd, K::Plus, K::Cst,
              K::Map, K::Zip, K::Get, K::Set, K::Reshape, K::Replicate, K::Tp,
              K::Filter, K::Fuse, K::Distr, K::Inl, K::Inr, K::Case, K::Op}) {
    CheckRecord rec{std::string("laws.constructor.") + kind_name(k), cfg.seed,
                    0, true, nullptr};
    std::size_t failures = 0;
    while (rec.samples < samples && rec.pass) {
      Term t;
      try {
        t = g.gen_rooted(k, 1 + g.below(std::max<std::size_t>(
                                   1, std::min<std::size_t>(cfg.max_term_size, 6))));
      } catch (const GenerationError& e) {
        if (++failures > 20) {
          rec.pass = false;
          rec.witness = Json{{"generation", e.what()}};
        }
        continue;
      }
      auto ss = evaluable(t, gen_law_samples(g, t.input(), 10, depth));
      if (ss.empty()) continue;
      MachinePtr m;
      try {
        m = incrementalize(t);
      } catch (const std::exception& e) {
        rec.pass = false;
        rec.witness = Json{{"term", t.to_string()}, {"message", e.what()}};
        break;
      }
      CheckRecord one = check_laws(
          rec.name, *m, [t](const Value& x) { return denote(t, x); }, ss,
          cfg.tolerance_for(t.output()), cfg.seed, cfg.cache_tolerance());
      rec.samples += one.samples;
      if (!one.pass) {
        rec.pass = false;
        rec.witness = one.witness;
        rec.witness["term"] = t.to_string();
        rec.witness["input_type"] = t.input().to_string();
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<CheckRecord> combinator_suite(const GenConfig& cfg,
                                          std::size_t samples,
                                          std::size_t depth) {
  RegistryPtr calc = calculus_registry();
  Generator g(calc, cfg);
  std::vector<CheckRecord> out;
  for (const auto& fx : combinator_fixtures(*calc)) {
    const Type& in = fx.machine->input_type();
    auto ss = gen_law_samples(g, in, samples, depth);
    out.push_back(check_laws("laws.combinator." + fx.name, *fx.machine,
                             fx.batch, ss,
                             cfg.tolerance_for(fx.machine->output_type()),
                             cfg.seed, cfg.cache_tolerance()));
  }
  return out;
}

std::vector<CheckRecord> bundle_suite(RegistryPtr reg, const GenConfig& cfg,
                                      std::size_t samples, std::size_t depth) {
  std::vector<CheckRecord> out;
  Generator g(reg, cfg);
  auto run = [&](const std::string& name, const Term& t) {
    auto ss = evaluable(t, gen_law_samples(g, t.input(), samples, depth));
    MachinePtr m = incrementalize(t);
    CheckRecord rec = check_laws(
        name, *m, [t](const Value& x) { return denote(t, x); }, ss,
        cfg.tolerance_for(t.output()), cfg.seed, cfg.cache_tolerance());
    if (!rec.pass) rec.witness["term"] = t.to_string();
    out.push_back(std::move(rec));
  };
  for (const auto& name : reg->op_names()) {
    for (const auto& ty : reg->op(name)->samples) {
      run("laws." + reg->name() + ".op." + name + " @ " + ty.to_string(),
          typecheck(*reg, Term::op(name), ty));
    }
  }
  for (const auto& name : reg->program_names()) {
    auto def = reg->program(name);
    for (const auto& ty : def->samples) {
      run("laws." + reg->name() + ".program." + name + " @ " + ty.to_string(),
          typecheck(*reg, def->build(ty), ty));
    }
  }
  return out;
}

namespace {

struct LetGen {
  Generator& g;
  int fresh = 0;

  std::string expr(std::vector<std::string>& vars, int depth) {
    std::size_t pick = depth <= 0 ? g.below(2) : g.below(6);
    switch (pick) {
      case 0:
      case 1:
        if (pick == 1 && g.chance(0.3)) {
          std::ostringstream s;
          s << static_cast<double>(g.between(-20, 20)) / 4.0;
          return s.str();
        }
        return vars[g.below(vars.size())];
      case 2: {
        std::string name = "t" + std::to_string(fresh++);
        std::string bound = expr(vars, depth - 1);
        vars.insert(vars.begin(), name);
        std::string body = expr(vars, depth - 1);
        vars.erase(vars.begin());
        return "(let " + name + " = " + bound + "; " + body + ")";
      }
      case 3:
        return "relu # " + expr(vars, depth - 1);
      case 4:
        return "add # (" + expr(vars, depth - 1) + ", " + expr(vars, depth - 1) +
               ")";
      default:
        return "mul # [" + expr(vars, depth - 1) + ", " +
               expr(vars, depth - 1) + "]";
    }
  }
};

CheckRecord fail(CheckRecord rec, Json w) {
  rec.pass = false;
  rec.witness = std::move(w);
  return rec;
}

CheckRecord catalog_text_check(const std::string& name, const Registry& reg,
                               Generator& g, std::size_t samples,
                               bool dense) {
  CheckRecord rec{name, g.config().seed, samples, true, nullptr};
  for (std::size_t k = 0; k < samples; ++k) {
    std::int64_t n = g.between(1, 4);
    std::int64_t m = g.between(1, 4);
    std::string mt = real_matrix(reg, n, m).to_string();
    std::string text =
        dense ? "bundle linalg (m : " + mt + ", b : " +
                    real_array(reg, n).to_string() + ", x : " +
                    real_array(reg, m).to_string() +
                    ")\nmap relu # map2 add # (mvmul # [m, x], b)"
              : "bundle linalg (m : " + mt + ", v : " +
                    real_array(reg, m).to_string() +
                    ")\nmap sum # (map2 (map2 mul) # (replicate # v, m))";
    try {
      CompiledProgram p = compile_program(reg, parse_program(text));
      Term cat = typecheck(reg, reg.program(dense ? "dense" : "mvmul")->build(p.input),
                           p.input);
      Value x = g.gen_value(p.input);
      Value a = denote(p.term, x);
      Value b = denote(cat, x);
      if (!values_equal(cat.output(), a, b, g.config().tolerance_for(cat.output()))) {
        return fail(rec, Json{{"program", text},
                              {"x", value_to_json(p.input, x)},
                              {"lowered", value_to_json(cat.output(), a)},
                              {"catalog", value_to_json(cat.output(), b)}});
      }
    } catch (const std::exception& e) {
      return fail(rec, Json{{"program", text}, {"message", e.what()}});
    }
  }
  return rec;
}

}  // namespace

std::vector<CheckRecord> frontend_suite(const GenConfig& cfg,
                                        std::size_t samples) {
  RegistryPtr reg = load_bundle("linalg");
  Generator g(reg, cfg);
  Type real = Type::base(reg->base("real"));
  std::vector<CheckRecord> out;

  CheckRecord let{"frontend.let_translation", cfg.seed, 0, true, nullptr};
  LetGen lg{g};
  std::vector<std::string> names{"a", "b", "c"};
  std::vector<Type> types(3, real);
  std::size_t programs = std::max<std::size_t>(1, samples / 5);
  for (std::size_t k = 0; k < programs && let.pass; ++k) {
    std::vector<std::string> vars = names;
    std::string bound = lg.expr(vars, 2);
    vars.insert(vars.begin(), "t");
    std::string text = "let t = " + bound + "; " + lg.expr(vars, 3);
    try {
      Expr e = parse_expr(text);
      Term t = lower(*reg, resolve(e, names), types);
      for (int s = 0; s < 5; ++s) {
        std::vector<Value> vs;
        for (int v = 0; v < 3; ++v) vs.push_back(g.gen_value(real));
        Value a = denote(t, context_value(vs));
        Value b = reference_eval(*reg, e, names, types, vs);
        ++let.samples;
        if (!values_equal(real, a, b, cfg.tolerance_for(real))) {
          let = fail(let, Json{{"program", text},
                               {"inputs", {value_to_json(real, vs[0]),
                                           value_to_json(real, vs[1]),
                                           value_to_json(real, vs[2])}},
                               {"lowered", value_to_json(real, a)},
                               {"reference", value_to_json(real, b)}});
          break;
        }
      }
    } catch (const std::exception& e) {
      let = fail(let, Json{{"program", text}, {"message", e.what()}});
    }
  }
  out.push_back(let);

  CheckRecord shape{"frontend.let_shape", cfg.seed, 1, true, nullptr};
  try {
    Term e1 = lower(*reg, resolve(parse_expr("relu # a"), {"a"}), {real});
    Term t = lower(*reg, resolve(parse_expr("let x = relu # a; x"), {"a"}),
                   {real});
    Term want = Term::chain({Term::dup(), Term::par(e1, Term::id()),
                             Term::fst()});
    if (!(t == want)) {
      shape = fail(shape, Json{{"lowered", t.to_string()},
                               {"expected", want.to_string()}});
    }
  } catch (const std::exception& e) {
    shape = fail(shape, Json{{"message", e.what()}});
  }
  out.push_back(shape);

  out.push_back(catalog_text_check("frontend.mvmul_text", *reg, g, samples, false));
  out.push_back(catalog_text_check("frontend.dense_text", *reg, g, samples, true));
  return out;
}

std::vector<CheckRecord> laws_report(const std::string& bundle,
                                     const GenConfig& cfg,
                                     std::size_t samples) {
  RegistryPtr reg = load_bundle(bundle);
  std::vector<CheckRecord> out = combinator_suite(cfg, samples, 2);
  auto add = [&](std::vector<CheckRecord> rs) {
    for (auto& r : rs) out.push_back(std::move(r));
  };
  add(constructor_suite(calculus_registry(), cfg, samples, 2));
  add(bundle_suite(reg, cfg, samples, 2));
  add(frontend_suite(cfg, std::max<std::size_t>(20, samples / 10)));
  return out;
}

}  // namespace deco
