#include "deco/domains/trees.hpp"

#include <algorithm>
#include <limits>

#include "deco/domains/common.hpp"
#include "deco/errors.hpp"

namespace deco {
namespace {

bool is_tree(const Type& t) {
  return t.is_container() && t.shape().def().id() == "tree" &&
         t.elem().is_base();
}

bool is_tree_of(const Type& t, const char* tag) {
  return is_tree(t) && t.elem().base().tag() == tag;
}

Index child(const Index& p, PathStep s) {
  Path steps = p.steps();
  steps.push_back(std::move(s));
  return Index::path(std::move(steps));
}

Scalar json_scalar(const Json& j) {
  if (j.is_boolean()) return Scalar::boolean(j.get<bool>());
  if (j.is_number()) return Scalar::real(j.get<double>());
  if (j.is_string()) return Scalar::string(j.get<std::string>());
  return Scalar::null();
}

Json scalar_json(const Scalar& s) {
  switch (s.kind()) {
    case Scalar::Kind::Bool: return s.as_bool();
    case Scalar::Kind::Real: return s.as_real();
    case Scalar::Kind::Int: return s.as_int();
    case Scalar::Kind::Nat: return s.as_nat();
    case Scalar::Kind::Str: return s.as_string();
    default: return nullptr;
  }
}

void flatten(const Json& j, const Index& at, Value::Map& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, child(at, PathStep(k)), out);
  } else if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k) {
      flatten(j[k], child(at, PathStep(static_cast<std::int64_t>(k))), out);
    }
  } else if (!j.is_null()) {
    out.emplace(at, Value(json_scalar(j)));
  }
}

void flatten_rose(const Json& n, const Index& at, Value::Map& out) {
  std::int64_t v = n.at("value").get<std::int64_t>();
  if (v != 0) out.emplace(at, Value::integer(v));
  if (!n.contains("children")) return;
  const Json& kids = n.at("children");
  for (std::size_t k = 0; k < kids.size(); ++k) {
    flatten_rose(kids[k], child(at, PathStep(static_cast<std::int64_t>(k))),
                 out);
  }
}

std::optional<Json> at_path(const Value& tree, const std::string& field) {
  if (const Value* v = tree.find(Index::path({PathStep(field)}))) {
    return scalar_json(v->as_scalar());
  }
  return std::nullopt;
}

}  // namespace

OpDef fold_op(const Registry& reg, const FoldSpec& spec) {
  for (std::int64_t x : {0, 1, 7, 1994}) {
    if (spec.m(spec.z, x) != x) {
      throw RegistryError("fold " + spec.name + ": z is not a unit of m");
    }
  }
  Type out = Type::base(reg.base("int"));
  auto eval = [spec](const Type&, const Type&, const Value& x) {
    std::int64_t acc = spec.z;
    for (const auto& [i, v] : x.as_map()) {
      acc = spec.m(acc, spec.f(i, v.as_scalar()));
    }
    return Value::integer(acc);
  };
  std::vector<Type> samples;
  for (const char* tag : {"int", "json"}) {
    Type t = reg.parse_type(std::string("tree<> ") + tag);
    if (!spec.linear || t.values_are_changes()) samples.push_back(t);
  }
  bool linear = spec.linear;
  return make_op(
      spec.name,
      [out, linear](const Type& t) -> std::optional<Type> {
        if (!is_tree(t)) return std::nullopt;
        if (linear && !t.values_are_changes()) return std::nullopt;
        return out;
      },
      eval, spec.linear ? Comb::Self : Comb::Triv, samples,
      spec.linear ? Derive([spec](const Type&, const Type&, const Change& dx) {
        std::int64_t acc = spec.z;
        for (const auto& [i, d] : dx.as_map()) {
          acc = spec.m(acc, spec.f(i, d.as_scalar()));
        }
        return Change::integer(acc);
      })
                  : nullptr);
}

RegistryPtr register_trees() {
  auto reg = std::make_shared<Registry>("trees");
  reg->register_base(json_base());
  reg->register_base(int_base());
  reg->register_container(tree_container());
  reg->register_container(dict_container());
  reg->set_literal_base("json");
  Type jt = reg->parse_type("tree<> json");

  reg->register_op(fold_op(
      *reg, {"tree_sum",
             [](const Index&, const Scalar& s) { return s.as_int(); },
             [](std::int64_t a, std::int64_t b) { return a + b; }, 0, true}));
  reg->register_op(fold_op(
      *reg, {"tree_size", [](const Index&, const Scalar&) -> std::int64_t { return 1; },
             [](std::int64_t a, std::int64_t b) { return a + b; }, 0, false}));
  reg->register_op(fold_op(
      *reg,
      {"tree_max",
       [](const Index&, const Scalar& s) -> std::int64_t {
         if (s.kind() == Scalar::Kind::Int) return std::max<std::int64_t>(s.as_int(), 0);
         if (s.kind() == Scalar::Kind::Real) return std::max<std::int64_t>(static_cast<std::int64_t>(s.as_real()), 0);
         return 0;
       },
       [](std::int64_t a, std::int64_t b) { return std::max(a, b); }, 0,
       false}));

  auto check = [jt](std::string name, std::function<bool(const Value&)> keep) {
    return make_op(
        std::move(name), exactly(jt, jt),
        [keep](const Type&, const Type&, const Value& x) {
          return keep(x) ? x : Value::map();
        },
        Comb::Triv, {jt});
  };
  reg->register_op(check("pub_check", [](const Value& x) {
    auto p = at_path(x, "publisher");
    return p && p->is_string() && p->get<std::string>() == "Addison-Wesley";
  }));
  reg->register_op(check("year_check", [](const Value& x) {
    auto y = at_path(x, "year");
    return y && y->is_number() && y->get<double>() > 1991;
  }));

  reg->register_predicate(
      {"year_or_title", [](const Shape&, const Index& i) {
         if (i.kind() != Index::Kind::Path || i.steps().size() != 1) {
           return false;
         }
         const PathStep& s = i.steps()[0];
         return s.is_field() && (s.field() == "year" || s.field() == "title");
       }});

  Term null_json = Term::cst(Type::base(reg->base("json")), Value(Scalar::null()));
  reg->register_program(
      {"q1",
       [null_json](const Type&) {
         return Term::chain(
             {Term::map(Term::op("pub_check")), Term::map(Term::op("year_check")),
              Term::map(Term::seq(Term::fork(null_json, Term::id()),
                                  Term::filter("year_or_title")))});
       },
       {reg->parse_type("dict<int> tree<> json")}});

  reg->freeze();
  return reg;
}

Value tree_to_map(const Json& rose) {
  Value::Map out;
  flatten_rose(rose, Index::path({}), out);
  return Value::map(std::move(out));
}

Json map_to_tree(const Value& m) {
  std::vector<Index> keys = sorted_keys(m.as_map());
  Json root = {{"value", 0}, {"children", Json::array()}};
  auto node_at = [&](const Path& p) -> Json& {
    Json* n = &root;
    for (const auto& s : p) n = &(*n)["children"][static_cast<std::size_t>(s.ordinal())];
    return *n;
  };
  auto present = [&](const Path& p) {
    return p.empty() || m.find(Index::path(p)) != nullptr;
  };
  for (const auto& k : keys) {
    if (k.kind() != Index::Kind::Path) {
      throw StructureError("tree key " + k.to_string() + " is not a path");
    }
    const Path& p = k.steps();
    for (const auto& s : p) {
      if (!s.is_ordinal() || s.ordinal() < 0) {
        throw StructureError("rose tree path " + k.to_string() +
                             " has a non-ordinal step");
      }
    }
    if (p.empty()) {
      root["value"] = m.find(k)->as_scalar().as_int();
      continue;
    }
    Path parent(p.begin(), p.end() - 1);
    if (!present(parent)) {
      throw StructureError("node " + k.to_string() + " has no parent");
    }
    Json& kids = node_at(parent)["children"];
    std::size_t ord = static_cast<std::size_t>(p.back().ordinal());
    if (ord != kids.size()) {
      throw StructureError("node " + k.to_string() +
                           " is missing an earlier sibling");
    }
    kids.push_back({{"value", m.find(k)->as_scalar().as_int()},
                    {"children", Json::array()}});
  }
  if (!keys.empty() && !m.find(Index::path({}))) {
    throw StructureError("tree has no root");
  }
  return root;
}

Value document_to_map(const Json& doc) {
  Value::Map out;
  flatten(doc, Index::path({}), out);
  return Value::map(std::move(out));
}

Json map_to_document(const Value& m) {
  Json doc;
  for (const auto& k : sorted_keys(m.as_map())) {
    Json* n = &doc;
    for (const auto& s : k.steps()) {
      if (!n->is_null() && !n->is_object() && !n->is_array()) {
        throw StructureError("path " + k.to_string() + " extends a leaf");
      }
      if (s.is_field()) {
        if (n->is_array()) {
          throw StructureError("path " + k.to_string() + " mixes fields and "
                               "ordinals");
        }
        n = &(*n)[s.field()];
      } else {
        if (n->is_object()) {
          throw StructureError("path " + k.to_string() + " mixes fields and "
                               "ordinals");
        }
        if (n->is_null()) *n = Json::array();
        auto ord = static_cast<std::size_t>(s.ordinal());
        if (ord > n->size()) {
          throw StructureError("path " + k.to_string() +
                               " skips an array position");
        }
        if (ord == n->size()) n->push_back(nullptr);
        n = &(*n)[ord];
      }
    }
    if (!n->is_null()) {
      throw StructureError("path " + k.to_string() + " is an inner node");
    }
    *n = scalar_json(m.find(k)->as_scalar());
  }
  return doc;
}

Json bibliography() {
  auto person = [](const char* first, const char* last) {
    return Json{{"first", first}, {"last", last}};
  };
  Json digital_tv_editor = person("Darcy", "Gerbarg");
  digital_tv_editor["affiliation"] = "CITI";
  return Json::array(
      {{{"year", 1994},
        {"title", "TCP/IP Illustrated"},
        {"authors", {person("W.", "Stevens")}},
        {"publisher", "Addison-Wesley"},
        {"price", 65.95}},
       {{"year", 1992},
        {"title", "Advanced Programming in the Unix environment"},
        {"authors", {person("W.", "Stevens")}},
        {"publisher", "Addison-Wesley"},
        {"price", 65.95}},
       {{"year", 2000},
        {"title", "Data on the Web"},
        {"authors",
         {person("Serge", "Abiteboul"), person("Peter", "Buneman"),
          person("Dan", "Suciu")}},
        {"publisher", "Morgan Kaufmann Publishers"},
        {"price", 39.95}},
       {{"year", 1999},
        {"title", "The Economics of Technology and Content for Digital TV"},
        {"editors", {digital_tv_editor}},
        {"publisher", "Kluwer Academic Publishers"},
        {"price", 129.95}}});
}

Value documents_to_map(const Json& docs) {
  Value::Map out;
  for (std::size_t k = 0; k < docs.size(); ++k) {
    Value d = document_to_map(docs[k]);
    if (!d.as_map().empty()) {
      out.emplace(Index(static_cast<std::int64_t>(k)), std::move(d));
    }
  }
  return Value::map(std::move(out));
}

Json map_to_documents(const Value& m) {
  Json out = Json::object();
  for (const auto& k : sorted_keys(m.as_map())) {
    out[k.to_string()] = map_to_document(*m.find(k));
  }
  return out;
}

Json make_rose_tree(int depth, int branching,
                    const std::function<std::int64_t()>& value) {
  Json n = {{"value", value()}, {"children", Json::array()}};
  if (depth > 0) {
    for (int k = 0; k < branching; ++k) {
      n["children"].push_back(make_rose_tree(depth - 1, branching, value));
    }
  }
  return n;
}

}  // namespace deco
