#include "deco/term.hpp"

#include "deco/codec.hpp"
#include "deco/errors.hpp"
#include "deco/json_codec.hpp"

namespace deco {
namespace {

Term make(Term::Kind k, std::vector<Term> kids = {}) {
  auto n = std::make_shared<Term::Node>();
  n->kind = k;
  n->kids = std::move(kids);
  return Term(std::move(n));
}

std::string quote(const std::string& s) { return Json(s).dump(); }

}  // namespace

const char* kind_name(Term::Kind k) {
  switch (k) {
    case Term::Kind::Seq: return "seq";
    case Term::Kind::Par: return "par";
    case Term::Kind::Id: return "id";
    case Term::Kind::Dup: return "dup";
    case Term::Kind::Fst: return "fst";
    case Term::Kind::Snd: return "snd";
    case Term::Kind::Plus: return "plus";
    case Term::Kind::Cst: return "cst";
    case Term::Kind::Map: return "map";
    case Term::Kind::Zip: return "zip";
    case Term::Kind::Get: return "get";
    case Term::Kind::Set: return "set";
    case Term::Kind::Reshape: return "reshape";
    case Term::Kind::Replicate: return "replicate";
    case Term::Kind::Tp: return "tp";
    case Term::Kind::Filter: return "filter";
    case Term::Kind::Fuse: return "fuse";
    case Term::Kind::Distr: return "distr";
    case Term::Kind::Inl: return "inl";
    case Term::Kind::Inr: return "inr";
    case Term::Kind::Case: return "case";
    case Term::Kind::Op: return "op";
  }
  return "?";
}

Term Term::seq(Term a, Term b) {
  return make(Kind::Seq, {std::move(a), std::move(b)});
}
Term Term::par(Term a, Term b) {
  return make(Kind::Par, {std::move(a), std::move(b)});
}
Term Term::id() { return make(Kind::Id); }
Term Term::dup() { return make(Kind::Dup); }
Term Term::fst() { return make(Kind::Fst); }
Term Term::snd() { return make(Kind::Snd); }
Term Term::plus() { return make(Kind::Plus); }
Term Term::zip() { return make(Kind::Zip); }
Term Term::tp() { return make(Kind::Tp); }
Term Term::fuse() { return make(Kind::Fuse); }
Term Term::distr() { return make(Kind::Distr); }
Term Term::map(Term f) { return make(Kind::Map, {std::move(f)}); }
Term Term::case_of(Term f, Term g) {
  return make(Kind::Case, {std::move(f), std::move(g)});
}

Term Term::cst(Type ty, Value c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Cst;
  n->payload_type = std::move(ty);
  n->literal = std::move(c);
  return Term(std::move(n));
}

Term Term::get(Index i) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Get;
  n->index = std::move(i);
  return Term(std::move(n));
}

Term Term::set(Index i) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Set;
  n->index = std::move(i);
  return Term(std::move(n));
}

Term Term::reshape(std::string fn) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Reshape;
  n->name = std::move(fn);
  return Term(std::move(n));
}

Term Term::filter(std::string pred) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Filter;
  n->name = std::move(pred);
  return Term(std::move(n));
}

Term Term::op(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Op;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::replicate(Shape s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Replicate;
  n->shape = std::move(s);
  return Term(std::move(n));
}

Term Term::inl(Type other) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Inl;
  n->payload_type = std::move(other);
  return Term(std::move(n));
}

Term Term::inr(Type other) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Inr;
  n->payload_type = std::move(other);
  return Term(std::move(n));
}

Term Term::map2(Term f) { return seq(zip(), map(std::move(f))); }

Term Term::fork(Term f, Term g) {
  return seq(dup(), par(std::move(f), std::move(g)));
}

Term Term::chain(std::vector<Term> ts) {
  if (ts.empty()) return id();
  Term acc = ts[0];
  for (std::size_t k = 1; k < ts.size(); ++k) acc = seq(acc, ts[k]);
  return acc;
}

std::size_t Term::size() const {
  std::size_t n = 1;
  for (const auto& k : kids()) n += k.size();
  return n;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.valid() || !b.valid()) return false;
  if (a.kind() != b.kind() || a.kids().size() != b.kids().size()) return false;
  for (std::size_t k = 0; k < a.kids().size(); ++k) {
    if (!(a.kids()[k] == b.kids()[k])) return false;
  }
  switch (a.kind()) {
    case Term::Kind::Cst:
      return a.payload_type() == b.payload_type() &&
             a.literal() == b.literal();
    case Term::Kind::Inl:
    case Term::Kind::Inr:
      return a.payload_type() == b.payload_type();
    case Term::Kind::Get:
    case Term::Kind::Set:
      return a.index() == b.index();
    case Term::Kind::Reshape:
    case Term::Kind::Filter:
    case Term::Kind::Op:
      return a.name() == b.name();
    case Term::Kind::Replicate:
      return a.shape() == b.shape();
    default:
      return true;
  }
}

std::string Term::to_string() const {
  if (!valid()) return "<invalid>";
  const char* kw = kind_name(kind());
  switch (kind()) {
    case Kind::Seq:
    case Kind::Par:
    case Kind::Case:
      return std::string("(") + kw + " " + kid(0).to_string() + " " +
             kid(1).to_string() + ")";
    case Kind::Map:
      return std::string("(map ") + kid(0).to_string() + ")";
    case Kind::Cst:
      return "(cst " + quote(payload_type().to_string()) + " " +
             quote(value_to_text(payload_type(), literal())) + ")";
    case Kind::Get:
    case Kind::Set:
      if (index().is_int()) {
        return std::string("(") + kw + " " + std::to_string(index().as_int()) +
               ")";
      }
      return std::string("(") + kw + " " + quote(index_to_text(index())) + ")";
    case Kind::Reshape:
    case Kind::Filter:
    case Kind::Op:
      return std::string("(") + kw + " " + name() + ")";
    case Kind::Replicate:
      return "(replicate " + quote(shape().to_string()) + ")";
    case Kind::Inl:
    case Kind::Inr:
      return std::string("(") + kw + " " + quote(payload_type().to_string()) +
             ")";
    default:
      return kw;
  }
}

}  // namespace deco
