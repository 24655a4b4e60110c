#include "deco/typecheck.hpp"

#include "deco/algebra.hpp"
#include "deco/denote.hpp"
#include "deco/errors.hpp"

namespace deco {
namespace {

[[noreturn]] void mismatch(const Term& t, const Type& in,
                           const std::string& need) {
  throw TypeError(std::string(kind_name(t.kind())) + " expects " + need +
                  ", got " + in.to_string());
}

Term annotate(const Term& t, const Type& in, const Type& out,
              std::vector<Term> kids = {}) {
  auto n = std::make_shared<Term::Node>(t.node());
  n->kids = std::move(kids);
  n->input = in;
  n->output = out;
  return Term(std::move(n));
}

class Checker {
 public:
  explicit Checker(const Registry& reg) : reg_(reg) {}

  Term check(const Term& t, const Type& in) {
    if (!t.valid()) throw TypeError("empty term");
    if (!in.valid()) throw TypeError("missing input type");
    using K = Term::Kind;
    switch (t.kind()) {
      case K::Seq: {
        Term a = check(t.kid(0), in);
        Term b = check(t.kid(1), a.output());
        return annotate(t, in, b.output(), {a, b});
      }
      case K::Par: {
        if (!in.is_product()) mismatch(t, in, "a product");
        Term a = check(t.kid(0), in.left());
        Term b = check(t.kid(1), in.right());
        return annotate(t, in, Type::product(a.output(), b.output()), {a, b});
      }
      case K::Id:
        return annotate(t, in, in);
      case K::Dup:
        return annotate(t, in, Type::product(in, in));
      case K::Fst:
        if (!in.is_product()) mismatch(t, in, "a product");
        return annotate(t, in, in.left());
      case K::Snd:
        if (!in.is_product()) mismatch(t, in, "a product");
        return annotate(t, in, in.right());
      case K::Plus:
        if (!in.is_product() || !(in.left() == in.right())) {
          mismatch(t, in, "A * A");
        }
        if (!in.left().additive()) {
          throw TypeError("plus needs values equal to changes and a "
                          "commutative, associative update; " +
                          in.left().to_string() + " lacks them");
        }
        return annotate(t, in, in.left());
      case K::Cst:
        if (!t.payload_type().valid()) throw TypeError("cst without a type");
        if (!conforms(t.payload_type(), t.literal())) {
          throw TypeError("cst literal does not conform to " +
                          t.payload_type().to_string());
        }
        return annotate(t, in, t.payload_type());
      case K::Map: {
        if (!in.is_container()) mismatch(t, in, "a container");
        Term f = check(t.kid(0), in.elem());
        if (!in.shape().finite()) {
          Value fe = denote(f, epsilon(in.elem()));
          if (!is_default(f.output(), fe)) {
            throw FiniteSupportError(
                "map over infinite shape " + in.shape().to_string() +
                " needs f(ε) = ε, but f maps ε to a non-default value");
          }
        }
        return annotate(t, in, Type::container(in.shape(), f.output()), {f});
      }
      case K::Zip:
        if (!in.is_product() || !in.left().is_container() ||
            !in.right().is_container() ||
            !(in.left().shape() == in.right().shape())) {
          mismatch(t, in, "two containers of equal shape");
        }
        return annotate(
            t, in,
            Type::container(in.left().shape(), Type::product(in.left().elem(),
                                                             in.right().elem())));
      case K::Get:
        if (!in.is_container()) mismatch(t, in, "a container");
        if (!in.shape().valid_index(t.index())) {
          throw TypeError("get: index " + t.index().to_string() +
                          " is not a position of " + in.shape().to_string());
        }
        return annotate(t, in, in.elem());
      case K::Set:
        if (!in.is_product() || !in.right().is_container() ||
            !(in.right().elem() == in.left())) {
          mismatch(t, in, "A * F A");
        }
        if (!in.right().shape().valid_index(t.index())) {
          throw TypeError("set: index " + t.index().to_string() +
                          " is not a position of " +
                          in.right().shape().to_string());
        }
        return annotate(t, in, in.right());
      case K::Reshape: {
        if (!in.is_container()) mismatch(t, in, "a container");
        auto fn = reg_.index_fn(t.name());
        auto s = fn->out_shape(in.shape());
        if (!s) {
          throw TypeError("reshape " + t.name() + " does not accept shape " +
                          in.shape().to_string());
        }
        Term r = annotate(t, in, Type::container(*s, in.elem()));
        auto n = std::make_shared<Term::Node>(r.node());
        n->fn = fn;
        return Term(std::move(n));
      }
      case K::Replicate:
        if (!t.shape().def_ptr()) throw TypeError("replicate without a shape");
        return annotate(t, in, Type::container(t.shape(), in));
      case K::Tp:
        if (!in.is_container() || !in.elem().is_container()) {
          mismatch(t, in, "a nested container");
        }
        return annotate(
            t, in,
            Type::container(in.elem().shape(),
                            Type::container(in.shape(), in.elem().elem())));
      case K::Filter: {
        if (!in.is_product() || !in.right().is_container() ||
            !(in.right().elem() == in.left())) {
          mismatch(t, in, "A * F A");
        }
        Term r = annotate(t, in, in.right());
        auto n = std::make_shared<Term::Node>(r.node());
        n->pred = reg_.predicate(t.name());
        return Term(std::move(n));
      }
      case K::Fuse:
        if (!in.is_sum() || !(in.left() == in.right())) {
          mismatch(t, in, "A + A");
        }
        return annotate(t, in, in.left());
      case K::Distr:
        if (!in.is_product() || !in.right().is_sum()) {
          mismatch(t, in, "A * (B + C)");
        }
        return annotate(
            t, in,
            Type::sum(Type::product(in.left(), in.right().left()),
                      Type::product(in.left(), in.right().right())));
      case K::Inl:
        if (!t.payload_type().valid()) throw TypeError("inl without a type");
        return annotate(t, in, Type::sum(in, t.payload_type()));
      case K::Inr:
        if (!t.payload_type().valid()) throw TypeError("inr without a type");
        return annotate(t, in, Type::sum(t.payload_type(), in));
      case K::Case: {
        if (!in.is_sum()) mismatch(t, in, "a sum");
        Term f = check(t.kid(0), in.left());
        Term g = check(t.kid(1), in.right());
        return annotate(t, in, Type::sum(f.output(), g.output()), {f, g});
      }
      case K::Op: {
        auto def = reg_.op(t.name());
        auto out = def->signature(in);
        if (!out) {
          throw TypeError("operation " + t.name() + " does not accept " +
                          in.to_string());
        }
        Term r = annotate(t, in, *out);
        auto n = std::make_shared<Term::Node>(r.node());
        n->op = def;
        return Term(std::move(n));
      }
    }
    throw TypeError("unknown constructor");
  }

 private:
  const Registry& reg_;
};

}  // namespace

Term typecheck(const Registry& reg, const Term& t, const Type& in) {
  return Checker(reg).check(t, in);
}

}  // namespace deco
