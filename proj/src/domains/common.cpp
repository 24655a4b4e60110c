#include "deco/domains/common.hpp"

#include "deco/algebra.hpp"
#include "deco/errors.hpp"

namespace deco {

OpDef make_op(std::string name, Signature sig, Eval eval, Comb comb,
              std::vector<Type> samples, Derive derive) {
  OpDef def;
  def.name = name;
  def.signature = std::move(sig);
  def.eval = eval;
  def.samples = std::move(samples);
  def.incr = [name, eval, comb, derive](const Type& in, const Type& out) {
    ValueFn f = [eval, in, out](const Value& x) { return eval(in, out, x); };
    switch (comb) {
      case Comb::Triv:
        return comb_triv(name, f, in, out);
      case Comb::Triv2:
        return comb_triv2(name, f, in, out);
      case Comb::Lin:
        return comb_lin(name, f, in, out);
      case Comb::BiLin:
        return comb_bilin(name, f, in, out);
      case Comb::Self: {
        if (!in.values_are_changes() || !out.values_are_changes()) {
          throw TypeError("Self " + name + " reuses its evaluator on changes, "
                          "which needs values equal to changes");
        }
        ChangeFn d = [f, in, out](const Change& dx) {
          return to_change(out, f(to_value(in, dx)));
        };
        if (derive) {
          d = [derive, in, out](const Change& dx) { return derive(in, out, dx); };
        }
        return comb_self(name, f, d, in, out);
      }
    }
    throw TypeError("unknown combinator");
  };
  return def;
}

Signature exactly(Type in, Type out) {
  return [in, out](const Type& t) -> std::optional<Type> {
    if (t == in) return out;
    return std::nullopt;
  };
}

}  // namespace deco
