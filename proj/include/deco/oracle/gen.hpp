#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "deco/errors.hpp"
#include "deco/registry.hpp"
#include "deco/term.hpp"

namespace deco {

/// Raised when a generator request has no constructible answer.
class GenerationError : public Error {
 public:
  using Error::Error;
};

struct GenConfig {
  std::uint64_t seed = 1;
  std::size_t max_term_size = 12;
  std::int64_t max_extent = 4;
  std::size_t max_changes = 5;
  std::size_t max_type_depth = 2;
  /// Base tags types are drawn from; empty means every registered base.
  std::vector<std::string> bases;
  /// Relative tolerance per base tag; unlisted bases compare exactly.
  std::map<std::string, double> tolerance = {{"real", 1e-9}};

  Tolerance tolerance_for(const Type& ty) const;
  /// Largest configured tolerance, for caches holding intermediate values.
  Tolerance cache_tolerance() const;
};

/// Seeded, type-directed generator of types, values, changes and terms
/// over one registry. Equal (registry, config) pairs produce equal streams.
class Generator {
 public:
  Generator(RegistryPtr reg, GenConfig cfg);

  const GenConfig& config() const { return cfg_; }
  const Registry& registry() const { return *reg_; }
  RegistryPtr registry_ptr() const { return reg_; }

  std::size_t below(std::size_t n);
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  bool chance(double p);

  Type gen_type() { return gen_type(cfg_.max_type_depth); }
  Type gen_type(std::size_t depth);
  Type gen_base_type();
  /// A type whose values are changes and whose update is commutative.
  Type gen_additive_type(std::size_t depth);
  Shape gen_shape();
  Shape gen_finite_shape();
  Index gen_index(const Shape& s);

  Value gen_value(const Type& ty);
  /// A change applicable at `x`. Over sums all five variants occur, except
  /// in types mentioning `nat`, where only cl/cr/null are drawn so that
  /// change streams stay increasing.
  Change gen_change(const Type& ty, const Value& x);
  /// `n` changes, each applicable after the ones before it.
  std::vector<Change> gen_changes(const Type& ty, const Value& x,
                                  std::size_t n);

  /// A checked term A ⟿ B with at most `size` nodes.
  Term gen_term(const Type& a, const Type& b, std::size_t size);
  /// A checked term from `a` to an output type of the generator's choice.
  Term gen_term(const Type& a, std::size_t size);
  /// A checked term rooted at constructor `k` on generator-chosen types.
  Term gen_rooted(Term::Kind k, std::size_t size);
  /// A checked term from `a` of at most `size` nodes whose leaves are
  /// id, dup, fst, snd, zip, tp, get, set, reshape, replicate, filter,
  /// inl, inr, cst and plus, joined by seq, par and map.
  Term gen_self_maintainable(const Type& a, std::size_t size);

 private:
  Term raw(const Type& a, const Type& b, std::size_t size);
  Term leaf(const Type& a, const Type& b, std::size_t size);
  /// Projection/get chain from a to b of at most `steps` steps.
  std::optional<std::vector<Term>> reach(const Type& a, const Type& b,
                                         std::size_t steps);
  std::optional<Term> rule(int r, const Type& a, const Type& b,
                           std::size_t size);
  /// A checked primitive applicable at `a`.
  std::optional<Term> forward_step(const Type& a);
  Term self_leaf(const Type& a);
  Term self_raw(const Type& a, std::size_t size);
  std::optional<Term> op_into(const Type& a, const Type& b, std::size_t size);
  std::optional<Term> reshape_into(const Type& a, const Type& b,
                                   std::size_t size);
  std::optional<Term> map_fn(const Type& elem, const Type& out,
                             const Shape& s, std::size_t size);
  std::pair<std::size_t, std::size_t> split(std::size_t budget);
  Term rooted_once(Term::Kind k, std::size_t size, Type& in);
  Index gen_schema_index(const ShapeArg& a);

  RegistryPtr reg_;
  GenConfig cfg_;
  std::mt19937_64 rng_;
  std::vector<BasePtr> bases_;
};

}  // namespace deco
