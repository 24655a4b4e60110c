#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deco/json_codec.hpp"
#include "deco/machine.hpp"
#include "deco/oracle/gen.hpp"

namespace deco {

/// One machine-readable check result. `witness` holds the first
/// counterexample, or null when the check passed.
struct CheckRecord {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  bool pass = true;
  Json witness;

  Json to_json() const;
};

/// An input together with changes in application order (first applied
/// first). iter and sum_changes take lists last-applied-first.
struct LawSample {
  Value x;
  std::vector<Change> ds;
};

std::vector<LawSample> gen_law_samples(Generator& g, const Type& in,
                                       std::size_t n, std::size_t depth);

/// Laws 1-3 for `m` against the batch function `f`: initialization agrees
/// with f, each step's output change takes f x to f (x ⊕ dx), and the stepped
/// cache equals the cache initialized at the updated input. Every change of
/// a sample is stepped in turn, so depth-n samples iterate the laws.
CheckRecord check_laws(const std::string& name, const Machine& m,
                       const ValueFn& f, const std::vector<LawSample>& samples,
                       const Tolerance& tol, std::uint64_t seed = 0,
                       std::optional<Tolerance> cache_tol = std::nullopt);

/// (iter I x ds)₁ against denote(t, sum x ds) on the given samples.
CheckRecord check_value_preservation(const std::string& name, const Term& t,
                                     const std::vector<LawSample>& samples,
                                     const Tolerance& tol,
                                     std::uint64_t seed = 0);

/// Value preservation on `terms` random terms of size <= max_term_size, each
/// with `per_term` change lists of length <= max_changes.
CheckRecord check_random_value_preservation(const std::string& name,
                                            Generator& g, std::size_t terms,
                                            std::size_t per_term);

/// Occurrences of each sum-change variant (cl, cr, sl, sr, null).
using VariantCounts = std::map<std::string, std::size_t>;

/// x ⊕ (y ⊖ x) = y on random pairs of random types. For types mentioning
/// `nat`, y is drawn as x ⊕ d since ℕ has no negative changes. When
/// `variants` is given, the sum-change variants found anywhere inside the
/// computed differences are tallied there.
CheckRecord check_completeness(const std::string& name, Generator& g,
                               std::size_t samples,
                               VariantCounts* variants = nullptr);

/// Cache of the incrementalized term holds no payload after initialization
/// and after every step, on `terms` terms from gen_self_maintainable with
/// `per_term` change lists each.
CheckRecord check_self_maintainability(const std::string& name, Generator& g,
                                       std::size_t terms,
                                       std::size_t per_term);

/// Support of t's outputs within the bound predicted from its outermost
/// constructor (set, replicate, map, reshape, filter, zip, tp or an
/// operation with a registered support bound). A FiniteSupportError fails
/// the record with a "violation" witness, except InputPreconditionError:
/// such inputs are redrawn, up to 20 draws per requested sample, and
/// `samples` counts the conforming ones.
CheckRecord check_finite_support(const std::string& name, const Registry& reg,
                                 const Term& t, const Type& in, Generator& g,
                                 std::size_t samples);

/// Serializes a sample for witnesses.
Json sample_json(const Type& in, const LawSample& s);

}  // namespace deco
