#pragma once

#include <string>
#include <vector>

#include "deco/oracle/checks.hpp"

namespace deco {

/// Registry with one operation per combinator (Triv, Triv2, Self, Lin,
/// BiLin, Add) over int and real, arrays and relations, index functions and
/// predicates, so that every term constructor can be generated. With
/// `with_violation`, it also registers `const0`, a reshape on rel<int> whose
/// fiber over 0 is infinite.
RegistryPtr calculus_registry(bool with_violation = false);

struct MachineFixture {
  std::string name;
  MachinePtr machine;
  ValueFn batch;
};

/// Directly built combinator instances, including BiLin on real products.
std::vector<MachineFixture> combinator_fixtures(const Registry& calc);

/// Laws 1-3 (iterated to `depth`) on random terms rooted at each
/// constructor, `samples` inputs per constructor.
std::vector<CheckRecord> constructor_suite(RegistryPtr reg,
                                           const GenConfig& cfg,
                                           std::size_t samples,
                                           std::size_t depth);

std::vector<CheckRecord> combinator_suite(const GenConfig& cfg,
                                          std::size_t samples,
                                          std::size_t depth);

/// Laws for every registered operation and program of a bundle at its
/// sample types.
std::vector<CheckRecord> bundle_suite(RegistryPtr reg, const GenConfig& cfg,
                                      std::size_t samples, std::size_t depth);

/// Random let-programs: denote(lower(resolve(e))) against the reference
/// evaluator, and the catalog mvmul/dense texts against the catalog terms.
std::vector<CheckRecord> frontend_suite(const GenConfig& cfg,
                                        std::size_t samples);

/// Everything cmd_laws runs for one bundle.
std::vector<CheckRecord> laws_report(const std::string& bundle,
                                     const GenConfig& cfg,
                                     std::size_t samples);

}  // namespace deco
