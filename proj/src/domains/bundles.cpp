#include "deco/domains/bundles.hpp"

#include "deco/domains/gcounter.hpp"
#include "deco/domains/linalg.hpp"
#include "deco/domains/relalg.hpp"
#include "deco/domains/trees.hpp"
#include "deco/errors.hpp"

namespace deco {

std::vector<std::string> bundle_names() {
  return {"linalg", "relalg", "trees", "gcounter"};
}

RegistryPtr load_bundle(const std::string& name) {
  if (name == "linalg") return register_linalg();
  if (name == "relalg") return register_relalg();
  if (name == "trees") return register_trees();
  if (name == "gcounter") return register_gcounter();
  throw UsageError("unknown bundle '" + name + "'");
}

}  // namespace deco
