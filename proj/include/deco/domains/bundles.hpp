#pragma once

#include <string>
#include <vector>

#include "deco/registry.hpp"

namespace deco {

/// linalg, relalg, trees, gcounter
std::vector<std::string> bundle_names();
/// Throws UsageError for an unknown name.
RegistryPtr load_bundle(const std::string& name);

}  // namespace deco
