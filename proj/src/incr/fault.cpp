#include "deco/fault.hpp"

#include <atomic>

namespace deco {
namespace {

std::atomic<Fault> g_fault{Fault::None};

}  // namespace

void set_fault(Fault f) { g_fault.store(f); }
Fault active_fault() { return g_fault.load(std::memory_order_relaxed); }

const char* fault_name(Fault f) {
  switch (f) {
    case Fault::None: return "none";
    case Fault::TrivCache: return "triv-cache";
    case Fault::SwapProjections: return "swap-proj";
    case Fault::SeqCache: return "seq-cache";
    case Fault::BiLinCross: return "bilin-cross";
    case Fault::DeBruijn: return "debruijn";
  }
  return "none";
}

std::optional<Fault> fault_from_name(const std::string& name) {
  for (Fault f : {Fault::None, Fault::TrivCache, Fault::SwapProjections,
                  Fault::SeqCache, Fault::BiLinCross, Fault::DeBruijn}) {
    if (name == fault_name(f)) return f;
  }
  return std::nullopt;
}

std::vector<Fault> all_faults() {
  return {Fault::TrivCache, Fault::SwapProjections, Fault::SeqCache,
          Fault::BiLinCross, Fault::DeBruijn};
}

}  // namespace deco
