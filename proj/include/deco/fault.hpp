#pragma once

#include <optional>
#include <string>
#include <vector>

namespace deco {

/// Deliberate defects used to demonstrate that the law suites catch errors.
enum class Fault {
  None,
  /// Triv forgets to store x ⊕ x′ in its cache.
  TrivCache,
  /// The derivatives of fst and snd are exchanged.
  SwapProjections,
  /// seq steps a copy of the second cache instead of the cache itself.
  SeqCache,
  /// BiLin omits the f(x′, y′) term.
  BiLinCross,
  /// Variable lowering picks the next binder instead of the named one.
  DeBruijn,
};

void set_fault(Fault f);
Fault active_fault();
inline bool fault_active(Fault f) { return active_fault() == f; }

const char* fault_name(Fault f);
std::optional<Fault> fault_from_name(const std::string& name);
std::vector<Fault> all_faults();

/// Activates a fault for the lifetime of the guard.
class FaultGuard {
 public:
  explicit FaultGuard(Fault f) : saved_(active_fault()) { set_fault(f); }
  ~FaultGuard() { set_fault(saved_); }
  FaultGuard(const FaultGuard&) = delete;
  FaultGuard& operator=(const FaultGuard&) = delete;

 private:
  Fault saved_;
};

}  // namespace deco
