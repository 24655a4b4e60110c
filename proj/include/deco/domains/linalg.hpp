#pragma once

#include "deco/registry.hpp"

namespace deco {

/// Reals over fixed-length arrays. Ops relu, mul, add, sum; programs vadd,
/// madd, hadamard, dot, svmul, mvmul, mmmul, dense, append; index
/// functions shift_right and reverse.
RegistryPtr register_linalg();

Type real_array(const Registry& reg, std::int64_t n);
/// n rows of m columns
Type real_matrix(const Registry& reg, std::int64_t n, std::int64_t m);

/// ⟨cst M, id⟩ ; mvmul ; ⟨cst b, id⟩ ; map2 + ; map relu, over x : array<m> real
/// for an n × m weight matrix.
Term dense_layer(const Registry& reg, const Value& weights, const Value& bias,
                 std::int64_t n, std::int64_t m);

/// Program `name` built and checked at `arg`.
Term build_program(const Registry& reg, const std::string& name,
                   const Type& arg);

}  // namespace deco
