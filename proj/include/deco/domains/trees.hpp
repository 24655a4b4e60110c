#pragma once

#include <functional>

#include "deco/json_codec.hpp"
#include "deco/registry.hpp"

namespace deco {

/// Path-indexed trees of scalars. Ops tree_sum (Self fold), tree_size and
/// tree_max (Triv folds), pub_check and year_check (Triv); predicate
/// year_or_title; program q1 over dict<int> tree<> json.
RegistryPtr register_trees();

/// A fold over path/value pairs: m must be associative and commutative
/// with unit z. Linear folds are registered with Self, others with Triv.
struct FoldSpec {
  std::string name;
  std::function<std::int64_t(const Index&, const Scalar&)> f;
  std::function<std::int64_t(std::int64_t, std::int64_t)> m;
  std::int64_t z = 0;
  bool linear = false;
};
OpDef fold_op(const Registry& reg, const FoldSpec& spec);

/// Rose tree {"value": n, "children": [...]} to its path map over
/// tree<> int, and back. map_to_tree throws StructureError when a node's
/// parent or an earlier sibling is missing.
Value tree_to_map(const Json& rose);
Json map_to_tree(const Value& m);

/// A JSON document as a map from leaf paths to scalars over tree<> json,
/// and back. Null leaves and empty objects/arrays are dropped.
Value document_to_map(const Json& doc);
Json map_to_document(const Value& m);

/// The four-book bibliography and its dict<int> tree<> json encoding.
Json bibliography();
Value documents_to_map(const Json& docs);
Json map_to_documents(const Value& m);

/// Complete binary-style rose tree with node values drawn from `value`.
Json make_rose_tree(int depth, int branching,
                    const std::function<std::int64_t()>& value);

}  // namespace deco
