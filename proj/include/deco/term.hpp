#pragma once

#include <memory>
#include <string>
#include <vector>

#include "deco/index.hpp"
#include "deco/type.hpp"
#include "deco/value.hpp"

namespace deco {

struct OpDef;
struct IndexFnDef;
struct PredicateDef;

/// Point-free combinator term. Unchecked terms carry only their syntax;
/// typecheck() returns a copy in which every node knows its input and
/// output type and has its registry references resolved.
class Term {
 public:
  enum class Kind : std::uint8_t {
    Seq, Par, Id, Dup, Fst, Snd, Plus, Cst, Map, Zip, Get, Set, Reshape,
    Replicate, Tp, Filter, Fuse, Distr, Inl, Inr, Case, Op
  };

  Term() = default;

  static Term seq(Term a, Term b);
  static Term par(Term a, Term b);
  static Term id();
  static Term dup();
  static Term fst();
  static Term snd();
  static Term plus();
  static Term cst(Type ty, Value c);
  static Term map(Term f);
  static Term zip();
  static Term get(Index i);
  static Term set(Index i);
  static Term reshape(std::string fn);
  static Term replicate(Shape s);
  static Term tp();
  static Term filter(std::string pred);
  static Term fuse();
  static Term distr();
  /// inl : A ⟿ A + other
  static Term inl(Type other);
  /// inr : A ⟿ other + A
  static Term inr(Type other);
  static Term case_of(Term f, Term g);
  static Term op(std::string name);

  /// zip ; map f
  static Term map2(Term f);
  /// dup ; (f × g)
  static Term fork(Term f, Term g);
  /// Left-nested chain a ; b ; c ...
  static Term chain(std::vector<Term> ts);

  bool valid() const noexcept { return node_ != nullptr; }
  Kind kind() const { return node_->kind; }
  const std::vector<Term>& kids() const { return node_->kids; }
  const Term& kid(std::size_t k) const { return node_->kids.at(k); }
  const Value& literal() const { return node_->literal; }
  /// Literal type of cst, or the absent side of inl/inr.
  const Type& payload_type() const { return node_->payload_type; }
  const Index& index() const { return node_->index; }
  const std::string& name() const { return node_->name; }
  const Shape& shape() const { return node_->shape; }

  bool typed() const { return valid() && node_->input.valid(); }
  const Type& input() const { return node_->input; }
  const Type& output() const { return node_->output; }
  const std::shared_ptr<const OpDef>& op_def() const { return node_->op; }
  const std::shared_ptr<const IndexFnDef>& index_fn() const { return node_->fn; }
  const std::shared_ptr<const PredicateDef>& predicate() const {
    return node_->pred;
  }

  /// Number of constructor nodes.
  std::size_t size() const;

  /// Syntactic equality (ignores annotations).
  friend bool operator==(const Term& a, const Term& b);

  /// Parenthesized textual form; see parse_term().
  std::string to_string() const;

  struct Node {
    Kind kind = Kind::Id;
    std::vector<Term> kids;
    Value literal;
    Type payload_type;
    Index index;
    std::string name;
    Shape shape;
    Type input;
    Type output;
    std::shared_ptr<const OpDef> op;
    std::shared_ptr<const IndexFnDef> fn;
    std::shared_ptr<const PredicateDef> pred;
  };

  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  const Node& node() const { return *node_; }

 private:
  std::shared_ptr<const Node> node_;
};

/// Constructor keyword used by the textual form.
const char* kind_name(Term::Kind k);

}  // namespace deco
