#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "bkrel/relation.hpp"

namespace bkrel {

enum class ExprKind {
  RelRef,
  Converse,
  Circle,
  Sub,
  Sup,
  Square,
  MeanSub,
  MeanSup,
  MeanSquare,
  Included,
  Equal,
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Expression AST.  Product nodes are strictly binary; Included/Equal may
/// only appear at the root (the parser enforces this, the evaluator checks).
class Expr {
public:
  static ExprPtr ref(std::string name);
  static ExprPtr converse(ExprPtr e);
  static ExprPtr binary(ExprKind kind, ExprPtr lhs, ExprPtr rhs);

  ExprKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }  // RelRef only
  const ExprPtr& lhs() const noexcept { return lhs_; }        // Converse uses lhs
  const ExprPtr& rhs() const noexcept { return rhs_; }

private:
  Expr(ExprKind kind, std::string name, ExprPtr lhs, ExprPtr rhs)
      : kind_(kind), name_(std::move(name)), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

  ExprKind kind_;
  std::string name_;
  ExprPtr lhs_;
  ExprPtr rhs_;
};

bool is_product(ExprKind k);
bool is_comparison(ExprKind k);

/// Surface syntax:
///   stmt  := expr ( "<=" expr | "==" expr )?
///   expr  := atom ( "o" atom )*  |  atom binop atom
///   atom  := NAME | "(" expr ")" | atom "'"
///   binop := "o" | "<|" | "|>" | "[]" | "m<|" | "m|>" | "m[]"
/// Only "o" chains; chaining or mixing any other operator without
/// parentheses is rejected with a dedicated message, because those products
/// do not associate.  "o" is reserved and cannot name a relation.
ExprPtr parse(std::string_view text);

/// Canonical rendering; parse(pretty_print(e)) is structurally equal to e.
std::string pretty_print(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

/// Named relations over one shared lattice, the evaluation context.
class Workspace {
public:
  explicit Workspace(std::shared_ptr<const Lattice> lattice);

  /// Rejects duplicate names and relations over a different lattice.
  void add(std::string name, Relation r);
  bool has(const std::string& name) const;
  const Relation& get(const std::string& name) const;  // ValueError when unbound
  const std::shared_ptr<const Lattice>& lattice() const noexcept { return lattice_; }

private:
  std::shared_ptr<const Lattice> lattice_;
  std::map<std::string, Relation> relations_;
};

using EvalResult = std::variant<Relation, bool>;

/// Evaluates products to relations and root comparisons to booleans.
/// Unbound names raise ValueError; wiring problems surface from the relation
/// operations with both domain signatures in the message.
EvalResult evaluate(const Expr& e, const Workspace& w);

}  // namespace bkrel
