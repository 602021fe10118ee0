#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "qic/state_vector.hpp"

namespace qic {

/// Immutable boolean expression over qubit variables b0, b1, ...
///
/// Nodes are shared, so copies are cheap and safe to hand across threads.
class BoolExpr {
  public:
    enum class Kind { Constant, Variable, Not, And, Or, Xor };

    static BoolExpr constant(bool value);
    static BoolExpr variable(unsigned qubit);
    static BoolExpr negation(BoolExpr operand);
    /// `kind` must be And, Or or Xor.
    static BoolExpr binary(Kind kind, BoolExpr lhs, BoolExpr rhs);

    Kind kind() const { return node_->kind; }
    bool value() const { return node_->value; }
    unsigned qubit() const { return node_->qubit; }
    /// Operand of Not, left operand of binary nodes.
    const BoolExpr& lhs() const { return *node_->lhs; }
    const BoolExpr& rhs() const { return *node_->rhs; }

    /// Truth value at the assignment spelled by the bits of `i`.
    bool evaluate(BasisIndex i) const;
    /// Highest referenced qubit, if any variable occurs.
    std::optional<unsigned> max_qubit() const;

    /// Structural equality.
    friend bool operator==(const BoolExpr& a, const BoolExpr& b);

  private:
    struct Node {
        Kind kind = Kind::Constant;
        bool value = false;
        unsigned qubit = 0;
        std::shared_ptr<const BoolExpr> lhs;
        std::shared_ptr<const BoolExpr> rhs;
    };
    explicit BoolExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

/// Parses the expression language:
///
///     expr   := term (('|' | '^') term)*
///     term   := factor ('&' factor)*
///     factor := '~' factor | '(' expr ')' | 'b' digits | '0' | '1'
///
/// Whitespace is ignored between tokens. '|' and '^' share a precedence level
/// and associate left. Throws ParseError carrying the byte offset of the
/// offending token.
BoolExpr parse_expr(std::string_view text);

/// Renders an expression that parse_expr reads back to the same tree.
std::string to_string(const BoolExpr& expr);

}  // namespace qic
