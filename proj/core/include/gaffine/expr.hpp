#pragma once

/**
 * @file expr.hpp
 * @brief Expressions of one real variable, parsed from text and evaluated in
 * jet arithmetic.
 *
 * Grammar (highest precedence first):
 *
 *   primary := number | 'pi' | VAR | FUNC '(' sum ')' | '(' sum ')'
 *   power   := primary ('^' unary)?          right-associative
 *   unary   := ('-' | '+') unary | power
 *   product := unary (('*' | '/') unary)*
 *   sum     := product (('+' | '-') product)*
 *
 * FUNC is one of exp, ln, sin, cos, atan, sqrt, abs. There is no implicit
 * multiplication: "2x" is rejected.
 */

#include "gaffine/errors.hpp"
#include "gaffine/jet.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gaffine {

enum class UnaryOp { Neg, Exp, Ln, Sin, Cos, Atan, Sqrt, Abs };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct ExprNode;

/// Immutable expression tree handle. Copies share nodes.
class Expr {
public:
    static Expr constant(double v);
    static Expr variable();
    static Expr unary(UnaryOp op, Expr arg);
    static Expr binary(BinaryOp op, Expr lhs, Expr rhs);

    const ExprNode& node() const noexcept { return *node_; }

    friend bool operator==(const Expr& a, const Expr& b) noexcept;

private:
    explicit Expr(std::shared_ptr<const ExprNode> n) noexcept : node_(std::move(n)) {}
    std::shared_ptr<const ExprNode> node_;
};

struct ConstantNode {
    double value;
};
struct VariableNode {};
struct UnaryNode {
    UnaryOp op;
    Expr arg;
};
struct BinaryNode {
    BinaryOp op;
    Expr lhs;
    Expr rhs;
};

struct ExprNode {
    std::variant<ConstantNode, VariableNode, UnaryNode, BinaryNode> v;
};

class ParseError : public Error {
public:
    ParseError(std::string message, std::size_t offset, std::vector<std::string> expected);

    /// Byte offset into the source where parsing failed.
    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Domain failure raised while evaluating a specific subexpression.
class ExprDomainError : public DomainError {
public:
    ExprDomainError(const std::string& cause, std::string subexpr);
    const std::string& subexpression() const noexcept { return subexpr_; }

private:
    std::string subexpr_;
};

Expr parse(std::string_view src, std::string_view var = "x");

/// Minimal-parenthesis rendering; parse(to_string(e)) == e for parsed trees.
std::string to_string(const Expr& e, std::string_view var = "x");

Jet eval(const Expr& e, const Jet& var);
double eval(const Expr& e, double var);

/// Graph jet of y = e(x) at x0.
GraphJet eval_jet(const Expr& e, double x0);

} // namespace gaffine
