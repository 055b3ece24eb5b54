#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace uncprop {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Node of an arithmetic measurement-model AST: named variables, literal
/// constants, +, -, *, /, unary negation and integer powers. Nodes are
/// immutable and shared; trees are safe to evaluate concurrently.
class Expr {
public:
    enum class Kind { Constant, Variable, Negate, Add, Subtract, Multiply, Divide, Power };

    static ExprPtr constant(double value);
    static ExprPtr variable(std::string name);
    static ExprPtr negate(ExprPtr operand);
    static ExprPtr add(ExprPtr lhs, ExprPtr rhs);
    static ExprPtr subtract(ExprPtr lhs, ExprPtr rhs);
    static ExprPtr multiply(ExprPtr lhs, ExprPtr rhs);
    static ExprPtr divide(ExprPtr lhs, ExprPtr rhs);
    static ExprPtr power(ExprPtr base, int exponent);

    Kind kind() const { return kind_; }
    double constant_value() const { return value_; }
    const std::string& variable_name() const { return name_; }
    const ExprPtr& lhs() const { return lhs_; }  // unary operand / power base for those kinds
    const ExprPtr& rhs() const { return rhs_; }
    int exponent() const { return exponent_; }

private:
    Expr() = default;

    Kind kind_ = Kind::Constant;
    double value_ = 0.0;
    std::string name_;
    ExprPtr lhs_;
    ExprPtr rhs_;
    int exponent_ = 0;
};

bool structurally_equal(const Expr& a, const Expr& b);

/// An expression together with its input set: the distinct variable names of
/// the tree, in first-appearance order.
class Model {
public:
    explicit Model(ExprPtr root);

    const ExprPtr& root() const { return root_; }
    const std::vector<std::string>& inputs() const { return inputs_; }

private:
    ExprPtr root_;
    std::vector<std::string> inputs_;
};

/// Parse one expression in the model DSL:
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := "-" factor | base ("^" integer)?
///   base   := identifier | number | "(" expr ")"
/// Whitespace is insignificant; trailing input is an error. Throws
/// Error{syntax_error} carrying 1-based line/column and the expected tokens.
Model parse_model(std::string_view source);

/// Canonical text with minimal parentheses; parse_model(render_model(m)) is
/// structurally equal to m.
std::string render_model(const Model& m);
std::string render_expression(const Expr& e);

}  // namespace uncprop
