#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "curvekit/taylor.hpp"

namespace curvekit {

/// Scalar expression in one variable (`s`, alias `t`).
///
/// Grammar: numbers, `pi`, `e`, `+ - * / ^`, unary minus, parentheses and the
/// functions sin cos tan exp log sqrt sinh cosh tanh. Evaluating on a Taylor
/// argument yields the expression's derivatives to the argument's order.
class Expression {
public:
    struct Node;

    Expression() = default;
    static Expression parse(std::string_view text);
    static Expression constant(double value);

    double evaluate(double s) const;
    Taylor evaluate(const Taylor& s) const;
    const std::string& text() const { return text_; }

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

}  // namespace curvekit
