#pragma once

#include <memory>
#include <string>

namespace skewrd {

// Scalar expression in x and y: numbers, x, y, pi, e, + - * / ^, unary minus,
// parentheses and sin, cos, exp, sqrt. Parsing errors carry the 1-based column.
class Expression {
public:
    struct Node;

    Expression() = default;
    static Expression parse(const std::string& text);

    double operator()(double x, double y) const;
    const std::string& text() const { return text_; }

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

}  // namespace skewrd
