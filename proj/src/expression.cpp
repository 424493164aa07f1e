#include "skewrd/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "skewrd/error.hpp"
#include "skewrd/model.hpp"

namespace skewrd {

struct Expression::Node {
    enum class Kind { number, x, y, add, sub, mul, div, pow, neg, sin, cos, exp, sqrt };
    Kind kind = Kind::number;
    double value = 0.0;
    std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr, double v = 0.0) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    n->value = v;
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse() {
        NodePtr n = expr();
        skip();
        if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
        return n;
    }

private:
    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorCode::config_value,
             "expression column " + std::to_string(pos_ + 1) + ": " + what + " in \"" + s_ + "\"");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        NodePtr n = term();
        for (;;) {
            if (accept('+')) n = make(Node::Kind::add, n, term());
            else if (accept('-')) n = make(Node::Kind::sub, n, term());
            else return n;
        }
    }

    NodePtr term() {
        NodePtr n = unary();
        for (;;) {
            if (accept('*')) n = make(Node::Kind::mul, n, unary());
            else if (accept('/')) n = make(Node::Kind::div, n, unary());
            else return n;
        }
    }

    NodePtr unary() {
        if (accept('-')) return make(Node::Kind::neg, unary());
        if (accept('+')) return unary();
        return power();
    }

    // Right-associative; -x^2 parses as -(x^2).
    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return make(Node::Kind::pow, base, unary());
        return base;
    }

    NodePtr primary() {
        skip();
        if (pos_ >= s_.size()) error("unexpected end of expression");
        if (accept('(')) {
            NodePtr n = expr();
            if (!accept(')')) error("expected ')'");
            return n;
        }
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        error("unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number() {
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) error("malformed number");
        pos_ += static_cast<std::size_t>(end - begin);
        return make(Node::Kind::number, nullptr, nullptr, v);
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        const std::string name = s_.substr(start, pos_ - start);
        if (name == "x") return make(Node::Kind::x);
        if (name == "y") return make(Node::Kind::y);
        if (name == "pi") return make(Node::Kind::number, nullptr, nullptr, pi);
        if (name == "e") return make(Node::Kind::number, nullptr, nullptr, std::exp(1.0));
        Node::Kind k;
        if (name == "sin") k = Node::Kind::sin;
        else if (name == "cos") k = Node::Kind::cos;
        else if (name == "exp") k = Node::Kind::exp;
        else if (name == "sqrt") k = Node::Kind::sqrt;
        else {
            pos_ = start;
            error("unknown identifier '" + name + "'");
        }
        if (!accept('(')) error("expected '(' after " + name);
        NodePtr arg = expr();
        if (!accept(')')) error("expected ')'");
        return make(k, arg);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

double eval(const Node& n, double x, double y) {
    switch (n.kind) {
        case Node::Kind::number: return n.value;
        case Node::Kind::x: return x;
        case Node::Kind::y: return y;
        case Node::Kind::add: return eval(*n.a, x, y) + eval(*n.b, x, y);
        case Node::Kind::sub: return eval(*n.a, x, y) - eval(*n.b, x, y);
        case Node::Kind::mul: return eval(*n.a, x, y) * eval(*n.b, x, y);
        case Node::Kind::div: return eval(*n.a, x, y) / eval(*n.b, x, y);
        case Node::Kind::pow: return std::pow(eval(*n.a, x, y), eval(*n.b, x, y));
        case Node::Kind::neg: return -eval(*n.a, x, y);
        case Node::Kind::sin: return std::sin(eval(*n.a, x, y));
        case Node::Kind::cos: return std::cos(eval(*n.a, x, y));
        case Node::Kind::exp: return std::exp(eval(*n.a, x, y));
        case Node::Kind::sqrt: return std::sqrt(eval(*n.a, x, y));
    }
    return 0.0;
}

}  // namespace

Expression Expression::parse(const std::string& text) {
    Expression e;
    e.root_ = Parser(text).parse();
    e.text_ = text;
    return e;
}

double Expression::operator()(double x, double y) const {
    if (!root_) return 0.0;
    return eval(*root_, x, y);
}

}  // namespace skewrd
