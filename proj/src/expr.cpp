#include "curvekit/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

#include "curvekit/error.hpp"

namespace curvekit {

struct Expression::Node {
    enum class Kind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };
    enum class Fn { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh, Tanh };

    Kind kind = Kind::Number;
    double number = 0.0;
    Fn fn = Fn::Sin;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse() {
        NodePtr n = sum();
        skip();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorCode::ParseError,
                    what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr sum() {
        NodePtr n = product();
        for (;;) {
            if (accept('+')) n = make(Node::Kind::Add, n, product());
            else if (accept('-')) n = make(Node::Kind::Sub, n, product());
            else return n;
        }
    }

    NodePtr product() {
        NodePtr n = unary();
        for (;;) {
            if (accept('*')) n = make(Node::Kind::Mul, n, unary());
            else if (accept('/')) n = make(Node::Kind::Div, n, unary());
            else return n;
        }
    }

    NodePtr unary() {
        if (accept('-')) return make(Node::Kind::Neg, unary());
        if (accept('+')) return unary();
        return power();
    }

    // Right associative; binds tighter than unary minus on its left operand only.
    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return make(Node::Kind::Pow, base, unary());
        return base;
    }

    NodePtr primary() {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr n = sum();
            if (!accept(')')) fail("expected ')'");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return name();
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr number() {
        double v = 0.0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc()) fail("malformed number");
        pos_ += static_cast<std::size_t>(ptr - first);
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Number;
        n->number = v;
        return n;
    }

    NodePtr name() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string_view id = text_.substr(start, pos_ - start);
        if (id == "s" || id == "t") return make(Node::Kind::Variable);
        if (id == "pi" || id == "e") {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Number;
            n->number = id == "pi" ? std::numbers::pi : std::numbers::e;
            return n;
        }
        static const std::pair<std::string_view, Node::Fn> fns[] = {
            {"sin", Node::Fn::Sin},   {"cos", Node::Fn::Cos},   {"tan", Node::Fn::Tan},
            {"exp", Node::Fn::Exp},   {"log", Node::Fn::Log},   {"sqrt", Node::Fn::Sqrt},
            {"sinh", Node::Fn::Sinh}, {"cosh", Node::Fn::Cosh}, {"tanh", Node::Fn::Tanh},
        };
        for (const auto& [fname, fn] : fns) {
            if (id != fname) continue;
            if (!accept('(')) fail("expected '(' after " + std::string(id));
            NodePtr arg = sum();
            if (!accept(')')) fail("expected ')'");
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Call;
            n->fn = fn;
            n->lhs = arg;
            return n;
        }
        fail("unknown identifier '" + std::string(id) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

double apply(Node::Fn fn, double x) {
    switch (fn) {
    case Node::Fn::Sin: return std::sin(x);
    case Node::Fn::Cos: return std::cos(x);
    case Node::Fn::Tan: return std::tan(x);
    case Node::Fn::Exp: return std::exp(x);
    case Node::Fn::Log: return std::log(x);
    case Node::Fn::Sqrt: return std::sqrt(x);
    case Node::Fn::Sinh: return std::sinh(x);
    case Node::Fn::Cosh: return std::cosh(x);
    case Node::Fn::Tanh: return std::tanh(x);
    }
    return 0.0;
}

Taylor apply(Node::Fn fn, const Taylor& x) {
    switch (fn) {
    case Node::Fn::Sin: return sin(x);
    case Node::Fn::Cos: return cos(x);
    case Node::Fn::Tan: return tan(x);
    case Node::Fn::Exp: return exp(x);
    case Node::Fn::Log: return log(x);
    case Node::Fn::Sqrt: return sqrt(x);
    case Node::Fn::Sinh: return sinh(x);
    case Node::Fn::Cosh: return cosh(x);
    case Node::Fn::Tanh: return tanh(x);
    }
    return x;
}

double power_of(double a, double b) { return std::pow(a, b); }
Taylor power_of(const Taylor& a, const Taylor& b) {
    if (b.order() == 0 || std::all_of(b.coefficients().begin() + 1, b.coefficients().end(),
                                      [](double c) { return c == 0.0; }))
        return pow(a, b.value());
    return exp(b * log(a));
}

template <typename T>
T constant_like(const T& s, double v) {
    if constexpr (std::is_same_v<T, double>) return v;
    else return Taylor::constant(v, s.order());
}

template <typename T>
T eval(const Node& n, const T& s) {
    switch (n.kind) {
    case Node::Kind::Number: return constant_like(s, n.number);
    case Node::Kind::Variable: return s;
    case Node::Kind::Neg: return -eval(*n.lhs, s);
    case Node::Kind::Add: return eval(*n.lhs, s) + eval(*n.rhs, s);
    case Node::Kind::Sub: return eval(*n.lhs, s) - eval(*n.rhs, s);
    case Node::Kind::Mul: return eval(*n.lhs, s) * eval(*n.rhs, s);
    case Node::Kind::Div: return eval(*n.lhs, s) / eval(*n.rhs, s);
    case Node::Kind::Pow: return power_of(eval(*n.lhs, s), eval(*n.rhs, s));
    case Node::Kind::Call: return apply(n.fn, eval(*n.lhs, s));
    }
    return s;
}

}  // namespace

Expression Expression::parse(std::string_view text) {
    Expression e;
    e.root_ = Parser(text).parse();
    e.text_ = std::string(text);
    return e;
}

Expression Expression::constant(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return parse(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

double Expression::evaluate(double s) const { return eval(*root_, s); }

Taylor Expression::evaluate(const Taylor& s) const { return eval(*root_, s); }

}  // namespace curvekit
