#include "hybridie/expr.hpp"

#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace hybridie::expr {

enum class Op { number, var_t, var_s, const_pi, const_e, neg, add, sub, mul, div, pow, call };
enum class Func { sin, cos, exp, log, sqrt, abs };

struct Node {
    Op op;
    double value = 0.0;
    Func func = Func::sin;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Node>;

constexpr std::array<std::pair<std::string_view, Func>, 6> kFunctions{{
    {"sin", Func::sin},
    {"cos", Func::cos},
    {"exp", Func::exp},
    {"log", Func::log},
    {"sqrt", Func::sqrt},
    {"abs", Func::abs},
}};

std::string_view func_name(Func f) {
    for (const auto& [name, func] : kFunctions)
        if (func == f) return name;
    return "?";
}

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

const std::vector<std::string> kOperandStart{"number", "identifier", "'('", "'-'"};

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr parse_all() {
        NodePtr e = parse_expr();
        skip_ws();
        if (pos_ < src_.size()) fail("unexpected character", {"operator", "end of input"});
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const {
        std::string msg = what + " at offset " + std::to_string(pos_);
        if (pos_ < src_.size()) msg += " ('" + std::string(1, src_[pos_]) + "')";
        if (!expected.empty()) {
            msg += "; expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? ", " : "") + expected[i];
        }
        throw ParseError(msg, pos_, std::move(expected));
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (accept('+')) lhs = make(Op::add, lhs, parse_term());
            else if (accept('-')) lhs = make(Op::sub, lhs, parse_term());
            else return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (accept('*')) lhs = make(Op::mul, lhs, parse_unary());
            else if (accept('/')) lhs = make(Op::div, lhs, parse_unary());
            else return lhs;
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) return make(Op::neg, parse_unary());
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (accept('^')) return make(Op::pow, base, parse_unary());
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input", kOperandStart);
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        if (accept('(')) {
            NodePtr inner = parse_expr();
            if (!accept(')')) fail("missing closing parenthesis", {"')'"});
            return inner;
        }
        fail("unexpected character", kOperandStart);
    }

    NodePtr parse_number() {
        const char* begin = src_.data() + pos_;
        const char* end = src_.data() + src_.size();
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr == begin) fail("malformed number", {"number"});
        pos_ += static_cast<std::size_t>(ptr - begin);
        auto n = std::make_shared<Node>();
        n->op = Op::number;
        n->value = v;
        return n;
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "t") return make(Op::var_t);
        if (name == "s") return make(Op::var_s);
        if (name == "pi") return make(Op::const_pi);
        if (name == "e") return make(Op::const_e);
        for (const auto& [fname, func] : kFunctions) {
            if (name != fname) continue;
            if (!accept('(')) fail("function '" + std::string(name) + "' needs an argument list", {"'('"});
            auto n = std::make_shared<Node>();
            n->op = Op::call;
            n->func = func;
            n->lhs = parse_expr();
            if (!accept(')')) fail("missing closing parenthesis", {"')'"});
            return n;
        }
        pos_ = start;
        throw ParseError("unknown identifier '" + std::string(name) + "' at offset " + std::to_string(start), start,
                         {"t", "s", "pi", "e", "sin", "cos", "exp", "log", "sqrt", "abs"});
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

void print(const Node& n, std::string& out) {
    switch (n.op) {
    case Op::number: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", n.value);
        out += buf;
        return;
    }
    case Op::var_t: out += 't'; return;
    case Op::var_s: out += 's'; return;
    case Op::const_pi: out += "pi"; return;
    case Op::const_e: out += 'e'; return;
    case Op::neg:
        out += "(-";
        print(*n.lhs, out);
        out += ')';
        return;
    case Op::call:
        out += func_name(n.func);
        out += '(';
        print(*n.lhs, out);
        out += ')';
        return;
    default: break;
    }
    const char sym = n.op == Op::add ? '+' : n.op == Op::sub ? '-' : n.op == Op::mul ? '*' : n.op == Op::div ? '/' : '^';
    out += '(';
    print(*n.lhs, out);
    out += sym;
    print(*n.rhs, out);
    out += ')';
}

std::string text_of(const Node& n) {
    std::string s;
    print(n, s);
    return s;
}

double evaluate(const Node& n, double t, const std::optional<double>& s) {
    switch (n.op) {
    case Op::number: return n.value;
    case Op::var_t: return t;
    case Op::var_s:
        if (!s) throw EvalError("variable 's' is unbound in a single-variable context");
        return *s;
    case Op::const_pi: return std::numbers::pi;
    case Op::const_e: return std::numbers::e;
    case Op::neg: return -evaluate(*n.lhs, t, s);
    case Op::add: return evaluate(*n.lhs, t, s) + evaluate(*n.rhs, t, s);
    case Op::sub: return evaluate(*n.lhs, t, s) - evaluate(*n.rhs, t, s);
    case Op::mul: return evaluate(*n.lhs, t, s) * evaluate(*n.rhs, t, s);
    case Op::div: {
        const double num = evaluate(*n.lhs, t, s);
        const double den = evaluate(*n.rhs, t, s);
        if (den == 0.0) throw EvalError("division by zero in " + text_of(n));
        return num / den;
    }
    case Op::pow: {
        const double base = evaluate(*n.lhs, t, s);
        const double exponent = evaluate(*n.rhs, t, s);
        const double v = std::pow(base, exponent);
        if (std::isnan(v) && !std::isnan(base) && !std::isnan(exponent))
            throw EvalError("power of negative base to non-integer exponent in " + text_of(n));
        return v;
    }
    case Op::call: {
        const double x = evaluate(*n.lhs, t, s);
        switch (n.func) {
        case Func::sin: return std::sin(x);
        case Func::cos: return std::cos(x);
        case Func::exp: return std::exp(x);
        case Func::log:
            if (!(x > 0.0)) throw EvalError("log of non-positive value in " + text_of(n));
            return std::log(x);
        case Func::sqrt:
            if (x < 0.0) throw EvalError("sqrt of negative value in " + text_of(n));
            return std::sqrt(x);
        case Func::abs: return std::abs(x);
        }
    }
    }
    return 0.0;  // unreachable
}

bool references_s(const Node& n) {
    if (n.op == Op::var_s) return true;
    return (n.lhs && references_s(*n.lhs)) || (n.rhs && references_s(*n.rhs));
}

} // namespace

ParseError::ParseError(const std::string& message, std::size_t offset, std::vector<std::string> expected)
    : std::runtime_error(message), offset_(offset), expected_(std::move(expected)) {}

Expr::Expr() : root_(make(Op::number)) {}

double Expr::eval(double t, std::optional<double> s) const {
    return evaluate(*root_, t, s);
}

std::string Expr::to_string() const {
    return text_of(*root_);
}

bool Expr::uses_s() const {
    return references_s(*root_);
}

Expr parse(std::string_view src) {
    return Expr(Parser(src).parse_all());
}

} // namespace hybridie::expr
