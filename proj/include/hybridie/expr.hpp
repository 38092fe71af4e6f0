#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hybridie::expr {

// Grammar (whitespace ignored, identifiers case-sensitive):
//
//   expr    = term { ("+" | "-") term } ;
//   term    = unary { ("*" | "/") unary } ;
//   unary   = "-" unary | power ;
//   power   = primary [ "^" unary ] ;          (* right associative *)
//   primary = number | "t" | "s" | "pi" | "e"
//           | func "(" expr ")" | "(" expr ")" ;
//   func    = "sin" | "cos" | "exp" | "log" | "sqrt" | "abs" ;
//
// "^" binds tighter than unary minus, so -t^2 is -(t^2).

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t offset, std::vector<std::string> expected);

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

// Unbound variable or a domain violation (x/0, log of x <= 0, sqrt of x < 0).
class EvalError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct Node;

/// Immutable parsed expression in the variables t and s.
class Expr {
public:
    /// The constant 0.
    Expr();

    double eval(double t, std::optional<double> s = std::nullopt) const;

    /// Fully parenthesized text that parses back to an identical tree.
    std::string to_string() const;

    bool uses_s() const;

private:
    explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    friend Expr parse(std::string_view src);

    std::shared_ptr<const Node> root_;
};

Expr parse(std::string_view src);

} // namespace hybridie::expr
