#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "rsgame/errors.hpp"

namespace rsgame {

// Arithmetic expression over state vars x0..x{d-1} and action features a0..a{m-1}.
//
// Grammar (EBNF):
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := ("-" factor) | power
//   power  := atom ("^" factor)?        -- right associative
//   atom   := number | ident | ident "(" expr ("," expr)* ")" | "(" expr ")"
//
// Unary functions: exp log sqrt abs tanh sin cos; binary functions: min max.
// No implicit multiplication, whitespace insignificant, 0^0 = 1.

enum class UnOp : std::uint8_t { Neg, Exp, Log, Sqrt, Abs, Tanh, Sin, Cos };
enum class BinOp : std::uint8_t { Add, Sub, Mul, Div, Pow, Min, Max };

struct ExprNode {
    enum class Kind : std::uint8_t { Num, VarX, VarA, Unary, Binary } kind;
    double value = 0;      // Num
    int index = 0;         // VarX / VarA
    UnOp un{};             // Unary
    BinOp bin{};           // Binary
    int lhs = -1, rhs = -1;  // child node indices (Unary uses lhs)
};

class Expr {
  public:
    Expr() = default;

    double eval(const double* x, int nx, const double* a, int na) const;
    double eval(const std::vector<double>& x, const std::vector<double>& a) const {
        return eval(x.data(), static_cast<int>(x.size()), a.data(),
                    static_cast<int>(a.size()));
    }

    // Highest referenced index + 1, 0 when the class of variable is absent.
    int max_x_arity() const;
    int max_a_arity() const;

    // Throws UnknownIdentifier when a variable index is out of the declared range.
    void validate(int dim, int n_features) const;

    std::string print() const;

    bool empty() const { return nodes_.empty(); }
    const std::vector<ExprNode>& nodes() const { return nodes_; }

    friend Expr parse(const std::string& text);

  private:
    std::vector<ExprNode> nodes_;  // root is nodes_.back()
    int root_ = -1;
};

Expr parse(const std::string& text);

}  // namespace rsgame
