#include "rsgame/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace rsgame {

namespace {

struct Token {
    enum class Kind { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };
    Kind kind;
    double num = 0;
    std::string ident;
    std::size_t offset = 0;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        tok_.offset = pos_;
        if (pos_ >= text_.size()) {
            tok_.kind = Token::Kind::End;
            return;
        }
        char c = text_[pos_];
        switch (c) {
            case '+': tok_.kind = Token::Kind::Plus; ++pos_; return;
            case '-': tok_.kind = Token::Kind::Minus; ++pos_; return;
            case '*': tok_.kind = Token::Kind::Star; ++pos_; return;
            case '/': tok_.kind = Token::Kind::Slash; ++pos_; return;
            case '^': tok_.kind = Token::Kind::Caret; ++pos_; return;
            case '(': tok_.kind = Token::Kind::LParen; ++pos_; return;
            case ')': tok_.kind = Token::Kind::RParen; ++pos_; return;
            case ',': tok_.kind = Token::Kind::Comma; ++pos_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = text_.c_str() + pos_;
            char* end = nullptr;
            double v = std::strtod(begin, &end);
            if (end == begin) throw SyntaxError("bad number", pos_);
            tok_.kind = Token::Kind::Num;
            tok_.num = v;
            pos_ += static_cast<std::size_t>(end - begin);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            tok_.kind = Token::Kind::Ident;
            tok_.ident = text_.substr(start, pos_ - start);
            return;
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }

    const std::string& text_;
    Token tok_;
    std::size_t pos_ = 0;
};

class Parser {
  public:
    explicit Parser(const std::string& text) : lex_(text) {}

    int parse_all(std::vector<ExprNode>& out) {
        nodes_ = &out;
        int root = expr();
        if (lex_.peek().kind != Token::Kind::End)
            throw SyntaxError("trailing input", lex_.peek().offset);
        return root;
    }

  private:
    int push(ExprNode n) {
        nodes_->push_back(n);
        return static_cast<int>(nodes_->size()) - 1;
    }

    int expr() {
        int left = term();
        for (;;) {
            auto k = lex_.peek().kind;
            if (k != Token::Kind::Plus && k != Token::Kind::Minus) return left;
            lex_.take();
            int right = term();
            ExprNode n;
            n.kind = ExprNode::Kind::Binary;
            n.bin = (k == Token::Kind::Plus) ? BinOp::Add : BinOp::Sub;
            n.lhs = left;
            n.rhs = right;
            left = push(n);
        }
    }

    int term() {
        int left = factor();
        for (;;) {
            auto k = lex_.peek().kind;
            if (k != Token::Kind::Star && k != Token::Kind::Slash) return left;
            lex_.take();
            int right = factor();
            ExprNode n;
            n.kind = ExprNode::Kind::Binary;
            n.bin = (k == Token::Kind::Star) ? BinOp::Mul : BinOp::Div;
            n.lhs = left;
            n.rhs = right;
            left = push(n);
        }
    }

    int factor() {
        if (lex_.peek().kind == Token::Kind::Minus) {
            lex_.take();
            int child = factor();
            ExprNode n;
            n.kind = ExprNode::Kind::Unary;
            n.un = UnOp::Neg;
            n.lhs = child;
            return push(n);
        }
        return power();
    }

    int power() {
        int base = atom();
        if (lex_.peek().kind == Token::Kind::Caret) {
            lex_.take();
            int exp = factor();  // right associative, unary minus allowed in exponent
            ExprNode n;
            n.kind = ExprNode::Kind::Binary;
            n.bin = BinOp::Pow;
            n.lhs = base;
            n.rhs = exp;
            return push(n);
        }
        return base;
    }

    int atom() {
        Token t = lex_.take();
        switch (t.kind) {
            case Token::Kind::Num: {
                ExprNode n;
                n.kind = ExprNode::Kind::Num;
                n.value = t.num;
                return push(n);
            }
            case Token::Kind::LParen: {
                int inner = expr();
                expect_rparen();
                return inner;
            }
            case Token::Kind::Ident:
                return ident_atom(t);
            default:
                throw SyntaxError("expected number, identifier or '('", t.offset);
        }
    }

    int ident_atom(const Token& t) {
        const std::string& s = t.ident;
        if (lex_.peek().kind == Token::Kind::LParen) {
            lex_.take();
            int first = expr();
            if (s == "min" || s == "max") {
                if (lex_.peek().kind != Token::Kind::Comma)
                    throw SyntaxError(s + " takes two arguments", lex_.peek().offset);
                lex_.take();
                int second = expr();
                expect_rparen();
                ExprNode n;
                n.kind = ExprNode::Kind::Binary;
                n.bin = (s == "min") ? BinOp::Min : BinOp::Max;
                n.lhs = first;
                n.rhs = second;
                return push(n);
            }
            UnOp op;
            if (s == "exp") op = UnOp::Exp;
            else if (s == "log") op = UnOp::Log;
            else if (s == "sqrt") op = UnOp::Sqrt;
            else if (s == "abs") op = UnOp::Abs;
            else if (s == "tanh") op = UnOp::Tanh;
            else if (s == "sin") op = UnOp::Sin;
            else if (s == "cos") op = UnOp::Cos;
            else throw UnknownIdentifier("unknown function '" + s + "'");
            expect_rparen();
            ExprNode n;
            n.kind = ExprNode::Kind::Unary;
            n.un = op;
            n.lhs = first;
            return push(n);
        }
        if (s.size() >= 2 && (s[0] == 'x' || s[0] == 'a')) {
            bool digits = true;
            for (std::size_t i = 1; i < s.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(s[i]))) digits = false;
            if (digits) {
                ExprNode n;
                n.kind = (s[0] == 'x') ? ExprNode::Kind::VarX : ExprNode::Kind::VarA;
                n.index = std::atoi(s.c_str() + 1);
                return push(n);
            }
        }
        throw UnknownIdentifier("unknown identifier '" + s + "'");
    }

    void expect_rparen() {
        Token t = lex_.take();
        if (t.kind != Token::Kind::RParen) throw SyntaxError("expected ')'", t.offset);
    }

    Lexer lex_;
    std::vector<ExprNode>* nodes_ = nullptr;
};

}  // namespace

Expr parse(const std::string& text) {
    Expr e;
    Parser p(text);
    e.root_ = p.parse_all(e.nodes_);
    return e;
}

double Expr::eval(const double* x, int nx, const double* a, int na) const {
    if (root_ < 0) throw Error("empty expression");
    // nodes_ is in child-before-parent order (parser pushes children first)
    thread_local std::vector<double> vals;
    vals.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const ExprNode& n = nodes_[i];
        switch (n.kind) {
            case ExprNode::Kind::Num:
                vals[i] = n.value;
                break;
            case ExprNode::Kind::VarX:
                if (n.index >= nx) throw UnboundVariable("x" + std::to_string(n.index) + " unbound");
                vals[i] = x[n.index];
                break;
            case ExprNode::Kind::VarA:
                if (n.index >= na) throw UnboundVariable("a" + std::to_string(n.index) + " unbound");
                vals[i] = a[n.index];
                break;
            case ExprNode::Kind::Unary: {
                double v = vals[n.lhs];
                switch (n.un) {
                    case UnOp::Neg: vals[i] = -v; break;
                    case UnOp::Exp: vals[i] = std::exp(v); break;
                    case UnOp::Log:
                        if (v < 0) throw DomainError("log of negative");
                        vals[i] = std::log(v);
                        break;
                    case UnOp::Sqrt:
                        if (v < 0) throw DomainError("sqrt of negative");
                        vals[i] = std::sqrt(v);
                        break;
                    case UnOp::Abs: vals[i] = std::fabs(v); break;
                    case UnOp::Tanh: vals[i] = std::tanh(v); break;
                    case UnOp::Sin: vals[i] = std::sin(v); break;
                    case UnOp::Cos: vals[i] = std::cos(v); break;
                }
                break;
            }
            case ExprNode::Kind::Binary: {
                double l = vals[n.lhs], r = vals[n.rhs];
                switch (n.bin) {
                    case BinOp::Add: vals[i] = l + r; break;
                    case BinOp::Sub: vals[i] = l - r; break;
                    case BinOp::Mul: vals[i] = l * r; break;
                    case BinOp::Div:
                        if (r == 0) throw DomainError("division by zero");
                        vals[i] = l / r;
                        break;
                    case BinOp::Pow:
                        if (l == 0 && r == 0) {
                            vals[i] = 1.0;
                        } else {
                            vals[i] = std::pow(l, r);
                            if (std::isnan(vals[i])) throw DomainError("pow out of domain");
                        }
                        break;
                    case BinOp::Min: vals[i] = std::fmin(l, r); break;
                    case BinOp::Max: vals[i] = std::fmax(l, r); break;
                }
                break;
            }
        }
    }
    return vals[root_];
}

int Expr::max_x_arity() const {
    int m = 0;
    for (const auto& n : nodes_)
        if (n.kind == ExprNode::Kind::VarX && n.index + 1 > m) m = n.index + 1;
    return m;
}

int Expr::max_a_arity() const {
    int m = 0;
    for (const auto& n : nodes_)
        if (n.kind == ExprNode::Kind::VarA && n.index + 1 > m) m = n.index + 1;
    return m;
}

void Expr::validate(int dim, int n_features) const {
    for (const auto& n : nodes_) {
        if (n.kind == ExprNode::Kind::VarX && n.index >= dim)
            throw UnknownIdentifier("x" + std::to_string(n.index) + " exceeds dimension " +
                                    std::to_string(dim));
        if (n.kind == ExprNode::Kind::VarA && n.index >= n_features)
            throw UnknownIdentifier("a" + std::to_string(n.index) + " exceeds feature count " +
                                    std::to_string(n_features));
    }
}

namespace {

void print_node(const std::vector<ExprNode>& nodes, int i, std::string& out) {
    const ExprNode& n = nodes[i];
    char buf[64];
    switch (n.kind) {
        case ExprNode::Kind::Num:
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            out += buf;
            break;
        case ExprNode::Kind::VarX:
            out += "x" + std::to_string(n.index);
            break;
        case ExprNode::Kind::VarA:
            out += "a" + std::to_string(n.index);
            break;
        case ExprNode::Kind::Unary: {
            static const char* names[] = {"-", "exp", "log", "sqrt", "abs", "tanh", "sin", "cos"};
            if (n.un == UnOp::Neg) {
                out += "(-";
                print_node(nodes, n.lhs, out);
                out += ")";
            } else {
                out += names[static_cast<int>(n.un)];
                out += "(";
                print_node(nodes, n.lhs, out);
                out += ")";
            }
            break;
        }
        case ExprNode::Kind::Binary: {
            if (n.bin == BinOp::Min || n.bin == BinOp::Max) {
                out += (n.bin == BinOp::Min) ? "min(" : "max(";
                print_node(nodes, n.lhs, out);
                out += ", ";
                print_node(nodes, n.rhs, out);
                out += ")";
                break;
            }
            static const char* ops[] = {"+", "-", "*", "/", "^"};
            out += "(";
            print_node(nodes, n.lhs, out);
            out += ops[static_cast<int>(n.bin)];
            print_node(nodes, n.rhs, out);
            out += ")";
            break;
        }
    }
}

}  // namespace

std::string Expr::print() const {
    std::string out;
    if (root_ >= 0) print_node(nodes_, root_, out);
    return out;
}

}  // namespace rsgame
