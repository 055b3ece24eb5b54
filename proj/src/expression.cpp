#include "uncprop/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <unordered_set>
#include <utility>

#include "uncprop/error.hpp"
#include "uncprop/numfmt.hpp"

namespace uncprop {

// ---------------------------------------------------------------------------
// AST construction

namespace {

ExprPtr seal(Expr&& node) { return std::make_shared<const Expr>(std::move(node)); }

}  // namespace

ExprPtr Expr::constant(double value) {
    Expr e;
    e.kind_ = Kind::Constant;
    e.value_ = value;
    return seal(std::move(e));
}

ExprPtr Expr::variable(std::string name) {
    Expr e;
    e.kind_ = Kind::Variable;
    e.name_ = std::move(name);
    return seal(std::move(e));
}

ExprPtr Expr::negate(ExprPtr operand) {
    Expr e;
    e.kind_ = Kind::Negate;
    e.lhs_ = std::move(operand);
    return seal(std::move(e));
}

ExprPtr Expr::add(ExprPtr lhs, ExprPtr rhs) {
    Expr e;
    e.kind_ = Kind::Add;
    e.lhs_ = std::move(lhs);
    e.rhs_ = std::move(rhs);
    return seal(std::move(e));
}

ExprPtr Expr::subtract(ExprPtr lhs, ExprPtr rhs) {
    Expr e;
    e.kind_ = Kind::Subtract;
    e.lhs_ = std::move(lhs);
    e.rhs_ = std::move(rhs);
    return seal(std::move(e));
}

ExprPtr Expr::multiply(ExprPtr lhs, ExprPtr rhs) {
    Expr e;
    e.kind_ = Kind::Multiply;
    e.lhs_ = std::move(lhs);
    e.rhs_ = std::move(rhs);
    return seal(std::move(e));
}

ExprPtr Expr::divide(ExprPtr lhs, ExprPtr rhs) {
    Expr e;
    e.kind_ = Kind::Divide;
    e.lhs_ = std::move(lhs);
    e.rhs_ = std::move(rhs);
    return seal(std::move(e));
}

ExprPtr Expr::power(ExprPtr base, int exponent) {
    Expr e;
    e.kind_ = Kind::Power;
    e.lhs_ = std::move(base);
    e.exponent_ = exponent;
    return seal(std::move(e));
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case Expr::Kind::Constant:
            return a.constant_value() == b.constant_value();
        case Expr::Kind::Variable:
            return a.variable_name() == b.variable_name();
        case Expr::Kind::Negate:
            return structurally_equal(*a.lhs(), *b.lhs());
        case Expr::Kind::Power:
            return a.exponent() == b.exponent() && structurally_equal(*a.lhs(), *b.lhs());
        default:
            return structurally_equal(*a.lhs(), *b.lhs()) && structurally_equal(*a.rhs(), *b.rhs());
    }
}

namespace {

void collect_inputs(const Expr& e, std::vector<std::string>& out, std::unordered_set<std::string>& seen) {
    switch (e.kind()) {
        case Expr::Kind::Constant:
            return;
        case Expr::Kind::Variable:
            if (seen.insert(e.variable_name()).second) out.push_back(e.variable_name());
            return;
        case Expr::Kind::Negate:
        case Expr::Kind::Power:
            collect_inputs(*e.lhs(), out, seen);
            return;
        default:
            collect_inputs(*e.lhs(), out, seen);
            collect_inputs(*e.rhs(), out, seen);
    }
}

}  // namespace

Model::Model(ExprPtr root) : root_(std::move(root)) {
    if (!root_) fail(errc::bad_request, "model expression must not be null");
    std::unordered_set<std::string> seen;
    collect_inputs(*root_, inputs_, seen);
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Identifier, Number, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double number = 0.0;
    bool integral = false;   // number with no '.' or exponent part
    long long int_value = 0; // valid when integral
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_whitespace();
        Token t;
        t.line = line_;
        t.column = column_;
        if (pos_ >= src_.size()) {
            t.kind = Tok::End;
            return t;
        }
        char c = src_[pos_];
        switch (c) {
            case '+': t.kind = Tok::Plus; advance(); t.text = "+"; return t;
            case '-': t.kind = Tok::Minus; advance(); t.text = "-"; return t;
            case '*': t.kind = Tok::Star; advance(); t.text = "*"; return t;
            case '/': t.kind = Tok::Slash; advance(); t.text = "/"; return t;
            case '^': t.kind = Tok::Caret; advance(); t.text = "^"; return t;
            case '(': t.kind = Tok::LParen; advance(); t.text = "("; return t;
            case ')': t.kind = Tok::RParen; advance(); t.text = ")"; return t;
            default: break;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return lex_identifier(t);
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number(t);
        fail(errc::syntax_error,
             position_prefix(t) + "unexpected character '" + std::string(1, c) + "'", t.line, t.column);
    }

    static std::string position_prefix(const Token& t) {
        return std::to_string(t.line) + ":" + std::to_string(t.column) + ": ";
    }

private:
    void advance() {
        if (pos_ < src_.size()) {
            if (src_[pos_] == '\n') {
                ++line_;
                column_ = 1;
            } else {
                ++column_;
            }
            ++pos_;
        }
    }

    void skip_whitespace() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
    }

    Token lex_identifier(Token t) {
        t.kind = Tok::Identifier;
        std::size_t start = pos_;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
                advance();
            else
                break;
        }
        t.text = std::string(src_.substr(start, pos_ - start));
        return t;
    }

    Token lex_number(Token t) {
        t.kind = Tok::Number;
        std::size_t start = pos_;
        bool has_dot = false, has_exp = false, any_digit = false;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                any_digit = true;
                advance();
            } else if (c == '.' && !has_dot && !has_exp) {
                has_dot = true;
                advance();
            } else if ((c == 'e' || c == 'E') && any_digit && !has_exp) {
                has_exp = true;
                advance();
                if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
                if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    fail(errc::syntax_error, position_prefix(t) + "malformed number: missing exponent digits",
                         t.line, t.column);
            } else {
                break;
            }
        }
        t.text = std::string(src_.substr(start, pos_ - start));
        if (!any_digit)
            fail(errc::syntax_error, position_prefix(t) + "malformed number '" + t.text + "'", t.line, t.column);
        t.number = std::strtod(t.text.c_str(), nullptr);
        if (!std::isfinite(t.number))
            fail(errc::syntax_error, position_prefix(t) + "number literal '" + t.text + "' is out of range",
                 t.line, t.column);
        t.integral = !has_dot && !has_exp;
        if (t.integral) t.int_value = std::strtoll(t.text.c_str(), nullptr, 10);
        return t;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

// ---------------------------------------------------------------------------
// Parser (recursive descent over the DSL grammar)

constexpr int kMaxExponentMagnitude = 1000;

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) { current_ = lexer_.next(); }

    ExprPtr parse() {
        ExprPtr e = parse_expr();
        if (current_.kind != Tok::End)
            unexpected("'+', '-', '*', '/', '^', or end of input");
        return e;
    }

private:
    [[noreturn]] void unexpected(const std::string& expected) {
        fail(errc::syntax_error,
             Lexer::position_prefix(current_) + "expected " + expected + "; found " + describe(current_),
             current_.line, current_.column);
    }

    static std::string describe(const Token& t) {
        if (t.kind == Tok::End) return "end of input";
        return "'" + t.text + "'";
    }

    void consume() { current_ = lexer_.next(); }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        while (current_.kind == Tok::Plus || current_.kind == Tok::Minus) {
            bool plus = current_.kind == Tok::Plus;
            consume();
            ExprPtr rhs = parse_term();
            lhs = plus ? Expr::add(std::move(lhs), std::move(rhs))
                       : Expr::subtract(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        while (current_.kind == Tok::Star || current_.kind == Tok::Slash) {
            bool star = current_.kind == Tok::Star;
            consume();
            ExprPtr rhs = parse_factor();
            lhs = star ? Expr::multiply(std::move(lhs), std::move(rhs))
                       : Expr::divide(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    ExprPtr parse_factor() {
        if (current_.kind == Tok::Minus) {
            consume();
            return Expr::negate(parse_factor());
        }
        ExprPtr base = parse_base();
        if (current_.kind == Tok::Caret) {
            consume();
            return Expr::power(std::move(base), parse_exponent());
        }
        return base;
    }

    int parse_exponent() {
        bool negative = false;
        if (current_.kind == Tok::Minus) {
            negative = true;
            consume();
        }
        if (current_.kind != Tok::Number || !current_.integral)
            unexpected("integer exponent");
        long long v = current_.int_value;
        if (v > kMaxExponentMagnitude)
            fail(errc::syntax_error,
                 Lexer::position_prefix(current_) + "exponent magnitude exceeds " +
                     std::to_string(kMaxExponentMagnitude),
                 current_.line, current_.column);
        consume();
        return static_cast<int>(negative ? -v : v);
    }

    ExprPtr parse_base() {
        switch (current_.kind) {
            case Tok::Identifier: {
                ExprPtr e = Expr::variable(current_.text);
                consume();
                return e;
            }
            case Tok::Number: {
                ExprPtr e = Expr::constant(current_.number);
                consume();
                return e;
            }
            case Tok::LParen: {
                consume();
                ExprPtr e = parse_expr();
                if (current_.kind != Tok::RParen) unexpected("')'");
                consume();
                return e;
            }
            default:
                unexpected("identifier, number, '-', or '('");
        }
    }

    Lexer lexer_;
    Token current_;
};

}  // namespace

Model parse_model(std::string_view source) { return Model(Parser(source).parse()); }

// ---------------------------------------------------------------------------
// Canonical printer
//
// Minimal parentheses over a fixed precedence table. Right operands of equal
// precedence keep their parentheses so the reparsed tree is structurally
// identical (the grammar is left-associative).

namespace {

int precedence(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Add:
        case Expr::Kind::Subtract: return 1;
        case Expr::Kind::Multiply:
        case Expr::Kind::Divide: return 2;
        case Expr::Kind::Negate: return 3;
        case Expr::Kind::Power: return 4;
        case Expr::Kind::Constant:
            return e.constant_value() < 0 ? 3 : 5;  // negative literals print like a negation
        case Expr::Kind::Variable: return 5;
    }
    return 5;
}

void render(const Expr& e, std::string& out);

void render_child(const Expr& child, int parent_prec, bool is_right, std::string& out) {
    int child_prec = precedence(child);
    bool parens = child_prec < parent_prec || (is_right && child_prec == parent_prec);
    if (parens) out += '(';
    render(child, out);
    if (parens) out += ')';
}

void render(const Expr& e, std::string& out) {
    switch (e.kind()) {
        case Expr::Kind::Constant:
            out += format_double(e.constant_value());
            return;
        case Expr::Kind::Variable:
            out += e.variable_name();
            return;
        case Expr::Kind::Negate:
            out += '-';
            render_child(*e.lhs(), 3, false, out);
            return;
        case Expr::Kind::Power: {
            const Expr& base = *e.lhs();
            bool parens = precedence(base) < 5;  // anything but a plain atom
            if (parens) out += '(';
            render(base, out);
            if (parens) out += ')';
            out += '^';
            out += std::to_string(e.exponent());
            return;
        }
        case Expr::Kind::Add:
        case Expr::Kind::Subtract:
        case Expr::Kind::Multiply:
        case Expr::Kind::Divide: {
            int prec = precedence(e);
            render_child(*e.lhs(), prec, false, out);
            switch (e.kind()) {
                case Expr::Kind::Add: out += " + "; break;
                case Expr::Kind::Subtract: out += " - "; break;
                case Expr::Kind::Multiply: out += " * "; break;
                default: out += " / "; break;
            }
            render_child(*e.rhs(), prec, true, out);
            return;
        }
    }
}

}  // namespace

std::string render_expression(const Expr& e) {
    std::string out;
    render(e, out);
    return out;
}

std::string render_model(const Model& m) { return render_expression(*m.root()); }

}  // namespace uncprop
