#pragma once

// Element literals for the CLI and REPL: "r[2,-1]", "t1", "hbar", "b1",
// rational constants, +, -, *, ^ and parentheses. Multiplication is the
// algebra product of the ambient context, so quantized expressions see the
// shift relations. print_element is the canonical inverse of parsing; its
// output is the bit-exact format used in golden files.

#include "coulombkit/algebra.hpp"
#include "coulombkit/errors.hpp"

#include <cctype>
#include <string>

namespace ck {

namespace detail_expr {

class Parser {
public:
    Parser(const std::string& src, const AlgebraContext& ctx) : src_(src), ctx_(ctx) {}

    AbelianElement parse() {
        AbelianElement e = expression();
        skip_ws();
        if (pos_ != src_.size()) throw ExprParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    AbelianElement expression() {
        skip_ws();
        bool negate = false;
        while (peek() == '+' || peek() == '-') {
            if (get() == '-') negate = !negate;
            skip_ws();
        }
        AbelianElement acc = term();
        if (negate) acc = -acc;
        while (true) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            get();
            AbelianElement rhs = term();
            acc = c == '+' ? acc + rhs : acc - rhs;
        }
        return acc;
    }

    AbelianElement term() {
        AbelianElement acc = factor();
        while (true) {
            skip_ws();
            if (peek() != '*') break;
            get();
            acc = acc * factor();
        }
        return acc;
    }

    AbelianElement factor() {
        AbelianElement base = atom();
        skip_ws();
        while (peek() == '^') {
            get();
            skip_ws();
            std::size_t at = pos_;
            long long n = integer();
            if (n < 0) throw ExprParseError("negative exponent", at);
            AbelianElement acc = AbelianElement::unit(ctx_);
            for (long long i = 0; i < n; ++i) acc = acc * base;
            base = acc;
            skip_ws();
        }
        return base;
    }

    AbelianElement atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            AbelianElement e = expression();
            skip_ws();
            if (peek() != ')') throw ExprParseError("expected ')'", pos_);
            get();
            return e;
        }
        if (c == '-') {
            get();
            return -atom();
        }
        if (std::isdigit((unsigned char)c)) return rational_literal();
        if (std::isalpha((unsigned char)c)) return identifier();
        throw ExprParseError("expected a term", pos_);
    }

    AbelianElement rational_literal() {
        long long num = integer();
        skip_ws();
        if (peek() == '/') {
            get();
            skip_ws();
            std::size_t at = pos_;
            long long den = integer();
            if (den == 0) throw ExprParseError("zero denominator", at);
            return AbelianElement::from_poly(ctx_, ctx_.scalar(Rational(num, den)));
        }
        return AbelianElement::from_poly(ctx_, ctx_.scalar(Rational(num)));
    }

    AbelianElement identifier() {
        std::size_t at = pos_;
        std::string name;
        while (std::isalpha((unsigned char)peek())) name += get();
        if (name == "hbar") {
            if (ctx_.mode == Mode::classical)
                throw ExprParseError("hbar is not available in classical mode", at);
            return AbelianElement::from_poly(ctx_, ctx_.hbar());
        }
        if (name == "r") {
            skip_ws();
            if (peek() != '[') throw ExprParseError("expected '[' after r", pos_);
            get();
            IntVec coords;
            while (true) {
                skip_ws();
                coords.push_back(integer());
                skip_ws();
                char c = peek();
                if (c == ',') {
                    get();
                    continue;
                }
                if (c == ']') {
                    get();
                    break;
                }
                throw ExprParseError("expected ',' or ']'", pos_);
            }
            if ((int)coords.size() != ctx_.rank)
                throw ExprParseError("coweight of wrong rank", at);
            return AbelianElement::monomial(ctx_, Coweight{coords}, ctx_.one());
        }
        if (name == "t" || name == "b") {
            std::size_t idx_at = pos_;
            if (!std::isdigit((unsigned char)peek()))
                throw ExprParseError("expected a variable index", pos_);
            long long idx = integer();
            if (name == "t") {
                if (idx < 1 || idx > ctx_.rank)
                    throw ExprParseError("t-variable index out of range", idx_at);
                return AbelianElement::from_poly(ctx_, ctx_.t((int)idx - 1));
            }
            if (idx < 1 || (std::size_t)idx > ctx_.num_flavors())
                throw ExprParseError("b-variable index out of range", idx_at);
            return AbelianElement::from_poly(ctx_, ctx_.flavor((std::size_t)idx - 1));
        }
        throw ExprParseError("unknown identifier '" + name + "'", at);
    }

    long long integer() {
        skip_ws();
        std::size_t at = pos_;
        bool neg = false;
        if (peek() == '-') {
            get();
            neg = true;
        }
        if (!std::isdigit((unsigned char)peek())) throw ExprParseError("expected an integer", at);
        long long v = 0;
        while (std::isdigit((unsigned char)peek())) v = v * 10 + (get() - '0');
        return neg ? -v : v;
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace((unsigned char)src_[pos_])) ++pos_;
    }
    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
    char get() { return src_[pos_++]; }

    const std::string& src_;
    const AlgebraContext& ctx_;
    std::size_t pos_ = 0;
};

}  // namespace detail_expr

inline AbelianElement parse_element(const std::string& src, const AlgebraContext& ctx) {
    return detail_expr::Parser(src, ctx).parse();
}

// polynomial-only expression (no r-symbols), for CLI coefficient arguments
inline Poly parse_poly(const std::string& src, const AlgebraContext& ctx) {
    AbelianElement e = parse_element(src, ctx);
    for (const auto& [l, c] : e.terms())
        if (!l.is_zero()) throw SchemaError("expected a polynomial expression without r-symbols");
    return e.coeff(Coweight{IntVec(ctx.rank, 0)});
}

inline std::string print_coweight(const Coweight& l) {
    std::string out = "r[";
    for (std::size_t i = 0; i < l.coords.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(l.coords[i]);
    }
    return out + "]";
}

// Canonical rendering: terms ordered by coweight, coefficients in graded-lex
// order with the leading term first. parse(print(x)) == x exactly.
inline std::string print_element(const AbelianElement& x) {
    if (x.is_zero()) return "0";
    const AlgebraContext& ctx = x.context();
    auto names = ctx.var_names();
    std::string out;
    for (const auto& [l, c] : x.terms()) {
        std::string coeff = c.to_string(names);
        bool coeff_is_one = coeff == "1";
        bool coeff_is_minus_one = coeff == "-1";
        bool multi_term = c.terms().size() > 1;
        std::string piece;
        if (l.is_zero()) {
            piece = multi_term && !out.empty() ? "(" + coeff + ")" : coeff;
        } else {
            std::string rsym = print_coweight(l);
            if (coeff_is_one) piece = rsym;
            else if (coeff_is_minus_one) piece = "-" + rsym;
            else if (multi_term) piece = "(" + coeff + ")*" + rsym;
            else piece = coeff + "*" + rsym;
        }
        if (out.empty()) {
            out = piece;
        } else if (!piece.empty() && piece[0] == '-') {
            out += piece;
        } else {
            out += "+" + piece;
        }
    }
    return out;
}

}  // namespace ck
