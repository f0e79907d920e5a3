#pragma once
#include <cctype>

#include "scalar.hpp"

namespace qorbit {

// Recursive-descent parser for the canonical scalar grammar: integers, `/`,
// `+`, `-`, `*`, `^`, parentheses and symbols [a-zA-Z][a-zA-Z0-9_]*.
class ScalarParser {
public:
    ScalarParser(std::string text, VarOrderPtr vars)
        : text_(std::move(text)), vars_(std::move(vars)) {}

    ExactScalar parse() {
        ExactScalar v = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("trailing input in scalar at position " + std::to_string(pos_));
        return v;
    }

private:
    ExactScalar expr() {
        ExactScalar acc = term();
        for (;;) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                acc += term();
            } else if (peek() == '-') {
                ++pos_;
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    ExactScalar term() {
        ExactScalar acc = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                acc *= factor();
            } else if (peek() == '/') {
                ++pos_;
                acc /= factor();
            } else {
                return acc;
            }
        }
    }

    ExactScalar factor() {
        skip_ws();
        bool neg = false;
        while (peek() == '-') {
            ++pos_;
            neg = !neg;
            skip_ws();
        }
        ExactScalar base = primary();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            bool eneg = false;
            if (peek() == '-') {
                ++pos_;
                eneg = true;
            }
            long e = integer_literal();
            base = base.pow(eneg ? -e : e);
        }
        return neg ? -base : base;
    }

    ExactScalar primary() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            ExactScalar v = expr();
            skip_ws();
            if (peek() != ')') throw ParseError("expected ')' in scalar");
            ++pos_;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            return ExactScalar(vars_, Rational(text_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            ++pos_;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
            std::string name = text_.substr(start, pos_ - start);
            if (vars_->index_of(name) < 0)
                throw ParseError("unknown symbol '" + name + "' in scalar");
            return ExactScalar::variable(vars_, name);
        }
        throw ParseError("unexpected character in scalar at position " + std::to_string(pos_));
    }

    long integer_literal() {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected integer exponent");
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (text_[pos_] - '0');
            ++pos_;
        }
        return v;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    std::string text_;
    VarOrderPtr vars_;
    std::size_t pos_ = 0;
};

inline ExactScalar parse_scalar(const std::string& text, const VarOrderPtr& vars) {
    return ScalarParser(text, vars).parse();
}

} // namespace qorbit
