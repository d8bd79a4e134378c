#pragma once

// Small infix reader used for fixtures: + - * / ^ and parentheses, integer
// literals, identifiers. Evaluated directly in a caller-supplied algebra.

#include <cctype>
#include <string>
#include <string_view>

#include "holo/rational.hpp"

namespace holo {

// Alg must provide: using value; value number(const Integer&); value ident(const std::string&);
// value add(a,b), sub(a,b), mul(a,b), div(a,b), neg(a), pow(a, long)
template <class Alg>
class ExprReader {
public:
    using V = typename Alg::value;
    ExprReader(std::string_view src, Alg& alg) : s_(src), alg_(alg) {}

    V parse() {
        V v = expr();
        skip();
        if (p_ != s_.size()) fail("trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError(why + " at offset " + std::to_string(p_) + " in '" + std::string(s_) + "'");
    }
    void skip() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }
    bool eat(char c) {
        skip();
        if (p_ < s_.size() && s_[p_] == c) {
            ++p_;
            return true;
        }
        return false;
    }

    V expr() {
        V v = term();
        for (;;) {
            if (eat('+'))
                v = alg_.add(v, term());
            else if (eat('-'))
                v = alg_.sub(v, term());
            else
                return v;
        }
    }
    V term() {
        V v = unary();
        for (;;) {
            if (eat('*'))
                v = alg_.mul(v, unary());
            else if (eat('/'))
                v = alg_.div(v, unary());
            else
                return v;
        }
    }
    V unary() {
        if (eat('-')) return alg_.neg(unary());
        if (eat('+')) return unary();
        return power();
    }
    V power() {
        V b = atom();
        if (eat('^')) {
            long e = exponent();
            return alg_.pow(b, e);
        }
        return b;
    }
    long exponent() {
        bool paren = eat('(');
        bool negative = eat('-');
        skip();
        size_t st = p_;
        while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
        if (st == p_) fail("exponent expected");
        long e = std::stol(std::string(s_.substr(st, p_ - st)));
        if (paren && !eat(')')) fail("')' expected");
        return negative ? -e : e;
    }
    V atom() {
        skip();
        if (p_ >= s_.size()) fail("unexpected end");
        char c = s_[p_];
        if (c == '(') {
            ++p_;
            V v = expr();
            if (!eat(')')) fail("')' expected");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t st = p_;
            while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
            return alg_.number(Integer(std::string(s_.substr(st, p_ - st))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t st = p_;
            while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
            return alg_.ident(std::string(s_.substr(st, p_ - st)));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view s_;
    Alg& alg_;
    size_t p_ = 0;
};

template <class Alg>
typename Alg::value read_expr(std::string_view src, Alg& alg) {
    return ExprReader<Alg>(src, alg).parse();
}

}  // namespace holo
