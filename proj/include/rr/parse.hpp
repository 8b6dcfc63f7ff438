#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <utility>

#include "rr/error.hpp"

namespace rr {

// Recursive descent parser for polynomial expressions.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (['*'|'/'] factor)*      juxtaposition means '*'
//   factor := atom ['^' integer]
//   atom   := integer | identifier | '(' expr ')'
//
// Ops supplies the value type:
//   V constant(int64_t), V variable(const std::string&), V add(V,V), V sub(V,V),
//   V mul(V,V), V div(V,V), V neg(V), V pow(V,long)
// Ops may throw Error; the parser adds the column to the message.
template <class Ops>
class ExprParser {
public:
    using V = decltype(std::declval<Ops&>().constant(0));

    ExprParser(Ops& ops, const std::string& text, int line = 0) : ops_(ops), s_(text), line_(line) {}

    V parse() {
        skip();
        if (pos_ >= s_.size()) error("empty expression");
        V v = expr();
        skip();
        if (pos_ < s_.size()) error(std::string("unexpected '") + s_[pos_] + "'");
        return v;
    }

private:
    Ops& ops_;
    const std::string& s_;
    size_t pos_ = 0;
    int line_;

    [[noreturn]] void error(const std::string& msg) const {
        std::string where = line_ > 0 ? "line " + std::to_string(line_) + ", column " : "column ";
        fail(ErrorCode::Syntax, where + std::to_string(pos_ + 1) + ": " + msg);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    template <class F>
    V guarded(F&& f) {
        size_t at = pos_;
        try {
            return f();
        } catch (const Error& e) {
            if (e.code() == ErrorCode::Syntax) throw;
            pos_ = at;
            std::string where = line_ > 0 ? "line " + std::to_string(line_) + ", column " : "column ";
            fail(e.code(), where + std::to_string(at + 1) + ": " + e.what());
        }
    }

    V expr() {
        skip();
        bool negate = false;
        if (eat('-'))
            negate = true;
        else
            eat('+');
        V v = term();
        if (negate) v = ops_.neg(v);
        for (;;) {
            if (eat('+'))
                v = guarded([&] { return ops_.add(v, term()); });
            else if (eat('-'))
                v = guarded([&] { return ops_.sub(v, term()); });
            else
                return v;
        }
    }

    bool starts_atom() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return c == '(' || std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    V term() {
        V v = factor();
        for (;;) {
            if (eat('*')) {
                V w = factor();
                v = guarded([&] { return ops_.mul(v, w); });
            } else if (eat('/')) {
                size_t at = pos_;
                V w = factor();
                size_t end = pos_;
                pos_ = at;
                v = guarded([&] { return ops_.div(v, w); });
                pos_ = end;
            } else if (starts_atom()) {
                V w = factor();
                v = guarded([&] { return ops_.mul(v, w); });
            } else {
                return v;
            }
        }
    }

    V factor() {
        V v = atom();
        if (eat('^')) {
            skip();
            bool neg = eat('-');
            skip();
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                error("expected integer exponent");
            long e = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                e = e * 10 + (s_[pos_++] - '0');
                if (e > 1000000) error("exponent too large");
            }
            if (neg) e = -e;
            v = guarded([&] { return ops_.pow(v, e); });
        }
        return v;
    }

    V atom() {
        skip();
        if (pos_ >= s_.size()) error("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            V v = expr();
            if (!eat(')')) error("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            int64_t v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                v = v * 10 + (s_[pos_++] - '0');
                if (v > (int64_t(1) << 50)) error("integer too large");
            }
            return ops_.constant(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            size_t end = pos_;
            pos_ = start;
            V v = guarded([&] { return ops_.variable(name); });
            pos_ = end;
            return v;
        }
        error(std::string("unexpected '") + c + "'");
    }
};

template <class Ops>
auto parse_expression(Ops& ops, const std::string& text, int line = 0) {
    return ExprParser<Ops>(ops, text, line).parse();
}

}  // namespace rr
