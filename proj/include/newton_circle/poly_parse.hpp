// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * Text form of Poly2: terms `[+-][c*]m1[^a][*m2[^b]]` joined by `+`/`-`,
 * whitespace ignored, e.g. "2*m1*m2 - m2^4". Factors inside a term may come
 * in any order and repeat (m1*m1 == m1^2); a bare integer is a constant term.
 */

#include "errors.hpp"
#include "poly.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace nc {

namespace detail {

class PolyParser {
public:
    explicit PolyParser(std::string_view text) : text_(text) {}

    Poly2 parse() {
        Poly2 p;
        skip();
        if (pos_ == text_.size()) fail("empty polynomial");
        bool first = true;
        while (pos_ < text_.size()) {
            int sign = 1;
            if (text_[pos_] == '+' || text_[pos_] == '-') {
                sign = text_[pos_] == '-' ? -1 : 1;
                ++pos_;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            term(p, sign);
            first = false;
            skip();
        }
        return p;
    }

private:
    [[noreturn]] void fail(std::string const& what) const { throw ParseError("polynomial: " + what, pos_); }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    BigInt integer() {
        std::size_t const start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected an integer");
        return BigInt(std::string(text_.substr(start, pos_ - start)));
    }

    void term(Poly2& p, int sign) {
        BigInt c = sign;
        Exponent e{0, 0};
        bool any = false;
        while (true) {
            skip();
            if (pos_ >= text_.size()) break;
            char const ch = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                c *= integer();
            } else if (ch == 'm') {
                ++pos_;
                if (pos_ >= text_.size() || (text_[pos_] != '1' && text_[pos_] != '2')) fail("expected m1 or m2");
                int const axis = text_[pos_] - '0';
                ++pos_;
                skip();
                int k = 1;
                if (pos_ < text_.size() && text_[pos_] == '^') {
                    ++pos_;
                    skip();
                    BigInt const v = integer();
                    if (v > kMaxExponent) fail("exponent larger than 64");
                    k = static_cast<int>(v);
                }
                (axis == 1 ? e.e1 : e.e2) += k;
                if (e.e1 > kMaxExponent || e.e2 > kMaxExponent) fail("exponent larger than 64");
            } else {
                fail(std::string("unexpected character '") + ch + "'");
            }
            any = true;
            skip();
            if (pos_ < text_.size() && text_[pos_] == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        if (!any) fail("empty term");
        p.add_term(e, c);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses the polynomial text form; throws ParseError carrying the offending offset.
inline Poly2 parse_poly(std::string_view text) { return detail::PolyParser(text).parse(); }

} // namespace nc
