#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "fib/errors.hpp"
#include "fib/zomega.hpp"
#include "fib/ztau.hpp"

namespace fib {

namespace detail {

struct RingTerm {
    Integer coeff;
    std::string symbol;  // "", "t", "w", "w2", "w3"
};

/// Splits "760-780*t" style text into signed coefficient/symbol terms.
inline std::vector<RingTerm> parse_ring_terms(const std::string& text) {
    std::vector<RingTerm> terms;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i == text.size()) throw SyntaxError("empty ring element", i);
    while (i < text.size()) {
        skip_ws();
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            if (text[i] == '-') sign = -1;
            ++i;
            skip_ws();
        } else if (!terms.empty()) {
            throw SyntaxError("expected '+' or '-' between terms", i);
        }
        std::string digits;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
        std::string sym;
        std::size_t mark = i;
        if (i < text.size() && (text[i] == '*' || text[i] == 't' || text[i] == 'w')) {
            if (text[i] == '*') ++i;
            if (i >= text.size() || (text[i] != 't' && text[i] != 'w'))
                throw SyntaxError("expected symbol after '*'", i);
            sym += text[i++];
            if (sym == "w" && i < text.size() && (text[i] == '2' || text[i] == '3')) sym += text[i++];
        }
        if (digits.empty() && sym.empty()) throw SyntaxError("expected integer or symbol", mark);
        Integer c = digits.empty() ? Integer(1) : Integer(digits);
        terms.push_back({sign < 0 ? Integer(-c) : c, sym});
        skip_ws();
    }
    return terms;
}

}  // namespace detail

inline ZTau parse_ztau(const std::string& text) {
    Integer a = 0, b = 0;
    for (const auto& t : detail::parse_ring_terms(text)) {
        if (t.symbol.empty())
            a += t.coeff;
        else if (t.symbol == "t")
            b += t.coeff;
        else
            throw SyntaxError("symbol '" + t.symbol + "' not valid in Z[tau]", 0);
    }
    return {a, b};
}

inline ZOmega parse_zomega(const std::string& text) {
    Integer c[4] = {0, 0, 0, 0};
    for (const auto& t : detail::parse_ring_terms(text)) {
        if (t.symbol.empty())
            c[0] += t.coeff;
        else if (t.symbol == "w")
            c[1] += t.coeff;
        else if (t.symbol == "w2")
            c[2] += t.coeff;
        else if (t.symbol == "w3")
            c[3] += t.coeff;
        else if (t.symbol == "t") {
            c[2] += t.coeff;  // tau = w^2 - w^3
            c[3] -= t.coeff;
        } else
            throw SyntaxError("unknown symbol '" + t.symbol + "'", 0);
    }
    return {c[0], c[1], c[2], c[3]};
}

}  // namespace fib
