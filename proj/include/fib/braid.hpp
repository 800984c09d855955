#pragma once

#include <cctype>
#include <cstdlib>
#include <string>
#include <vector>

#include "fib/errors.hpp"
#include "fib/exact.hpp"

namespace fib {

/// One run of a braid generator: gen is 1 or 2, exp is a nonzero exponent
/// in the balanced range [-5, 5] (sigma_i^10 is the identity).
struct BraidItem {
    int gen;
    int exp;

    friend bool operator==(const BraidItem& a, const BraidItem& b) {
        return a.gen == b.gen && a.exp == b.exp;
    }
};

using BraidWord = std::vector<BraidItem>;

/// Reduces e mod 10 into (-5, 5].
inline int balanced_exponent(long e) {
    int r = static_cast<int>(((e % 10) + 10) % 10);
    return r > 5 ? r - 10 : r;
}

/// Merges adjacent runs of the same generator, balances exponents, and drops
/// empty runs. Idempotent; never increases the gate count.
inline BraidWord normalize_braid(const BraidWord& w) {
    BraidWord out;
    for (const BraidItem& item : w) {
        long e = item.exp;
        if (!out.empty() && out.back().gen == item.gen) {
            e += out.back().exp;
            out.pop_back();
        }
        // out alternates generators, so at most one merge is ever needed; a
        // vanishing run leaves the tail alternating and the next input item
        // re-triggers the merge check.
        int r = balanced_exponent(e);
        if (r != 0) out.push_back({item.gen, r});
    }
    return out;
}

/// Total sigma-gate count: sum of |exp| over the normalized word.
inline long sigma_count(const BraidWord& w) {
    long n = 0;
    for (const BraidItem& item : w) n += std::abs(item.exp);
    return n;
}

/// Converts an F/T word to a braid, dropping the global phase:
/// T^e -> sigma_1^{3e mod 10}, F -> sigma_1 sigma_2 sigma_1.
inline BraidWord ft_to_braid(const FTWord& w) {
    BraidWord out;
    for (std::size_t i = 0; i < w.texp.size(); ++i) {
        if (i > 0) {
            out.push_back({1, 1});
            out.push_back({2, 1});
            out.push_back({1, 1});
        }
        int e = balanced_exponent(3L * w.texp[i]);
        if (e != 0) out.push_back({1, e});
    }
    return normalize_braid(out);
}

/// Exact unitary of a braid word.
inline ExactUnitary evaluate_braid_exact(const BraidWord& w) {
    ExactUnitary m = ExactUnitary::identity();
    for (const BraidItem& item : w) {
        ExactUnitary g = item.exp > 0 ? (item.gen == 1 ? exact_sigma1() : exact_sigma2())
                                      : (item.gen == 1 ? exact_sigma1_inv() : exact_sigma2_inv());
        for (int i = 0; i < std::abs(item.exp); ++i) m = exact_mul(m, g);
    }
    return m;
}

inline std::string format_braid(const BraidWord& w) {
    std::string out;
    for (const BraidItem& item : w) {
        if (!out.empty()) out += ' ';
        out += item.gen == 1 ? "s1" : "s2";
        if (item.exp != 1) out += "^" + std::to_string(item.exp);
    }
    return out;
}

/// Parses the textual grammar: word := item (SP item)*;
/// item := ("s1"|"s2") ("^" signed-int)?, exponent in [-5,5] \ {0}.
inline BraidWord parse_braid(const std::string& text) {
    BraidWord out;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] != 's') throw SyntaxError("expected 's1' or 's2'", i);
        ++i;
        if (i >= text.size() || (text[i] != '1' && text[i] != '2'))
            throw SyntaxError("expected generator index 1 or 2", i);
        int gen = text[i] - '0';
        ++i;
        int exp = 1;
        if (i < text.size() && text[i] == '^') {
            std::size_t mark = ++i;
            int sign = 1;
            if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
                if (text[i] == '-') sign = -1;
                ++i;
            }
            if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                throw SyntaxError("expected exponent digits", i);
            long v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + (text[i] - '0');
                if (v > 1000) throw SyntaxError("exponent out of range", mark);
                ++i;
            }
            exp = sign * static_cast<int>(v);
            if (exp == 0 || exp < -5 || exp > 5) throw SyntaxError("exponent must be in [-5,5] and nonzero", mark);
        }
        out.push_back({gen, exp});
        if (i < text.size()) {
            if (!std::isspace(static_cast<unsigned char>(text[i])))
                throw SyntaxError("expected space between items", i);
            skip_ws();
            if (i == text.size()) throw SyntaxError("trailing whitespace after item", i);
        }
    }
    return out;
}

}  // namespace fib
