#pragma once

#include <cassert>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fib/errors.hpp"
#include "fib/zomega.hpp"
#include "fib/ztau.hpp"

namespace fib {

/// The normal form U[u,v,k] of unitaries expressible as F/T products:
///
///   [ u            v* sqrt(tau) w^k ]
///   [ v sqrt(tau)  -u* w^k          ]
///
/// with u, v in Z[omega], k mod 10, and |u|^2 + tau |v|^2 = 1.
struct ExactUnitary {
    ZOmega u;
    ZOmega v;
    int k = 0;

    ExactUnitary() : u(ZOmega::one()), v(ZOmega::zero()), k(5) {}
    ExactUnitary(ZOmega uu, ZOmega vv, int kk)
        : u(std::move(uu)), v(std::move(vv)), k(((kk % 10) + 10) % 10) {}

    /// The identity matrix: u=1, v=0 and -w^5 = 1 in the lower right.
    static ExactUnitary identity() { return {ZOmega::one(), ZOmega::zero(), 5}; }
    /// T = diag(1, w): u=1, v=0, -w^6 = w.
    static ExactUnitary gate_t() { return {ZOmega::one(), ZOmega::zero(), 6}; }
    /// F = [[tau, sqrt(tau)],[sqrt(tau), -tau]] with tau = w^2 - w^3.
    static ExactUnitary gate_f() { return {ZOmega::from_ztau(ZTau::tau()), ZOmega::one(), 0}; }

    friend bool operator==(const ExactUnitary& a, const ExactUnitary& b) {
        return a.k == b.k && a.u == b.u && a.v == b.v;
    }
    friend bool operator!=(const ExactUnitary& a, const ExactUnitary& b) { return !(a == b); }
};

/// Checks |u|^2 + tau |v|^2 = 1 exactly.
inline bool is_exact_unitary(const ExactUnitary& m) {
    return norm_i(m.u) + ZTau::tau() * norm_i(m.v) == ZTau::one();
}

/// Exact matrix product of two unitaries in normal form.
inline ExactUnitary exact_mul(const ExactUnitary& a, const ExactUnitary& b) {
    ZOmega wk1 = omega_pow(a.k);
    ZOmega u = a.u * b.u + ZOmega::from_ztau(ZTau::tau()) * wk1 * conj(a.v) * b.v;
    ZOmega v = a.v * b.u - wk1 * conj(a.u) * b.v;
    return {u, v, a.k + b.k + 5};
}

/// Left-multiplication by T: scales the bottom row by w.
inline ExactUnitary apply_t(const ExactUnitary& m, int times = 1) {
    return {m.u, mul_omega_pow(m.v, times), m.k + times};
}

/// Left-multiplication by F.
inline ExactUnitary apply_f(const ExactUnitary& m) {
    ZOmega tau = ZOmega::from_ztau(ZTau::tau());
    return {tau * (m.u + m.v), m.u - tau * m.v, m.k + 5};
}

/// Global phase: w^s U[u,v,k] = U[u w^s, v w^s, k + 2s].
inline ExactUnitary apply_phase(const ExactUnitary& m, int s) {
    return {mul_omega_pow(m.u, s), mul_omega_pow(m.v, s), m.k + 2 * s};
}

/// G(U[u,v,k]) = G(u).
inline Integer gauss_of(const ExactUnitary& m) { return gauss_complexity(m.u); }

/// sigma_1 = w^6 diag(1, w^7) = U[w^6, 0, 4] and its inverse U[w^4, 0, 6].
inline ExactUnitary exact_sigma1() { return {omega_pow(6), ZOmega::zero(), 4}; }
inline ExactUnitary exact_sigma1_inv() { return {omega_pow(4), ZOmega::zero(), 6}; }
inline ExactUnitary exact_sigma2() {
    return exact_mul(ExactUnitary::gate_f(), exact_mul(exact_sigma1(), ExactUnitary::gate_f()));
}
inline ExactUnitary exact_sigma2_inv() {
    return exact_mul(ExactUnitary::gate_f(), exact_mul(exact_sigma1_inv(), ExactUnitary::gate_f()));
}

/// An <F,T>-circuit in the canonical shape
///   w^phase T^{texp[0]} F T^{texp[1]} F ... F T^{texp[n-1]}
/// (n-1 F letters between n T-exponent slots; exponents in {0..9}).
struct FTWord {
    int phase = 0;
    std::vector<int> texp{0};

    std::size_t f_count() const { return texp.empty() ? 0 : texp.size() - 1; }
};

inline ExactUnitary evaluate_ft_exact(const FTWord& w) {
    ExactUnitary m = apply_phase(ExactUnitary::identity(), w.phase);
    for (std::size_t i = 0; i < w.texp.size(); ++i) {
        if (i > 0) m = exact_mul(m, ExactUnitary::gate_f());
        m = exact_mul(m, apply_t(ExactUnitary::identity(), w.texp[i]));
    }
    return m;
}

inline std::string format_ft(const FTWord& w) {
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << ' ';
        first = false;
    };
    if (w.phase != 0) {
        sep();
        os << "w^" << w.phase;
    }
    for (std::size_t i = 0; i < w.texp.size(); ++i) {
        if (i > 0) {
            sep();
            os << 'F';
        }
        if (w.texp[i] != 0) {
            sep();
            os << 'T';
            if (w.texp[i] != 1) os << '^' << w.texp[i];
        }
    }
    return os.str();
}

/// Exact synthesis: finds the F/T word reproducing U exactly, phase included.
/// While G(U) > 2, left-multiplies by F T^J for the complexity-minimizing
/// J in {1..10} (ties broken toward the smallest J); the remainder is matched
/// against w^k T^j by exhaustive search. The optional trace records G after
/// every reduction step, starting with G(U).
inline FTWord exact_synthesize(const ExactUnitary& input, std::vector<Integer>* gauss_trace = nullptr) {
    if (!is_exact_unitary(input)) throw FormViolation();
    ExactUnitary m = input;
    if (gauss_trace) gauss_trace->push_back(gauss_of(m));
    std::vector<int> chosen;
    while (gauss_of(m) > 2) {
        int best_j = 1;
        Integer best_g;
        for (int j = 1; j <= 10; ++j) {
            Integer g = gauss_of(apply_f(apply_t(m, j)));
            if (j == 1 || g < best_g) {
                best_g = g;
                best_j = j;
            }
        }
        m = apply_f(apply_t(m, best_j));
        chosen.push_back(best_j);
        if (gauss_trace) gauss_trace->push_back(gauss_of(m));
    }
    // remainder is a phase times a T power: m == w^k T^j == U[w^k, 0, 5+j+2k]
    int term_k = -1, term_j = -1;
    for (int k = 0; k < 10 && term_k < 0; ++k)
        for (int j = 0; j < 10; ++j) {
            ExactUnitary cand(omega_pow(k), ZOmega::zero(), 5 + j + 2 * k);
            if (m == cand) {
                term_k = k;
                term_j = j;
                break;
            }
        }
    if (term_k < 0) throw NoTerminalForm();
    // undo the reductions: U = T^{10-J1} F T^{10-J2} F ... T^{10-Jm} F (w^k T^j)
    FTWord word;
    word.phase = term_k;
    word.texp.clear();
    for (int j : chosen) word.texp.push_back((10 - j) % 10);
    word.texp.push_back(term_j);
    return word;
}

}  // namespace fib
