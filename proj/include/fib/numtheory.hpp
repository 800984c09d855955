#pragma once

#include <cassert>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fib/errors.hpp"
#include "fib/rng.hpp"
#include "fib/zomega.hpp"
#include "fib/ztau.hpp"

namespace fib {

/// One factor of a Z[tau] element together with its multiplicity.
struct Factor {
    ZTau value;
    int multiplicity;
};

using FactorList = std::vector<Factor>;

inline constexpr int kDefaultPrimalityRounds = 40;

/// Miller-Rabin probable-prime test; false-positive probability <= 4^-rounds.
/// Witnesses come from the explicit RNG, so the verdict is deterministic for
/// a given seed.
inline bool is_prime(const Integer& n, Rng& rng, int rounds = kDefaultPrimalityRounds) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13}) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) return false;
    }
    Integer d = n - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    d >>= r;
    Integer nm1 = n - 1;
    for (int round = 0; round < rounds; ++round) {
        Integer a = rng.between(2, n - 2);
        Integer x;
        mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        if (x == 1 || x == nm1) continue;
        bool witness = true;
        for (unsigned long i = 0; i + 1 < r; ++i) {
            x = x * x % n;
            if (x == nm1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

/// Square root of n modulo an odd prime p. Returns r with r^2 = n (mod p),
/// 0 <= r < p; the other root is p - r. The quadratic non-residue needed by
/// the main loop is found by randomized trial from the given RNG.
inline Integer tonelli_shanks(const Integer& n_in, const Integer& p, Rng& rng) {
    Integer n = n_in % p;
    if (n < 0) n += p;
    if (n == 0) return 0;
    auto powm = [&p](const Integer& base, const Integer& e) {
        Integer r;
        mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return r;
    };
    Integer pm1 = p - 1;
    if (powm(n, pm1 / 2) != 1) throw NotAResidue();
    unsigned long s = mpz_scan1(pm1.get_mpz_t(), 0);
    Integer q = pm1 >> s;
    if (s == 1) {
        Integer r = powm(n, (p + 1) / 4);
        return r;
    }
    Integer z;
    do {
        z = rng.between(2, p - 1);
    } while (powm(z, pm1 / 2) != pm1);
    Integer c = powm(z, q);
    Integer r = powm(n, (q + 1) / 2);
    Integer t = powm(n, q);
    unsigned long m = s;
    while (t != 1) {
        Integer t2 = t;
        unsigned long i = 0;
        do {
            t2 = t2 * t2 % p;
            ++i;
        } while (t2 != 1 && i < m);
        if (i >= m) throw NotAResidue();
        Integer b = c;
        for (unsigned long j = 0; j + 1 < m - i; ++j) b = b * b % p;
        r = r * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return r;
}

/// Square root of tau - 2 modulo xi: returns M with M^2 = tau - 2 in
/// Z[tau]/(xi), realized as a plain integer root modulo p = N_tau(xi).
/// Preconditions: p an odd prime with p = 1 (mod 5).
inline Integer splitting_root(const ZTau& xi, Rng& rng) {
    Integer p = norm_tau(xi);
    assert(p > 2 && p % 5 == 1);
    Integer b = xi.b() % p;
    if (b < 0) b += p;
    assert(b != 0);
    Integer b1;
    if (mpz_invert(b1.get_mpz_t(), b.get_mpz_t(), p.get_mpz_t()) == 0) throw Error("b not invertible mod p");
    Integer radicand = (-xi.a() * b1 - 2) % p;
    if (radicand < 0) radicand += p;
    return tonelli_shanks(radicand, p, rng);
}

namespace detail {

/// Nearest-quotient division in Z[omega]: returns q minimizing the absolute
/// norm of x - q*y over a small box around the componentwise rounding of the
/// field element x/y. The ring is norm-Euclidean, so a strictly norm-reducing
/// remainder exists; the widening search makes the descent robust at the
/// corners where plain rounding is not enough.
inline ZOmega zomega_div_round(const ZOmega& x, const ZOmega& y) {
    ZOmega num = x * conj(y) * ZOmega::from_ztau(bullet(norm_i(y)));
    Integer den = norm_tau(norm_i(y));  // > 0
    Integer q0[4];
    for (int i = 0; i < 4; ++i) {
        Integer n2 = 2 * num.coeff(i) + den;
        mpz_fdiv_q(q0[i].get_mpz_t(), n2.get_mpz_t(), Integer(2 * den).get_mpz_t());
    }
    Integer ny = norm_tau(norm_i(y));
    for (int radius = 0; radius <= 2; ++radius) {
        bool have = false;
        ZOmega best;
        Integer best_norm;
        for (int da = -radius; da <= radius; ++da)
            for (int db = -radius; db <= radius; ++db)
                for (int dc = -radius; dc <= radius; ++dc)
                    for (int dd = -radius; dd <= radius; ++dd) {
                        ZOmega q(q0[0] + da, q0[1] + db, q0[2] + dc, q0[3] + dd);
                        Integer nr = norm_abs(x - q * y);
                        if (!have || nr < best_norm) {
                            have = true;
                            best = q;
                            best_norm = nr;
                        }
                    }
        if (best_norm < ny) return best;
    }
    throw Error("division with remainder failed to reduce the norm");
}

}  // namespace detail

/// Greatest common divisor in Z[omega]. The result is unique only up to a
/// unit; callers must compare results up to associates.
inline ZOmega binary_gcd(ZOmega x, ZOmega y) {
    while (!y.is_zero()) {
        ZOmega q = detail::zomega_div_round(x, y);
        ZOmega r = x - q * y;
        x = y;
        y = r;
    }
    return x;
}

/// Discrete logarithm in the unit group of Z[tau]: writes a unit u as
/// s * tau^k with s = +-1. Throws NotAUnit otherwise.
inline std::pair<int, long> unit_dlog(const ZTau& u) {
    if (!is_unit(u)) throw NotAUnit();
    Integer a = u.a(), b = u.b();
    int s = 1;
    long k = 0;
    if (a < 0 || (a == 0 && b < 0)) {
        a = -a;
        b = -b;
        s = -s;
    }
    // invariant: u = s * (a + b tau) * tau^k
    Integer mu = a * b;
    while (mu > 1 || mu < -1) {
        if (mu > 1) {
            Integer na = b, nb = a - b;  // multiply by tau
            a = na;
            b = nb;
            k -= 1;
        } else {
            Integer na = a + b, nb = a;  // multiply by tau^{-1} = 1 + tau
            a = na;
            b = nb;
            k += 1;
        }
        mu = a * b;
    }
    // match the finite table of units with |a*b| <= 1
    struct Entry {
        long aa, bb, j;
        int sg;
    };
    static const Entry table[] = {
        {1, 0, 0, 1},  {-1, 0, 0, -1}, {0, 1, 1, 1},   {0, -1, 1, -1},
        {1, -1, 2, 1}, {-1, 1, 2, -1}, {1, 1, -1, 1},  {-1, -1, -1, -1},
    };
    for (const auto& e : table) {
        if (a == e.aa && b == e.bb) {
            int sign = s * e.sg;
            long kk = k + e.j;
            // reconstruction check
            ZTau rec = tau_pow(kk);
            if (sign < 0) rec = -rec;
            if (rec != u) throw NotAUnit();
            return {sign, kk};
        }
    }
    throw NotAUnit();
}

/// Minimum-effort factorizer for Z[tau]: pulls out square (or 5 x square)
/// integer content and one ramified factor 2-tau when the norm allows.
/// Emitted factors are sign-normalized so each is positive under the real
/// embedding; unit content never enters the list.
inline FactorList easy_factor(const ZTau& xi) {
    assert(!xi.is_zero());
    auto normalized = [](ZTau v) { return ztau_sign(v) < 0 ? -v : v; };
    Integer c = gcd(xi.a(), xi.b());
    ZTau xi1(xi.a() / c, xi.b() / c);
    FactorList ret;
    if (mpz_perfect_square_p(c.get_mpz_t())) {
        Integer d = sqrt(c);
        if (d > 1) ret.push_back({ZTau(d, 0), 2});
    } else if (mpz_divisible_ui_p(c.get_mpz_t(), 5) && mpz_perfect_square_p(Integer(c / 5).get_mpz_t())) {
        Integer d = sqrt(Integer(c / 5));
        if (d > 1) ret.push_back({ZTau(d, 0), 2});
        ret.push_back({ZTau(5, 0), 1});
    } else {
        return {{normalized(xi), 1}};
    }
    Integer n = norm_tau(xi1);
    if (mpz_divisible_ui_p(n.get_mpz_t(), 5)) {
        ZTau two_minus_tau(2, -1);
        ZTau xi2 = ztau_div_exact(xi1, two_minus_tau);
        ret.push_back({two_minus_tau, 1});
        ret.push_back({normalized(xi2), 1});
    } else {
        ZTau norm_xi1 = normalized(xi1);
        if (norm_xi1 != ZTau::one()) ret.push_back({norm_xi1, 1});
    }
    return ret;
}

/// True iff every odd-multiplicity factor is 5 or has a probable-prime norm
/// p with p mod 5 in {0, 1} -- the class of norm equations solvable in
/// probabilistic polynomial time.
inline bool easy_solvable(const FactorList& fl, Rng& rng, int rounds = kDefaultPrimalityRounds) {
    for (const auto& f : fl) {
        if (f.multiplicity % 2 == 0) continue;
        if (f.value == ZTau(5, 0)) continue;
        Integer p = norm_tau(f.value);
        if (!is_prime(p, rng, rounds)) return false;
        Integer r = p % 5;
        if (r != 0 && r != 1) return false;
    }
    return true;
}

/// Solves |x|^2 = xi over Z[omega] for the easy-solvable class, factor by
/// factor. Returns std::nullopt when xi is negative under either real
/// embedding or when the factorization is not easy-solvable; randomness only
/// affects which of several valid solutions comes back.
inline std::optional<ZOmega> solve_norm_equation(const ZTau& xi, Rng& rng) {
    if (xi.is_zero()) return ZOmega::zero();
    if (ztau_sign(xi) < 0 || ztau_sign(bullet(xi)) < 0) return std::nullopt;
    FactorList fl = easy_factor(xi);
    if (!easy_solvable(fl, rng)) return std::nullopt;
    const ZTau five(5, 0);
    const ZTau two_minus_tau(2, -1);
    ZOmega x = ZOmega::one();
    for (const auto& f : fl) {
        if (f.multiplicity / 2 > 0)
            x = x * ZOmega::from_ztau(ztau_pow(f.value, static_cast<unsigned long>(f.multiplicity / 2)));
        if (f.multiplicity % 2 == 0) continue;
        if (f.value == five) {
            x = x * ZOmega::from_ztau(ZTau(1, 2));  // 1 + 2 tau = sqrt(5)
            continue;
        }
        if (f.value == two_minus_tau) {
            x = x * ZOmega::theta();  // |theta|^2 = 2 - tau
            continue;
        }
        Integer p = norm_tau(f.value);
        ZOmega y;
        if (p == 5) {
            // a unit multiple of the ramified prime; reduce to the 2-tau case
            ZTau u = ztau_div_exact(f.value, two_minus_tau);
            auto [s, m] = unit_dlog(u);
            if (s != 1 || m % 2 != 0) throw Error("norm equation: factor not totally positive");
            x = x * ZOmega::from_ztau(tau_pow(m / 2)) * ZOmega::theta();
            continue;
        }
        Integer root = splitting_root(f.value, rng);
        y = binary_gcd(ZOmega::from_ztau(f.value), ZOmega(root, 0, 0, 0) - ZOmega::theta());
        ZTau u = ztau_div_exact(f.value, norm_i(y));
        auto [s, m] = unit_dlog(u);
        if (s != 1 || m % 2 != 0) throw Error("norm equation: unexpected unit class");
        x = x * ZOmega::from_ztau(tau_pow(m / 2)) * y;
    }
    return x;
}

}  // namespace fib
