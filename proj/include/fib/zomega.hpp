#pragma once

#include <array>
#include <cassert>
#include <ostream>
#include <string>

#include <gmpxx.h>

#include "fib/bigfloat.hpp"
#include "fib/errors.hpp"
#include "fib/ztau.hpp"

namespace fib {

/// Element a + b*w + c*w^2 + d*w^3 of the cyclotomic ring Z[w], w = e^{i pi/5},
/// stored in the canonical basis {1, w, w^2, w^3} using the reductions
/// w^4 = -1 + w - w^2 + w^3 and w^5 = -1.
class ZOmega {
  public:
    ZOmega() : c_{0, 0, 0, 0} {}
    ZOmega(Integer a, Integer b, Integer c, Integer d)
        : c_{std::move(a), std::move(b), std::move(c), std::move(d)} {}

    static ZOmega zero() { return {}; }
    static ZOmega one() { return {1, 0, 0, 0}; }
    static ZOmega omega() { return {0, 1, 0, 0}; }
    /// The primitive element theta = w + w^4 = -1 + 2w - w^2 + w^3; theta^2
    /// embeds tau - 2 and theta is purely imaginary.
    static ZOmega theta() { return {-1, 2, -1, 1}; }

    /// Ring embedding of Z[tau] via tau = w^2 - w^3.
    static ZOmega from_ztau(const ZTau& x) { return {x.a(), 0, x.b(), -x.b()}; }

    const Integer& a() const { return c_[0]; }
    const Integer& b() const { return c_[1]; }
    const Integer& c() const { return c_[2]; }
    const Integer& d() const { return c_[3]; }
    const Integer& coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }

    bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

    /// True when the value lies in the image of the Z[tau] embedding.
    bool in_ztau_image() const { return c_[1] == 0 && c_[3] == -c_[2]; }

    /// Inverse of from_ztau; precondition in_ztau_image().
    ZTau to_ztau() const {
        assert(in_ztau_image());
        return {c_[0], c_[2]};
    }

    friend ZOmega operator+(const ZOmega& x, const ZOmega& y) {
        return {x.c_[0] + y.c_[0], x.c_[1] + y.c_[1], x.c_[2] + y.c_[2], x.c_[3] + y.c_[3]};
    }
    friend ZOmega operator-(const ZOmega& x, const ZOmega& y) {
        return {x.c_[0] - y.c_[0], x.c_[1] - y.c_[1], x.c_[2] - y.c_[2], x.c_[3] - y.c_[3]};
    }
    ZOmega operator-() const { return {-c_[0], -c_[1], -c_[2], -c_[3]}; }

    friend ZOmega operator*(const ZOmega& x, const ZOmega& y) {
        std::array<Integer, 7> p{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) p[static_cast<std::size_t>(i + j)] += x.c_[static_cast<std::size_t>(i)] * y.c_[static_cast<std::size_t>(j)];
        // fold w^4, w^5, w^6 back into the canonical basis
        return {p[0] - p[4] - p[5], p[1] + p[4] - p[6], p[2] - p[4], p[3] + p[4]};
    }

    friend bool operator==(const ZOmega& x, const ZOmega& y) { return x.c_ == y.c_; }
    friend bool operator!=(const ZOmega& x, const ZOmega& y) { return !(x == y); }

    /// Total order on coordinate tuples (not an arithmetic order); used for
    /// canonical-form tie-breaking and deterministic containers.
    friend bool operator<(const ZOmega& x, const ZOmega& y) { return x.c_ < y.c_; }

  private:
    std::array<Integer, 4> c_;
};

/// Galois automorphism w -> w^3 (the "bullet" map); applied twice it gives
/// complex conjugation.
inline ZOmega bullet(const ZOmega& x) {
    return {x.a() + x.d(), -x.c() - x.d(), x.d(), x.b() - x.d()};
}

/// Complex conjugation: w* = w^{-1} = 1 - w + w^2 - w^3.
inline ZOmega conj(const ZOmega& x) {
    return {x.a() + x.b(), -x.b(), x.b() - x.d(), -x.b() - x.c()};
}

/// Multiplication by w.
inline ZOmega mul_omega(const ZOmega& x) {
    return {-x.d(), x.a() + x.d(), x.b() - x.d(), x.c() + x.d()};
}

/// x * w^k.
inline ZOmega mul_omega_pow(ZOmega x, int k) {
    k %= 10;
    if (k < 0) k += 10;
    if (k >= 5) {
        x = -x;
        k -= 5;
    }
    for (int i = 0; i < k; ++i) x = mul_omega(x);
    return x;
}

inline ZOmega omega_pow(int k) { return mul_omega_pow(ZOmega::one(), k); }

/// Relative norm N_i(x) = x * conj(x) = |x|^2, landing in Z[tau].
inline ZTau norm_i(const ZOmega& x) {
    ZOmega p = x * conj(x);
    if (!p.in_ztau_image()) throw FormViolation();
    return p.to_ztau();
}

/// Gauss complexity G(x) = N_i(x) + bullet(N_i(x)), a rational integer.
inline Integer gauss_complexity(const ZOmega& x) {
    ZTau n = norm_i(x);
    return 2 * n.a() - n.b();
}

inline ZOmega zomega_div_exact(const ZOmega& x, const ZOmega& y) {
    if (y.is_zero()) throw NotDivisible();
    ZOmega num = x * conj(y);
    ZTau n = norm_i(y);
    // divide by the Z[tau] norm: multiply by its adjoint, divide by N_tau
    num = num * ZOmega::from_ztau(bullet(n));
    Integer den = norm_tau(n);
    Integer q[4];
    for (int i = 0; i < 4; ++i) {
        Integer r;
        mpz_tdiv_qr(q[i].get_mpz_t(), r.get_mpz_t(), num.coeff(i).get_mpz_t(), den.get_mpz_t());
        if (r != 0) throw NotDivisible();
    }
    return {q[0], q[1], q[2], q[3]};
}

inline bool zomega_divides(const ZOmega& d, const ZOmega& x) {
    if (d.is_zero()) return x.is_zero();
    ZOmega num = x * conj(d) * ZOmega::from_ztau(bullet(norm_i(d)));
    Integer den = norm_tau(norm_i(d));
    for (int i = 0; i < 4; ++i)
        if (!mpz_divisible_p(num.coeff(i).get_mpz_t(), den.get_mpz_t())) return false;
    return true;
}

/// Absolute norm N_tau(N_i(x)) = |x|^2 |bullet(x)|^2 >= 0.
inline Integer norm_abs(const ZOmega& x) { return norm_tau(norm_i(x)); }

/// High-precision numeric embedding with w = e^{i pi/5}.
inline BigComplex to_complex(const ZOmega& x, long prec) {
    BigFloat angle = BigFloat::pi(prec) / BigFloat::from(5L, prec);
    BigComplex w = BigComplex::unit(angle);
    BigComplex acc = BigComplex::from(0, 0, prec);
    for (int i = 3; i >= 0; --i) {
        acc = acc * w;
        acc.re = acc.re + BigFloat::from(x.coeff(i), prec);
    }
    return acc;
}

inline std::ostream& operator<<(std::ostream& os, const ZOmega& x) {
    auto term = [&os](const Integer& v, const char* sym, bool first) {
        if (!first && v >= 0) os << '+';
        os << v.get_str() << sym;
    };
    term(x.a(), "", true);
    term(x.b(), "*w", false);
    term(x.c(), "*w2", false);
    term(x.d(), "*w3", false);
    return os;
}

inline std::string to_string(const ZOmega& x) {
    auto piece = [](const Integer& v, const char* sym) {
        return (v >= 0 ? "+" : "") + v.get_str() + sym;
    };
    return x.a().get_str() + piece(x.b(), "*w") + piece(x.c(), "*w2") + piece(x.d(), "*w3");
}

}  // namespace fib
