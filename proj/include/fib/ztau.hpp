#pragma once

#include <ostream>
#include <string>

#include <gmpxx.h>

#include "fib/bigfloat.hpp"
#include "fib/errors.hpp"

namespace fib {

/// Element a + b*tau of the real ring Z[tau], tau = (sqrt(5)-1)/2.
/// Multiplication reduces with tau^2 = 1 - tau. Values are immutable in
/// spirit: every operation returns a fresh value.
class ZTau {
  public:
    ZTau() : a_(0), b_(0) {}
    ZTau(Integer a, Integer b) : a_(std::move(a)), b_(std::move(b)) {}

    static ZTau zero() { return {0, 0}; }
    static ZTau one() { return {1, 0}; }
    static ZTau tau() { return {0, 1}; }
    /// phi = 1 + tau = tau^{-1}, the golden ratio.
    static ZTau phi() { return {1, 1}; }

    const Integer& a() const { return a_; }
    const Integer& b() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }

    friend ZTau operator+(const ZTau& x, const ZTau& y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
    friend ZTau operator-(const ZTau& x, const ZTau& y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
    ZTau operator-() const { return {-a_, -b_}; }

    friend ZTau operator*(const ZTau& x, const ZTau& y) {
        // (a1 + b1 t)(a2 + b2 t), t^2 = 1 - t
        Integer cross = x.a_ * y.b_ + x.b_ * y.a_;
        Integer bb = x.b_ * y.b_;
        return {x.a_ * y.a_ + bb, cross - bb};
    }

    friend bool operator==(const ZTau& x, const ZTau& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const ZTau& x, const ZTau& y) { return !(x == y); }

    friend std::ostream& operator<<(std::ostream& os, const ZTau& x);

  private:
    Integer a_, b_;
};

/// Galois automorphism of Z[tau]: tau -> -(1 + tau).
inline ZTau bullet(const ZTau& x) { return {x.a() - x.b(), -x.b()}; }

/// N_tau(x) = x * bullet(x) = a^2 - ab - b^2, a rational integer.
inline Integer norm_tau(const ZTau& x) {
    return x.a() * x.a() - x.a() * x.b() - x.b() * x.b();
}

/// Sign of the exact real embedding a + b*(sqrt(5)-1)/2, by integer case
/// analysis on (2a - b) + b*sqrt(5); no floating point involved.
inline int ztau_sign(const ZTau& x) {
    Integer s = 2 * x.a() - x.b();
    const Integer& t = x.b();
    const int ss = sgn(s), ts = sgn(t);
    if (ss >= 0 && ts >= 0) return (ss == 0 && ts == 0) ? 0 : 1;
    if (ss <= 0 && ts <= 0) return -1;
    // opposite signs: compare s^2 against 5 t^2, i.e. the sign of 4*N_tau
    const int n = sgn(norm_tau(x));
    return ss > 0 ? n : -n;
}

inline bool operator<(const ZTau& x, const ZTau& y) { return ztau_sign(x - y) < 0; }
inline bool operator>(const ZTau& x, const ZTau& y) { return ztau_sign(x - y) > 0; }

/// Exact quotient x / y in Z[tau]; throws NotDivisible if none exists.
inline ZTau ztau_div_exact(const ZTau& x, const ZTau& y) {
    if (y.is_zero()) throw NotDivisible();
    ZTau num = x * bullet(y);
    Integer den = norm_tau(y);
    Integer qa, ra, qb, rb;
    mpz_tdiv_qr(qa.get_mpz_t(), ra.get_mpz_t(), num.a().get_mpz_t(), den.get_mpz_t());
    mpz_tdiv_qr(qb.get_mpz_t(), rb.get_mpz_t(), num.b().get_mpz_t(), den.get_mpz_t());
    if (ra != 0 || rb != 0) throw NotDivisible();
    return {qa, qb};
}

inline bool ztau_divides(const ZTau& d, const ZTau& x) {
    if (d.is_zero()) return x.is_zero();
    ZTau num = x * bullet(d);
    Integer den = norm_tau(d);
    return mpz_divisible_p(num.a().get_mpz_t(), den.get_mpz_t()) &&
           mpz_divisible_p(num.b().get_mpz_t(), den.get_mpz_t());
}

/// x^e for e >= 0.
inline ZTau ztau_pow(ZTau x, unsigned long e) {
    ZTau r = ZTau::one();
    while (e > 0) {
        if (e & 1) r = r * x;
        x = x * x;
        e >>= 1;
    }
    return r;
}

/// tau^k for any integer k (tau is a unit; tau^{-1} = 1 + tau).
inline ZTau tau_pow(long k) {
    return k >= 0 ? ztau_pow(ZTau::tau(), static_cast<unsigned long>(k))
                  : ztau_pow(ZTau::phi(), static_cast<unsigned long>(-k));
}

inline bool is_unit(const ZTau& x) {
    Integer n = norm_tau(x);
    return n == 1 || n == -1;
}

/// High-precision value of the real embedding.
inline BigFloat to_real(const ZTau& x, long prec) {
    BigFloat tau = (BigFloat::from(5L, prec).sqrt() - BigFloat::from(1L, prec)) /
                   BigFloat::from(2L, prec);
    return BigFloat::from(x.a(), prec) + BigFloat::from(x.b(), prec) * tau;
}

inline std::ostream& operator<<(std::ostream& os, const ZTau& x) {
    os << x.a_.get_str();
    if (x.b_ >= 0)
        os << '+' << x.b_.get_str();
    else
        os << x.b_.get_str();
    return os << "*t";
}

inline std::string to_string(const ZTau& x) {
    return x.a().get_str() + (x.b() >= 0 ? "+" : "") + x.b().get_str() + "*t";
}

}  // namespace fib
