#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

#include "fib/errors.hpp"
#include "fib/rng.hpp"

namespace fib {

/// Correctly-rounded real scalar at an explicit binary precision.
///
/// Precision travels with the value: binary operations round to the larger
/// of the two operand precisions, never to an ambient global setting.
class BigFloat {
  public:
    static constexpr long kMinPrecision = 64;

    explicit BigFloat(long prec = kMinPrecision) {
        mpfr_init2(v_, std::max(prec, kMinPrecision));
        mpfr_set_zero(v_, 1);
    }

    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }

    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }

    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }

    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat from(double x, long prec) {
        BigFloat r(prec);
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }

    static BigFloat from(long x, long prec) {
        BigFloat r(prec);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }

    static BigFloat from(const Integer& x, long prec) {
        BigFloat r(prec);
        mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
        return r;
    }

    /// Parses a decimal literal ("1e-10", "0.45", ...).
    static BigFloat parse(const std::string& s, long prec) {
        BigFloat r(prec);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw SyntaxError("invalid decimal literal '" + s + "'", 0);
        return r;
    }

    static BigFloat pi(long prec) {
        BigFloat r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    long precision() const { return mpfr_get_prec(v_); }

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    bool is_nan() const { return mpfr_nan_p(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// floor(x) as an exact integer.
    Integer floor_int() const {
        BigFloat f = unary(*this, mpfr_floor_nornd);
        Integer z;
        mpfr_get_z(z.get_mpz_t(), f.v_, MPFR_RNDZ);
        return z;
    }

    /// Nearest integer with ties toward +inf: floor(x + 1/2).
    Integer round_half_up() const {
        BigFloat t = *this + from(0.5, precision());
        return t.floor_int();
    }

    long ceil_long() const {
        BigFloat c = unary(*this, mpfr_ceil_nornd);
        return mpfr_get_si(c.v_, MPFR_RNDZ);
    }

    /// ceil(x) as an exact integer.
    Integer ceil_int() const {
        BigFloat c = unary(*this, mpfr_ceil_nornd);
        Integer z;
        mpfr_get_z(z.get_mpz_t(), c.v_, MPFR_RNDZ);
        return z;
    }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_add); }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_sub); }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_mul); }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_div); }

    BigFloat operator-() const {
        BigFloat r(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    BigFloat abs() const {
        BigFloat r(precision());
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }

    BigFloat sqrt() const { return unary(*this, mpfr_sqrt); }
    BigFloat sin() const { return unary(*this, mpfr_sin); }
    BigFloat cos() const { return unary(*this, mpfr_cos); }
    BigFloat tan() const { return unary(*this, mpfr_tan); }
    BigFloat log() const { return unary(*this, mpfr_log); }
    BigFloat log10() const { return unary(*this, mpfr_log10); }
    BigFloat exp() const { return unary(*this, mpfr_exp); }
    BigFloat acos() const { return unary(*this, mpfr_acos); }

    BigFloat pow(long e) const {
        BigFloat r(precision());
        mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
        return r;
    }

    static BigFloat atan2(const BigFloat& y, const BigFloat& x) {
        BigFloat r(std::max(y.precision(), x.precision()));
        mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

    /// Scientific-notation decimal string with the given significant digits.
    std::string str(int digits = 17) const {
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

  private:
    using Unary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
    using Binary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

    static int mpfr_floor_nornd(mpfr_ptr r, mpfr_srcptr x, mpfr_rnd_t) { return mpfr_floor(r, x); }
    static int mpfr_ceil_nornd(mpfr_ptr r, mpfr_srcptr x, mpfr_rnd_t) { return mpfr_ceil(r, x); }

    static BigFloat unary(const BigFloat& a, Unary f) {
        BigFloat r(a.precision());
        f(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    static BigFloat binary(const BigFloat& a, const BigFloat& b, Binary f) {
        BigFloat r(std::max(a.precision(), b.precision()));
        f(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

struct BigComplex {
    BigFloat re;
    BigFloat im;

    explicit BigComplex(long prec = BigFloat::kMinPrecision) : re(prec), im(prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

    static BigComplex from(double r, double i, long prec) {
        return {BigFloat::from(r, prec), BigFloat::from(i, prec)};
    }

    /// e^{i * angle}
    static BigComplex unit(const BigFloat& angle) { return {angle.cos(), angle.sin()}; }

    long precision() const { return std::max(re.precision(), im.precision()); }

    BigComplex conj() const { return {re, -im}; }

    BigFloat abs2() const { return re * re + im * im; }
    BigFloat abs() const { return abs2().sqrt(); }
    BigFloat arg() const { return BigFloat::atan2(im, re); }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator*(const BigFloat& s, const BigComplex& a) {
        return {s * a.re, s * a.im};
    }
    friend BigComplex operator/(const BigComplex& a, const BigFloat& s) {
        return {a.re / s, a.im / s};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        return (a * b.conj()) / b.abs2();
    }
    BigComplex operator-() const { return {-re, -im}; }
};

/// Bit precision for the compile pipeline's decimal-digit budget
/// 6*log10(1/eps) + 50.
inline long precision_for_epsilon(const BigFloat& eps) {
    const double digits = 6.0 * (-eps.log10().to_double()) + 50.0;
    const long bits = static_cast<long>(digits * 3.3219280948873626) + 16;
    return std::max<long>(bits, BigFloat::kMinPrecision);
}

}  // namespace fib
