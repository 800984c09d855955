#pragma once

#include <cstdlib>
#include <string>

#include "fib/bigfloat.hpp"
#include "fib/braid.hpp"
#include "fib/exact.hpp"

namespace fib {

/// 2x2 complex matrix at a stated working precision.
struct Matrix2 {
    BigComplex a, b, c, d;  // [[a, b], [c, d]]

    explicit Matrix2(long prec = BigFloat::kMinPrecision) : a(prec), b(prec), c(prec), d(prec) {}
    Matrix2(BigComplex m00, BigComplex m01, BigComplex m10, BigComplex m11)
        : a(std::move(m00)), b(std::move(m01)), c(std::move(m10)), d(std::move(m11)) {}

    static Matrix2 identity(long prec) {
        Matrix2 m(prec);
        m.a = BigComplex::from(1, 0, prec);
        m.d = BigComplex::from(1, 0, prec);
        return m;
    }

    Matrix2 adjoint() const { return {a.conj(), c.conj(), b.conj(), d.conj()}; }

    friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }

    long precision() const { return a.precision(); }
};

namespace detail {

inline BigComplex omega_unit(int k, long prec) {
    BigFloat angle = BigFloat::from(static_cast<long>(k), prec) * BigFloat::pi(prec) / BigFloat::from(5L, prec);
    return BigComplex::unit(angle);
}

inline BigFloat tau_value(long prec) {
    return (BigFloat::from(5L, prec).sqrt() - BigFloat::from(1L, prec)) / BigFloat::from(2L, prec);
}

}  // namespace detail

/// F = [[tau, sqrt(tau)], [sqrt(tau), -tau]].
inline Matrix2 gate_f(long prec) {
    BigFloat t = detail::tau_value(prec);
    BigFloat st = t.sqrt();
    BigFloat z = BigFloat::from(0L, prec);
    return {{t, z}, {st, z}, {st, z}, {-t, z}};
}

/// T = diag(1, w).
inline Matrix2 gate_t(long prec) {
    Matrix2 m = Matrix2::identity(prec);
    m.d = detail::omega_unit(1, prec);
    return m;
}

/// sigma_1 = w^6 diag(1, w^7) = diag(w^6, w^13).
inline Matrix2 gate_sigma1(long prec) {
    Matrix2 m(prec);
    m.a = detail::omega_unit(6, prec);
    m.d = detail::omega_unit(13, prec);
    return m;
}

/// sigma_2 = F sigma_1 F.
inline Matrix2 gate_sigma2(long prec) {
    Matrix2 f = gate_f(prec);
    return f * gate_sigma1(prec) * f;
}

inline Matrix2 evaluate_exact(const ExactUnitary& m, long prec) {
    BigFloat st = detail::tau_value(prec).sqrt();
    BigComplex wk = detail::omega_unit(m.k, prec);
    BigComplex u = to_complex(m.u, prec);
    BigComplex v = to_complex(m.v, prec);
    return {u, st * (v.conj() * wk), st * v, -(u.conj() * wk)};
}

inline Matrix2 evaluate_ft(const FTWord& w, long prec) {
    Matrix2 m = Matrix2::identity(prec);
    BigComplex phase = detail::omega_unit(w.phase, prec);
    m.a = m.a * phase;
    m.d = m.d * phase;
    Matrix2 f = gate_f(prec);
    for (std::size_t i = 0; i < w.texp.size(); ++i) {
        if (i > 0) m = m * f;
        if (w.texp[i] != 0) {
            // T^e is diag(1, w^e); fold it in column-wise
            BigComplex we = detail::omega_unit(w.texp[i], prec);
            m.b = m.b * we;
            m.d = m.d * we;
        }
    }
    return m;
}

inline Matrix2 evaluate_braid(const BraidWord& w, long prec) {
    Matrix2 m = Matrix2::identity(prec);
    Matrix2 s1 = gate_sigma1(prec);
    Matrix2 s2 = gate_sigma2(prec);
    Matrix2 s1i = s1.adjoint();
    Matrix2 s2i = s2.adjoint();
    for (const BraidItem& item : w) {
        const Matrix2& g = item.exp > 0 ? (item.gen == 1 ? s1 : s2) : (item.gen == 1 ? s1i : s2i);
        for (int i = 0; i < std::abs(item.exp); ++i) m = m * g;
    }
    return m;
}

/// Global-phase-invariant distance d(U,V) = sqrt(1 - |tr(U V^dagger)| / 2).
inline BigFloat distance(const Matrix2& u, const Matrix2& v) {
    Matrix2 va = v.adjoint();
    BigComplex tr = u.a * va.a + u.b * va.c + u.c * va.b + u.d * va.d;
    long prec = std::max(u.precision(), v.precision());
    BigFloat x = BigFloat::from(1L, prec) - tr.abs() / BigFloat::from(2L, prec);
    if (x.sign() < 0) x = BigFloat::from(0L, prec);  // clamp rounding noise
    return x.sqrt();
}

/// R_z(phi) = diag(e^{-i phi/2}, e^{i phi/2}).
inline Matrix2 target_rz(const BigFloat& phi, long prec) {
    BigFloat half = phi / BigFloat::from(2L, prec);
    Matrix2 m(prec);
    m.a = BigComplex::unit(-half);
    m.d = BigComplex::unit(half);
    return m;
}

/// Pauli X.
inline Matrix2 target_x(long prec) {
    Matrix2 m(prec);
    m.b = BigComplex::from(1, 0, prec);
    m.c = BigComplex::from(1, 0, prec);
    return m;
}

/// R_z(phi) X = [[0, e^{-i phi/2}], [e^{i phi/2}, 0]].
inline Matrix2 target_rzx(const BigFloat& phi, long prec) {
    return target_rz(phi, prec) * target_x(prec);
}

}  // namespace fib
