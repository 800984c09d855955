#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fib/bigfloat.hpp"
#include "fib/braid.hpp"
#include "fib/circuit.hpp"
#include "fib/errors.hpp"
#include "fib/exact.hpp"
#include "fib/numtheory.hpp"
#include "fib/rng.hpp"

namespace fib {

inline Integer fibonacci(unsigned long n) {
    Integer f;
    mpz_fib_ui(f.get_mpz_t(), n);
    return f;
}

/// Finds a + b*tau close to x with |x - (a+b tau)| <= tau^{n-1}(1 - tau^n)
/// and |b| <= phi^n, via the Fibonacci continued-fraction convergents.
inline ZTau approx_real(const BigFloat& x, unsigned long n) {
    assert(n >= 2);
    long prec = x.precision();
    Integer p = fibonacci(n);
    Integer q = fibonacci(n + 1);
    Integer u = n % 2 == 0 ? Integer(-p) : p;          // (-1)^{n+1} F_n
    Integer v = n % 2 == 0 ? fibonacci(n - 1) : Integer(-fibonacci(n - 1));  // (-1)^n F_{n-1}
    Integer c = (x * BigFloat::from(q, prec)).round_half_up();
    Integer cu = c * u;
    // k = round-half-up(cu / q) = floor((2 cu + q) / (2 q)); keeps |b| <= q/2
    Integer k, num = 2 * cu + q, den = 2 * q;
    mpz_fdiv_q(k.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return {c * v + p * k, cu - q * k};
}

namespace detail {

inline BigFloat golden(long prec) {
    return (BigFloat::from(5L, prec).sqrt() + BigFloat::from(1L, prec)) / BigFloat::from(2L, prec);
}

/// ceil(log_tau(x)) + 1 for 0 < x < 1 (log_tau(x) = ln x / ln tau > 0).
inline long sample_exponent(const BigFloat& x) {
    long prec = x.precision();
    BigFloat lt = tau_value(prec).log();
    return (x.log() / lt).ceil_long() + 1;
}

}  // namespace detail

/// Geometry of the sampling parallelogram for a target direction theta,
/// precision eps and radial scale r (all evaluated at the precision of eps).
struct SampleRegion {
    long m = 0;
    Integer n;  // grid resolution, ceil(phi^m)
    BigFloat y_min, y_max, x_max, x_c;
    BigFloat theta, eps, r;

    SampleRegion(const BigFloat& theta_in, const BigFloat& eps_in, const BigFloat& r_in)
        : y_min(eps_in.precision()), y_max(eps_in.precision()), x_max(eps_in.precision()),
          x_c(eps_in.precision()), theta(theta_in), eps(eps_in), r(r_in) {
        long prec = eps.precision();
        BigFloat four = BigFloat::from(4L, prec);
        BigFloat two = BigFloat::from(2L, prec);
        BigFloat phi = fib::detail::golden(prec);
        BigFloat c = (phi / (four * r)).sqrt();
        m = detail::sample_exponent(c * eps * r);
        BigFloat scale = r * phi.pow(m);
        n = phi.pow(m).ceil_int();
        BigFloat st = theta.sin(), ct = theta.cos();
        BigFloat root4 = (four - eps * eps).sqrt();
        y_min = scale * (st - eps * (root4 * ct + eps * st) / two);
        y_max = scale * (st + eps * (root4 * ct - eps * st) / two);
        // x anchor at the lower chord endpoint phi^m e^{i(theta - delta)} with
        // cos(delta) = 1 - eps^2/2: the x coordinate decreases along the chord
        // as y grows, so the sampling line starts at the larger endpoint.
        x_max = scale * ((BigFloat::from(1L, prec) - eps * eps / two) * ct +
                         eps * (BigFloat::from(1L, prec) - eps * eps / four).sqrt() * st);
        x_c = x_max - r * eps * eps * phi.pow(m) / (four * ct);
    }

    /// Half-width of the parallelogram along x: r eps^2 phi^m / (4 cos theta).
    BigFloat half_width() const {
        long prec = eps.precision();
        return r * eps * eps * detail::golden(prec).pow(m) /
               (BigFloat::from(4L, prec) * theta.cos());
    }

    /// Membership test for the numeric embedding of a sample.
    bool contains(const ZOmega& u0, long prec) const {
        BigComplex z = to_complex(u0, prec);
        if (z.im < y_min || z.im > y_max) return false;
        BigFloat center = x_c - (z.im - y_min) * theta.tan();
        return (z.re - center).abs() <= half_width();
    }
};

/// Picks a random ring element inside the eps-parallelogram near angle theta
/// (theta in [0, pi/5]). Throws DegenerateRegion when the grid has fewer than
/// two interior points (eps too coarse).
inline ZOmega random_sample(const BigFloat& theta, const BigFloat& eps, const BigFloat& r, Rng& rng) {
    long prec = eps.precision();
    SampleRegion region(theta, eps, r);
    if (region.n <= 2) throw DegenerateRegion();
    unsigned long m = static_cast<unsigned long>(region.m);
    // imaginary part: uniform grid point mapped through APPROX-REAL
    Integer j = 1 + rng.below(Integer(region.n - 1));
    BigFloat y = region.y_min + BigFloat::from(j, prec) * (region.y_max - region.y_min) /
                                    BigFloat::from(region.n, prec);
    BigFloat s2t = (BigFloat::from(2L, prec) - detail::tau_value(prec)).sqrt();  // sqrt(2 - tau)
    ZTau ay = approx_real(y / s2t, m);
    BigFloat x = region.x_c - (to_real(ay, prec) * s2t - region.y_min) * theta.tan();
    ZTau ax = approx_real(x, m);
    return ZOmega::from_ztau(ax) + ZOmega::theta() * ZOmega::from_ztau(ay);
}

struct CompileResult {
    ExactUnitary exact;
    FTWord ft;
    BraidWord braid;
    BigFloat achieved_distance;
    long trials = 0;
    long sigma_gate_count = 0;
};

inline constexpr long kTrialLimit = 1000000;

namespace detail {

/// phi^e as an exact element of Z[tau] (phi = 1 + tau = tau^{-1}).
inline ZTau phi_pow_exact(long e) { return tau_pow(-e); }

/// Completes a compiled (u, v) pair into the exact unitary closest to the
/// target; the matrix exponent k only flips signs in the second column, so
/// the distance-minimizing choice resolves the phase convention.
inline std::pair<ExactUnitary, BigFloat> best_form(const ZOmega& u, const ZOmega& v,
                                                   const Matrix2& target, long prec) {
    ExactUnitary best(u, v, 5);
    BigFloat best_d = distance(evaluate_exact(best, prec), target);
    for (int k = 0; k < 10; ++k) {
        if (k == 5) continue;
        ExactUnitary cand(u, v, k);
        BigFloat d = distance(evaluate_exact(cand, prec), target);
        if (d < best_d) {
            best = cand;
            best_d = d;
        }
    }
    return {best, best_d};
}

inline CompileResult finish_compile(const ExactUnitary& m, const BigFloat& d, long trials) {
    CompileResult res;
    res.exact = m;
    res.ft = exact_synthesize(m);
    res.braid = ft_to_braid(res.ft);
    res.achieved_distance = d;
    res.trials = trials;
    res.sigma_gate_count = sigma_count(res.braid);
    return res;
}

/// Direction angle and phase index: smallest k with base - pi k/5 in [0, pi/5).
/// On (or almost on) a sector boundary the sampling line runs parallel to the
/// approximation grid, so every candidate u0 shares one residue class mod the
/// ramified prime 2 - tau and the norm equation can be unsolvable for all of
/// them. Such angles are reported as the far end of the previous sector.
inline std::pair<long, BigFloat> direction(const BigFloat& base, long prec) {
    BigFloat step = BigFloat::pi(prec) / BigFloat::from(5L, prec);
    long k = (base / step).floor_int().get_si();
    BigFloat theta = base - BigFloat::from(k, prec) * step;
    if (theta < step / BigFloat::from(128L, prec)) return {k - 1, theta + step};
    return {k, theta};
}

}  // namespace detail

/// Approximates R_z(phi) by an exact unitary within eps, then synthesizes it.
/// Randomized: repeatedly samples u0 near the target direction until the
/// norm-equation instance for the completing entry v is easy, then verifies
/// the distance numerically before returning.
inline CompileResult compile_rz(const BigFloat& phi_in, const BigFloat& eps_in, Rng& rng) {
    long prec = precision_for_epsilon(eps_in);
    BigFloat phi = phi_in + BigFloat::from(0L, prec);
    BigFloat eps = eps_in + BigFloat::from(0L, prec);
    Matrix2 target = target_rz(phi, prec);
    BigFloat c = (detail::golden(prec) / BigFloat::from(4L, prec)).sqrt();
    auto [k, theta] = detail::direction(-phi / BigFloat::from(2L, prec), prec);
    BigFloat eps_work = eps;
    BigFloat one_r = BigFloat::from(1L, prec);
    const ZTau phi_z = ZTau::phi();
    for (long trials = 1; trials <= kTrialLimit; ++trials) {
        // Long failure runs happen only when the region is structurally
        // unlucky; shrinking it shrinks the window where that can persist.
        if (trials % 4096 == 0) eps_work = eps_work / BigFloat::from(2L, prec);
        long m = detail::sample_exponent(c * eps_work);
        ZOmega u0;
        try {
            u0 = random_sample(theta, eps_work, one_r, rng);
        } catch (const DegenerateRegion&) {
            eps_work = eps_work / BigFloat::from(2L, prec);
            continue;
        }
        ZTau xi = phi_z * (detail::phi_pow_exact(2 * m) - norm_i(u0));
        std::optional<ZOmega> sol = solve_norm_equation(xi, rng);
        if (!sol) continue;
        ZOmega tau_m = ZOmega::from_ztau(tau_pow(m));
        ZOmega u = mul_omega_pow(tau_m * u0, static_cast<int>(((k % 10) + 10) % 10));
        ZOmega v = tau_m * *sol;
        assert(norm_i(u) + ZTau::tau() * norm_i(v) == ZTau::one());
        auto [unitary, d] = detail::best_form(u, v, target, prec);
        if (d <= eps) return detail::finish_compile(unitary, d, trials);
    }
    throw TrialLimitExceeded();
}

/// Approximates R_z(phi) X; the sampled element lands in the lower-left
/// entry and the norm equation completes the diagonal.
inline CompileResult compile_rzx(const BigFloat& phi_in, const BigFloat& eps_in, Rng& rng) {
    long prec = precision_for_epsilon(eps_in);
    BigFloat phi = phi_in + BigFloat::from(0L, prec);
    BigFloat eps = eps_in + BigFloat::from(0L, prec);
    Matrix2 target = target_rzx(phi, prec);
    BigFloat two = BigFloat::from(2L, prec);
    BigFloat r = detail::golden(prec).sqrt();
    BigFloat c = (detail::golden(prec) / (BigFloat::from(4L, prec) * r)).sqrt();
    auto [k, theta] = detail::direction(phi / two + BigFloat::pi(prec) / two, prec);
    BigFloat eps_work = eps;
    for (long trials = 1; trials <= kTrialLimit; ++trials) {
        if (trials % 4096 == 0) eps_work = eps_work / two;
        long m = detail::sample_exponent(c * eps_work * r);
        ZOmega u0;
        try {
            u0 = random_sample(theta, eps_work, r, rng);
        } catch (const DegenerateRegion&) {
            eps_work = eps_work / two;
            continue;
        }
        ZTau xi = detail::phi_pow_exact(2 * m) - ZTau::tau() * norm_i(u0);
        assert(ztau_sign(bullet(xi)) >= 0);  // 1 + phi |u0 bullet|^2 > 0
        std::optional<ZOmega> sol = solve_norm_equation(xi, rng);
        if (!sol) continue;
        ZOmega tau_m = ZOmega::from_ztau(tau_pow(m));
        ZOmega v = mul_omega_pow(tau_m * u0, static_cast<int>(((k % 10) + 10) % 10));
        ZOmega u = tau_m * *sol;
        assert(norm_i(u) + ZTau::tau() * norm_i(v) == ZTau::one());
        auto [unitary, d] = detail::best_form(u, v, target, prec);
        if (d <= eps) return detail::finish_compile(unitary, d, trials);
    }
    throw TrialLimitExceeded();
}

/// How a general unitary splits into compilable segments.
struct Decomposition {
    enum class Kind { Rz, RzX, ThreeRotations, FallbackX } kind;
    BigFloat phi;    // Rz / RzX
    BigFloat alpha, beta, gamma;  // ThreeRotations (of U itself, or of U*X for FallbackX)

    explicit Decomposition(long prec)
        : kind(Kind::Rz), phi(prec), alpha(prec), beta(prec), gamma(prec) {}
};

namespace detail {

/// Solves Rz(alpha) F Rz(beta) F Rz(gamma) ~ U (up to global phase) given
/// |U00| in [2 tau - 1, 1]. Tries both signs of beta and keeps the closer.
inline Decomposition three_rotations(const Matrix2& u, long prec) {
    Decomposition dec(prec);
    dec.kind = Decomposition::Kind::ThreeRotations;
    BigFloat t = tau_value(prec);
    BigFloat au = u.a.abs();
    // |W00| = tau |tau + e^{i beta}| gives cos beta = ((|u|/tau)^2 - 1 - tau^2) / (2 tau)
    BigFloat cb = ((au / t) * (au / t) - BigFloat::from(1L, prec) - t * t) / (BigFloat::from(2L, prec) * t);
    if (cb > BigFloat::from(1L, prec)) cb = BigFloat::from(1L, prec);
    if (cb < BigFloat::from(-1L, prec)) cb = BigFloat::from(-1L, prec);
    BigFloat beta0 = cb.acos();
    BigFloat best_d(prec);
    bool have = false;
    for (int sign = 0; sign < 2; ++sign) {
        BigFloat beta = sign == 0 ? beta0 : -beta0;
        Matrix2 f = gate_f(prec);
        Matrix2 mid = f * target_rz(beta, prec) * f;
        BigFloat alpha = (u.c / u.a).arg() - (mid.c / mid.a).arg();
        BigFloat gamma = (u.b / u.a).arg() - (mid.b / mid.a).arg();
        Matrix2 w = target_rz(alpha, prec) * mid * target_rz(gamma, prec);
        BigFloat d = distance(w, u);
        if (!have || d < best_d) {
            have = true;
            best_d = d;
            dec.alpha = alpha;
            dec.beta = beta;
            dec.gamma = gamma;
        }
    }
    return dec;
}

}  // namespace detail

/// Splits a unitary into R_z / R_z X / three-rotation segments per the
/// compile pipeline's needs. Targets whose upper-left magnitude falls below
/// 2 tau - 1 (unreachable by the three-rotation product) are flagged for the
/// multiply-by-X fallback, with the rotation angles computed for U*X.
inline Decomposition decompose_general(const Matrix2& u, long prec) {
    Matrix2 gram = u.adjoint() * u;
    BigFloat tol = BigFloat::from(2L, prec).pow(-(prec / 2));
    BigFloat one = BigFloat::from(1L, prec);
    if ((gram.a.abs() - one).abs() > tol || (gram.d.abs() - one).abs() > tol ||
        gram.b.abs() > tol || gram.c.abs() > tol)
        throw NotUnitary();
    if (u.a.abs() <= tol) {
        Decomposition dec(prec);
        dec.kind = Decomposition::Kind::RzX;
        dec.phi = (u.c * u.b.conj()).arg();
        return dec;
    }
    if (u.b.abs() <= tol && u.c.abs() <= tol) {
        Decomposition dec(prec);
        dec.kind = Decomposition::Kind::Rz;
        dec.phi = (u.d * u.a.conj()).arg();
        return dec;
    }
    BigFloat t = detail::tau_value(prec);
    BigFloat lower = BigFloat::from(2L, prec) * t - one;  // 2 tau - 1
    if (u.a.abs() < lower) {
        Matrix2 ux = u * target_x(prec);
        Decomposition dec = detail::three_rotations(ux, prec);
        dec.kind = Decomposition::Kind::FallbackX;
        return dec;
    }
    return detail::three_rotations(u, prec);
}

/// Compiles an arbitrary 2x2 unitary by splitting the eps budget across the
/// decomposition's segments, multiplying the exact results, and resynthesizing
/// the combined unitary. On a failed verification the budget is halved once.
inline CompileResult compile_unitary(const Matrix2& target, const BigFloat& eps_in, Rng& rng) {
    long prec = precision_for_epsilon(eps_in);
    BigFloat eps = eps_in + BigFloat::from(0L, prec);
    Decomposition dec = decompose_general(target, prec);
    using Kind = Decomposition::Kind;
    if (dec.kind == Kind::Rz) return compile_rz(dec.phi, eps, rng);
    if (dec.kind == Kind::RzX) return compile_rzx(dec.phi, eps, rng);
    const int segments = dec.kind == Kind::FallbackX ? 4 : 3;
    long trials = 0;
    for (int attempt = 0; attempt < 2; ++attempt) {
        BigFloat budget = eps / BigFloat::from(static_cast<long>(segments * (attempt + 1)), prec);
        CompileResult ra = compile_rz(dec.alpha, budget, rng);
        CompileResult rb = compile_rz(dec.beta, budget, rng);
        CompileResult rc = compile_rz(dec.gamma, budget, rng);
        trials += ra.trials + rb.trials + rc.trials;
        ExactUnitary f = ExactUnitary::gate_f();
        ExactUnitary combined =
            exact_mul(ra.exact, exact_mul(f, exact_mul(rb.exact, exact_mul(f, rc.exact))));
        if (dec.kind == Kind::FallbackX) {
            CompileResult rx = compile_rzx(BigFloat::from(0L, prec), budget, rng);
            trials += rx.trials;
            combined = exact_mul(combined, rx.exact);
        }
        BigFloat d = distance(evaluate_exact(combined, prec), target);
        if (d <= eps) {
            CompileResult res = detail::finish_compile(combined, d, trials);
            return res;
        }
    }
    throw TrialLimitExceeded();
}

}  // namespace fib
