#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "fib/approx.hpp"
#include "fib/circuit.hpp"

using namespace fib;

TEST_CASE("Fibonacci numbers") {
    CHECK(fibonacci(0) == 0);
    CHECK(fibonacci(1) == 1);
    CHECK(fibonacci(10) == 55);
}

TEST_CASE("Fibonacci convergents approximate tau") {
    long prec = 512;
    BigFloat tau = to_real(ZTau::tau(), prec);
    BigFloat phi = to_real(ZTau::phi(), prec);
    BigFloat sqrt5 = BigFloat::from(5L, prec).sqrt();
    for (unsigned long n = 1; n <= 80; ++n) {
        BigFloat fn = BigFloat::from(fibonacci(n), prec);
        BigFloat fn1 = BigFloat::from(fibonacci(n + 1), prec);
        BigFloat err = (tau - fn / fn1).abs();
        BigFloat bound = tau.pow(static_cast<long>(n)) / fn1;
        CHECK(err <= bound);
        CHECK(fn >= (phi.pow(static_cast<long>(n)) - BigFloat::from(1L, prec)) / sqrt5);
    }
}

TEST_CASE("real approximation by ring elements") {
    long prec = 256;
    ZTau zero = approx_real(BigFloat::from(0L, prec), 7);
    CHECK(zero == ZTau::zero());

    ZTau half = approx_real(BigFloat::from(0.5, prec), 4);
    CHECK(half == ZTau(0, 1));
    double err = std::abs(0.5 - to_real(half, prec).to_double());
    double tau = 0.6180339887498949;
    CHECK(err <= std::pow(tau, 3) * (1 - std::pow(tau, 4)));

    ZTau t30 = approx_real(to_real(ZTau::tau(), prec), 30);
    BigFloat e30 = (to_real(ZTau::tau(), prec) - to_real(t30, prec)).abs();
    BigFloat tb = to_real(ZTau::tau(), prec);
    CHECK(e30 <= tb.pow(29) * (BigFloat::from(1L, prec) - tb.pow(30)));
}

TEST_CASE("real approximation bounds on random inputs") {
    long prec = 512;
    Rng rng(501);
    BigFloat tau = to_real(ZTau::tau(), prec);
    BigFloat phi = to_real(ZTau::phi(), prec);
    for (int i = 0; i < 10000; ++i) {
        double xv = (static_cast<double>(rng.below(2000001)) - 1000000.0) / 100000.0;
        unsigned long n = 2 + rng.below(59);
        BigFloat x = BigFloat::from(xv, prec);
        ZTau ab = approx_real(x, n);
        BigFloat err = (x - to_real(ab, prec)).abs();
        BigFloat bound = tau.pow(static_cast<long>(n) - 1) *
                         (BigFloat::from(1L, prec) - tau.pow(static_cast<long>(n)));
        CHECK(err <= bound);
        BigFloat babs = BigFloat::from(ab.b(), prec).abs();
        CHECK(babs <= phi.pow(static_cast<long>(n)));
    }
}

TEST_CASE("region sampling stays inside the parallelogram") {
    long prec = 256;
    Rng rng(502);
    BigFloat theta = BigFloat::from(0.3, prec);
    BigFloat eps = BigFloat::parse("1e-3", prec);
    BigFloat r = BigFloat::from(1L, prec);
    SampleRegion region(theta, eps, r);
    for (int i = 0; i < 200; ++i) {
        ZOmega u0 = random_sample(theta, eps, r, rng);
        CHECK(region.contains(u0, prec));
    }
}

TEST_CASE("sampling is reproducible and spans many outputs") {
    long prec = 256;
    BigFloat theta = BigFloat::from(0.3, prec);
    BigFloat eps = BigFloat::parse("1e-3", prec);
    BigFloat r = BigFloat::from(1L, prec);
    Rng a(503), b(503);
    for (int i = 0; i < 50; ++i) {
        CHECK(random_sample(theta, eps, r, a) == random_sample(theta, eps, r, b));
    }
    std::set<std::string> seen;
    Rng c(504);
    for (int i = 0; i < 200; ++i) seen.insert(to_string(random_sample(theta, eps, r, c)));
    CHECK(seen.size() > 100);
}

TEST_CASE("sampled elements have bounded Gauss complexity") {
    // The coordinates of u0 are of order phi^m = O(1/eps), so G(u0) is
    // O(1/eps^2); 200 is the frozen calibration constant (measured maxima
    // were 67-120 across these epsilons).
    long prec = 320;
    Rng rng(505);
    BigFloat theta = BigFloat::from(0.3, prec);
    BigFloat r = BigFloat::from(1L, prec);
    for (const char* es : {"1e-2", "1e-3", "1e-4"}) {
        BigFloat eps = BigFloat::parse(es, prec);
        double e = eps.to_double();
        for (int i = 0; i < 334; ++i) {
            ZOmega u0 = random_sample(theta, eps, r, rng);
            double g = mpz_get_d(gauss_complexity(u0).get_mpz_t());
            CHECK(g * e * e <= 200.0);
        }
    }
}

TEST_CASE("rotation compile meets its tolerance") {
    long prec = precision_for_epsilon(BigFloat::parse("1e-10", 64));
    BigFloat eps = BigFloat::parse("1e-10", prec);
    Rng rng(506);
    BigFloat phi = BigFloat::pi(prec) / BigFloat::from(64L, prec);
    CompileResult res = compile_rz(phi, eps, rng);
    CHECK(res.achieved_distance <= eps);
    CHECK(is_exact_unitary(res.exact));
    CHECK(res.sigma_gate_count >= 100);
    CHECK(res.sigma_gate_count <= 260);
    // Independent recheck at doubled precision.
    BigFloat d2 = distance(evaluate_exact(res.exact, 2 * prec),
                           target_rz(phi + BigFloat::from(0L, 2 * prec), 2 * prec));
    CHECK(d2 <= eps);
    // The braid realizes the same unitary up to phase.
    BigFloat db = distance(evaluate_braid(res.braid, prec), target_rz(phi, prec));
    CHECK(db <= eps);
}

TEST_CASE("sector-boundary angles compile") {
    // Multiples of 2pi/5 put the sampling direction on a sector boundary,
    // where a parallel sampling line would pin every candidate to one residue
    // class mod 2 - tau and starve the norm equation of easy instances.
    long prec = precision_for_epsilon(BigFloat::parse("1e-6", 64));
    BigFloat eps = BigFloat::parse("1e-6", prec);
    for (long i : {1L, 2L, 3L, 4L}) {
        Rng rng(509 + i);
        BigFloat phi = BigFloat::pi(prec) * BigFloat::from(2 * i, prec) / BigFloat::from(5L, prec);
        CompileResult res = compile_rz(phi, eps, rng);
        CHECK(res.achieved_distance <= eps);
        CHECK(res.trials < 1000);
        BigFloat d2 = distance(evaluate_exact(res.exact, 2 * prec),
                               target_rz(phi + BigFloat::from(0L, 2 * prec), 2 * prec));
        CHECK(d2 <= eps);
    }
}

TEST_CASE("coarse and trivial rotation targets") {
    long prec = 256;
    Rng rng(507);
    CompileResult res = compile_rz(BigFloat::from(0L, prec), BigFloat::from(0.3, prec), rng);
    CHECK(res.achieved_distance.to_double() <= 0.3);
    CHECK(is_exact_unitary(res.exact));
}

TEST_CASE("reflection compile approximates X") {
    long prec = precision_for_epsilon(BigFloat::parse("1e-10", 64));
    BigFloat eps = BigFloat::parse("1e-10", prec);
    Rng rng(508);
    CompileResult res = compile_rzx(BigFloat::from(0L, prec), eps, rng);
    BigFloat d = distance(evaluate_braid(res.braid, prec), target_x(prec));
    CHECK(d <= eps);
    CHECK(res.sigma_gate_count >= 100);
    CHECK(res.sigma_gate_count <= 260);
}

TEST_CASE("general decomposition branches") {
    long prec = 256;

    Matrix2 viaF = gate_f(prec) * target_rz(BigFloat::from(0.2, prec), prec) * gate_f(prec);
    Decomposition d1 = decompose_general(viaF, prec);
    CHECK(d1.kind == Decomposition::Kind::ThreeRotations);
    CHECK(std::abs(std::abs(d1.beta.to_double()) - 0.2) < 1e-9);

    Decomposition d2 = decompose_general(target_x(prec), prec);
    CHECK(d2.kind == Decomposition::Kind::RzX);
    CHECK(std::abs(d2.phi.to_double()) < 1e-9);

    Decomposition d3 = decompose_general(target_rz(BigFloat::from(0.7, prec), prec), prec);
    CHECK(d3.kind == Decomposition::Kind::Rz);
    CHECK(std::abs(d3.phi.to_double() - 0.7) < 1e-9);

    Matrix2 junk = Matrix2::identity(prec);
    junk.a = BigComplex::from(2.0, 0.0, prec);
    CHECK_THROWS_AS(decompose_general(junk, prec), NotUnitary);
}

TEST_CASE("general compile through three rotations") {
    long prec = precision_for_epsilon(BigFloat::parse("1e-6", 64));
    BigFloat eps = BigFloat::parse("1e-6", prec);
    Rng rng(509);
    Matrix2 u = target_rz(BigFloat::from(0.3, prec), prec) * gate_f(prec) *
                target_rz(BigFloat::from(1.1, prec), prec) * gate_f(prec) *
                target_rz(BigFloat::from(-0.7, prec), prec);
    CompileResult res = compile_unitary(u, eps, rng);
    CHECK(distance(evaluate_braid(res.braid, prec), u) <= eps);
    CHECK(distance(evaluate_exact(res.exact, prec), u) <= eps);
}

TEST_CASE("general compile through the reflection fallback") {
    long prec = precision_for_epsilon(BigFloat::parse("1e-6", 64));
    BigFloat eps = BigFloat::parse("1e-6", prec);
    Rng rng(510);
    // Upper-left magnitude 0.15 < 2 tau - 1, forcing the U*X route.
    BigFloat a = BigFloat::from(0.15, prec);
    BigFloat b = (BigFloat::from(1L, prec) - a * a).sqrt();
    Matrix2 u(BigComplex(a, BigFloat::from(0L, prec)), BigComplex(b, BigFloat::from(0L, prec)),
              BigComplex(-b, BigFloat::from(0L, prec)), BigComplex(a, BigFloat::from(0L, prec)));
    CHECK(decompose_general(u, prec).kind == Decomposition::Kind::FallbackX);
    CompileResult res = compile_unitary(u, eps, rng);
    CHECK(distance(evaluate_braid(res.braid, prec), u) <= eps);
}

TEST_CASE("general compile of a plain rotation") {
    long prec = precision_for_epsilon(BigFloat::parse("1e-8", 64));
    BigFloat eps = BigFloat::parse("1e-8", prec);
    Rng rng(511);
    Matrix2 u = target_rz(BigFloat::from(0.3, prec), prec);
    CompileResult res = compile_unitary(u, eps, rng);
    CHECK(distance(evaluate_braid(res.braid, prec), u) <= eps);
}
