#include <catch2/catch_amalgamated.hpp>

#include "fib/encoding.hpp"
#include "fib/rng.hpp"
#include "fib/zomega.hpp"
#include "fib/ztau.hpp"

using namespace fib;

namespace {

ZTau random_ztau(Rng& rng, long range = 1000000) {
    auto coeff = [&] { return Integer(static_cast<long>(rng.below(2 * range + 1)) - range); };
    return ZTau(coeff(), coeff());
}

ZOmega random_zomega(Rng& rng, long range = 1000000) {
    auto coeff = [&] { return Integer(static_cast<long>(rng.below(2 * range + 1)) - range); };
    return ZOmega(coeff(), coeff(), coeff(), coeff());
}

}  // namespace

TEST_CASE("tau ring multiplication") {
    ZTau tau = ZTau::tau();
    CHECK(tau * tau == ZTau(1, -1));
    Rng rng(101);
    ZTau x = random_ztau(rng);
    CHECK(ZTau::one() * x == x);
    CHECK(ZTau(2, -1) * ZTau(3, 1) == ZTau(5, 0));
}

TEST_CASE("omega ring multiplication") {
    ZOmega w = ZOmega::omega();
    ZOmega w3 = omega_pow(3);
    CHECK(w * w3 == ZOmega(-1, 1, -1, 1));
    CHECK(omega_pow(2) * omega_pow(3) == -ZOmega::one());
    ZOmega theta = ZOmega::theta();
    ZOmega t2 = theta * theta;
    REQUIRE(t2.in_ztau_image());
    CHECK(t2.to_ztau() == ZTau(-2, 1));
}

TEST_CASE("bullet automorphism on both rings") {
    CHECK(bullet(ZTau::tau()) == ZTau(-1, -1));
    CHECK(bullet(ZOmega::omega()) == omega_pow(3));
    CHECK(bullet(ZTau(5, 0)) == ZTau(5, 0));
    Rng rng(102);
    for (int i = 0; i < 200; ++i) {
        ZOmega x = random_zomega(rng);
        ZOmega y = random_zomega(rng);
        CHECK(bullet(x * y) == bullet(x) * bullet(y));
        CHECK(bullet(bullet(x)) == conj(x));
        ZTau a = random_ztau(rng);
        ZTau b = random_ztau(rng);
        CHECK(bullet(a * b) == bullet(a) * bullet(b));
    }
}

TEST_CASE("complex conjugation") {
    CHECK(conj(ZOmega::omega()) == ZOmega(1, -1, 1, -1));
    CHECK(conj(ZOmega::one()) == ZOmega::one());
    CHECK(conj(ZOmega::theta()) == -ZOmega::theta());
    Rng rng(103);
    for (int i = 0; i < 100; ++i) {
        ZOmega x = random_zomega(rng);
        CHECK(conj(conj(x)) == x);
    }
}

TEST_CASE("relative norm on Z[tau]") {
    CHECK(norm_tau(ZTau(2, -1)) == 5);
    CHECK(norm_tau(ZTau(15, -8)) == 281);
    CHECK(norm_tau(ZTau::one()) == 1);
    Rng rng(104);
    for (int i = 0; i < 100; ++i) {
        ZTau x = random_ztau(rng, 1000);
        ZTau y = random_ztau(rng, 1000);
        CHECK(norm_tau(x * y) == norm_tau(x) * norm_tau(y));
    }
}

TEST_CASE("relative norm on Z[omega]") {
    CHECK(norm_i(ZOmega::theta()) == ZTau(2, -1));
    CHECK(norm_i(ZOmega::from_ztau(ZTau(1, 2))) == ZTau(5, 0));
    for (int k = 0; k < 10; ++k) CHECK(norm_i(omega_pow(k)) == ZTau::one());
    Rng rng(105);
    for (int i = 0; i < 100; ++i) {
        ZOmega x = random_zomega(rng, 1000);
        ZOmega y = random_zomega(rng, 1000);
        CHECK(norm_i(x * y) == norm_i(x) * norm_i(y));
        CHECK(norm_tau(norm_i(x)) >= 0);
    }
}

TEST_CASE("Gauss complexity values") {
    CHECK(gauss_complexity(ZOmega(0, 0, 1, -1)) == 3);
    CHECK(gauss_complexity(ZOmega(2, -1, 0, 1)) == 13);
    CHECK(gauss_complexity(ZOmega::zero()) == 0);
    // The definition gives G(1) = |1|^2 + |1|^2 = 2; the published table's
    // n=0 entry listing 1 is an erratum.
    CHECK(gauss_complexity(ZOmega::one()) == 2);
}

TEST_CASE("Gauss complexity trichotomy on the small box") {
    // Exhaustive over coordinates in {-2..2}: G=0 iff zero, G=2 iff a power
    // of omega (up to sign), otherwise G >= 3. G=1 never occurs.
    std::vector<ZOmega> roots;
    for (int k = 0; k < 10; ++k) {
        roots.push_back(omega_pow(k));
        roots.push_back(-omega_pow(k));
    }
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
            for (int c = -2; c <= 2; ++c)
                for (int d = -2; d <= 2; ++d) {
                    ZOmega x(a, b, c, d);
                    Integer g = gauss_complexity(x);
                    if (x.is_zero()) {
                        CHECK(g == 0);
                    } else if (std::find(roots.begin(), roots.end(), x) != roots.end()) {
                        CHECK(g == 2);
                    } else {
                        CHECK(g >= 3);
                    }
                }
}

TEST_CASE("Gauss complexity eigenvalue bounds") {
    Rng rng(106);
    for (int i = 0; i < 300; ++i) {
        ZOmega x = random_zomega(rng, 1000);
        Integer s = x.a() * x.a() + x.b() * x.b() + x.c() * x.c() + x.d() * x.d();
        Integer g = gauss_complexity(x);
        CHECK(2 * g >= s);
        CHECK(2 * g <= 5 * s);
    }
}

TEST_CASE("exact sign of the real embedding") {
    CHECK(ztau_sign(ZTau(2, -1)) == 1);
    CHECK(ztau_sign(ZTau(1, -2)) == -1);
    CHECK(ztau_sign(ZTau::zero()) == 0);
    Rng rng(107);
    for (int i = 0; i < 500; ++i) {
        ZTau x = random_ztau(rng);
        if (x.is_zero()) continue;
        BigFloat r = to_real(x, 256);
        int fs = r.to_double() > 0 ? 1 : (r.to_double() < 0 ? -1 : 0);
        CHECK(ztau_sign(x) == fs);
    }
}

TEST_CASE("exact division") {
    CHECK(ztau_div_exact(ZTau(3, 1), ZTau(2, -1)) == ZTau(2, 1));
    CHECK(ztau_div_exact(ZTau(38, -39), ZTau(2, -1)) == ZTau(15, -8));
    Rng rng(108);
    ZTau x = random_ztau(rng);
    CHECK(ztau_div_exact(x, ZTau::one()) == x);
    CHECK_THROWS_AS(ztau_div_exact(ZTau(1, 0), ZTau(2, 0)), NotDivisible);
    ZOmega z = random_zomega(rng, 1000);
    ZOmega y = random_zomega(rng, 1000);
    if (!y.is_zero()) {
        CHECK(zomega_div_exact(z * y, y) == z);
    }
    CHECK_THROWS_AS(zomega_div_exact(ZOmega::omega(), ZOmega(2, 0, 0, 0)), NotDivisible);
}

TEST_CASE("numeric embeddings") {
    BigFloat tau = to_real(ZTau::tau(), 128);
    CHECK(std::abs(tau.to_double() - 0.6180339887498949) < 1e-15);
    BigComplex w = to_complex(ZOmega::omega(), 128);
    CHECK(std::abs(w.re.to_double() - std::cos(M_PI / 5)) < 1e-15);
    CHECK(std::abs(w.im.to_double() - std::sin(M_PI / 5)) < 1e-15);
    Rng rng(109);
    for (int i = 0; i < 50; ++i) {
        ZOmega x = random_zomega(rng, 1000);
        double n1 = to_real(norm_i(x), 256).to_double();
        double n2 = to_complex(x, 256).abs2().to_double();
        CHECK(std::abs(n1 - n2) <= 1e-8 * std::max(1.0, std::abs(n1)));
    }
}

TEST_CASE("ring axioms on random instances") {
    Rng rng(110);
    for (int i = 0; i < 200; ++i) {
        ZTau a = random_ztau(rng), b = random_ztau(rng), c = random_ztau(rng);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        ZOmega x = random_zomega(rng), y = random_zomega(rng), z = random_zomega(rng);
        CHECK(x * y == y * x);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
    }
}

TEST_CASE("Z[tau] embeds in Z[omega] as a ring homomorphism") {
    CHECK(ZOmega::from_ztau(ZTau::tau()) == omega_pow(2) - omega_pow(3));
    Rng rng(111);
    for (int i = 0; i < 100; ++i) {
        ZTau a = random_ztau(rng, 1000);
        ZTau b = random_ztau(rng, 1000);
        CHECK(ZOmega::from_ztau(a * b) == ZOmega::from_ztau(a) * ZOmega::from_ztau(b));
        CHECK(ZOmega::from_ztau(a + b) == ZOmega::from_ztau(a) + ZOmega::from_ztau(b));
        ZOmega x = random_zomega(rng, 1000);
        CHECK(ZOmega::from_ztau(norm_i(x)) == x * conj(x));
    }
}

TEST_CASE("ring element text encoding round-trips") {
    CHECK(parse_ztau("760-780*t") == ZTau(760, -780));
    CHECK(parse_ztau("-1+t") == ZTau(-1, 1));
    CHECK(parse_zomega("26-32*w+38*w2-14*w3") == ZOmega(26, -32, 38, -14));
    Rng rng(112);
    for (int i = 0; i < 100; ++i) {
        ZTau a = random_ztau(rng);
        CHECK(parse_ztau(to_string(a)) == a);
        ZOmega x = random_zomega(rng);
        CHECK(parse_zomega(to_string(x)) == x);
    }
    CHECK_THROWS_AS(parse_ztau(""), SyntaxError);
    CHECK_THROWS_AS(parse_ztau("1+"), SyntaxError);
    CHECK_THROWS_AS(parse_ztau("2*w"), SyntaxError);
    CHECK_THROWS_AS(parse_zomega("3 4"), SyntaxError);
}
