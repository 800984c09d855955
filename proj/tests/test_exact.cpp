#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fib/braid.hpp"
#include "fib/circuit.hpp"
#include "fib/exact.hpp"
#include "fib/rng.hpp"

using namespace fib;

namespace {

FTWord random_ft_word(Rng& rng, int max_len) {
    FTWord w;
    w.phase = static_cast<int>(rng.below(10));
    int segments = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_len)));
    w.texp.clear();
    for (int i = 0; i < segments; ++i) w.texp.push_back(static_cast<int>(rng.below(10)));
    return w;
}

}  // namespace

TEST_CASE("generator forms") {
    ExactUnitary t = ExactUnitary::gate_t();
    CHECK(t.u == ZOmega::one());
    CHECK(t.v == ZOmega::zero());
    CHECK(t.k == 6);
    ExactUnitary f = ExactUnitary::gate_f();
    CHECK(f.u == omega_pow(2) - omega_pow(3));
    CHECK(f.v == ZOmega::one());
    CHECK(f.k == 0);
    CHECK(is_exact_unitary(t));
    CHECK(is_exact_unitary(f));
    CHECK(is_exact_unitary(ExactUnitary::identity()));

    long prec = 128;
    CHECK(distance(evaluate_exact(t, prec), gate_t(prec)).to_double() < 1e-15);
    CHECK(distance(evaluate_exact(f, prec), gate_f(prec)).to_double() < 1e-15);
}

TEST_CASE("exact multiplication preserves the form") {
    Rng rng(301);
    ExactUnitary acc = ExactUnitary::identity();
    long prec = 192;
    Matrix2 num = Matrix2::identity(prec);
    for (int i = 0; i < 60; ++i) {
        bool pick_f = rng.below(2) == 0;
        ExactUnitary g = pick_f ? ExactUnitary::gate_f() : ExactUnitary::gate_t();
        acc = exact_mul(g, acc);
        num = (pick_f ? gate_f(prec) : gate_t(prec)) * num;
        CHECK(is_exact_unitary(acc));
    }
    CHECK(distance(evaluate_exact(acc, prec), num).to_double() < 1e-20);
}

TEST_CASE("phase application") {
    ExactUnitary f = ExactUnitary::gate_f();
    ExactUnitary p = apply_phase(apply_phase(f, 5), 5);
    CHECK(p == f);
    // omega^s U[u,v,k] = U[u w^s, v w^s, k+2s]
    ExactUnitary q = apply_phase(f, 3);
    CHECK(q.u == mul_omega_pow(f.u, 3));
    CHECK(q.v == mul_omega_pow(f.v, 3));
    CHECK(q.k == (f.k + 6) % 10);
    long prec = 128;
    Matrix2 lhs = evaluate_exact(q, prec);
    Matrix2 rhs = evaluate_exact(f, prec);
    CHECK(distance(lhs, rhs).to_double() < 1e-15);
}

TEST_CASE("Gauss complexity of products") {
    ExactUnitary ft = exact_mul(ExactUnitary::gate_f(), ExactUnitary::gate_t());
    ExactUnitary ft2 = exact_mul(ft, ft);
    ExactUnitary ft3 = exact_mul(ft2, ft);
    CHECK(gauss_of(ExactUnitary::identity()) == 2);
    CHECK(gauss_of(ft) == 3);
    CHECK(gauss_of(ft2) == 13);
    CHECK(gauss_of(ft3) == 57);
}

TEST_CASE("synthesis of terminal forms") {
    FTWord id = exact_synthesize(ExactUnitary::identity());
    CHECK(id.phase == 0);
    CHECK(id.f_count() == 0);
    REQUIRE(id.texp.size() == 1);
    CHECK(id.texp[0] == 0);

    FTWord t = exact_synthesize(ExactUnitary::gate_t());
    CHECK(evaluate_ft_exact(t) == ExactUnitary::gate_t());
    CHECK(format_ft(t) == "T");
}

TEST_CASE("synthesis round-trip with complexity contraction") {
    Rng rng(302);
    for (int i = 0; i < 100; ++i) {
        FTWord w = random_ft_word(rng, 100);
        ExactUnitary target = evaluate_ft_exact(w);
        std::vector<Integer> trace;
        FTWord out = exact_synthesize(target, &trace);
        CHECK(evaluate_ft_exact(out) == target);
        REQUIRE(!trace.empty());
        for (std::size_t j = 1; j < trace.size(); ++j) {
            CHECK(trace[j] < trace[j - 1]);
            if (trace[j - 1] >= 100) {
                double ratio = mpz_get_d(trace[j].get_mpz_t()) / mpz_get_d(trace[j - 1].get_mpz_t());
                CHECK(ratio < 0.35);
            }
        }
        double g0 = mpz_get_d(trace.front().get_mpz_t());
        double bound = std::log(std::max(g0, 3.0)) / std::log(3.0) + 5.0;
        CHECK(static_cast<double>(trace.size() - 1) <= bound);
    }
}

TEST_CASE("no exact unitary has zero upper-left entry") {
    Rng rng(303);
    for (int i = 0; i < 200; ++i) {
        auto coeff = [&] { return Integer(static_cast<long>(rng.below(21)) - 10); };
        ZOmega v(coeff(), coeff(), coeff(), coeff());
        ExactUnitary candidate(ZOmega::zero(), v, static_cast<int>(rng.below(10)));
        CHECK_FALSE(is_exact_unitary(candidate));
    }
}

TEST_CASE("braid translation of generators") {
    FTWord t;
    t.phase = 0;
    t.texp = {1};
    BraidWord bt = ft_to_braid(t);
    REQUIRE(bt.size() == 1);
    CHECK(bt[0].gen == 1);
    CHECK(bt[0].exp == 3);

    FTWord f;
    f.phase = 0;
    f.texp = {0, 0};
    BraidWord bf = ft_to_braid(f);
    REQUIRE(bf.size() == 3);
    CHECK(bf[0] == BraidItem{1, 1});
    CHECK(bf[1] == BraidItem{2, 1});
    CHECK(bf[2] == BraidItem{1, 1});

    FTWord t7;
    t7.phase = 0;
    t7.texp = {7};
    BraidWord b7 = ft_to_braid(t7);
    REQUIRE(b7.size() == 1);
    CHECK(b7[0] == BraidItem{1, 1});
}

TEST_CASE("braid translation is phase-equivalent") {
    Rng rng(304);
    long prec = 192;
    for (int i = 0; i < 50; ++i) {
        FTWord w = random_ft_word(rng, 40);
        BraidWord b = ft_to_braid(w);
        Matrix2 mb = evaluate_braid(b, prec);
        Matrix2 mf = evaluate_ft(w, prec);
        CHECK(distance(mb, mf).to_double() < 1e-20);
        for (std::size_t j = 0; j + 1 < b.size(); ++j) CHECK(b[j].gen != b[j + 1].gen);
        for (const auto& item : b) {
            CHECK(item.exp != 0);
            CHECK(item.exp >= -5);
            CHECK(item.exp <= 5);
        }
    }
}

TEST_CASE("sigma generators as exact unitaries") {
    long prec = 128;
    CHECK(distance(evaluate_exact(exact_sigma1(), prec), gate_sigma1(prec)).to_double() < 1e-15);
    CHECK(distance(evaluate_exact(exact_sigma2(), prec), gate_sigma2(prec)).to_double() < 1e-15);
    CHECK(exact_mul(exact_sigma1(), exact_sigma1_inv()) == ExactUnitary::identity());
    CHECK(exact_mul(exact_sigma2(), exact_sigma2_inv()) == ExactUnitary::identity());
    ExactUnitary fsf = exact_mul(exact_mul(ExactUnitary::gate_f(), exact_sigma1()), ExactUnitary::gate_f());
    CHECK(distance(evaluate_exact(fsf, prec), evaluate_exact(exact_sigma2(), prec)).to_double() < 1e-15);
}
