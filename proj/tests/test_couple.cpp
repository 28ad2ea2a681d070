#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "interp/couple.hpp"
#include "testutil.hpp"

using namespace interp;
using testutil::Rng;

TEST_CASE("weighted lp norm evaluation") {
    CHECK(norm(NormSpec::lp(2.0, {1.0, 1.0}), {Complex(3, 0), Complex(4, 0)}) == doctest::Approx(5.0));
    CHECK(norm(NormSpec::lp(1.0, {2.0, 1.0}), {Complex(1, 0), Complex(1, 0)}) == doctest::Approx(3.0));
    CHECK(norm(NormSpec::lp(kInf, {1.0, 1.0}), {Complex(3, 0), Complex(-4, 0)}) == doctest::Approx(4.0));
    CHECK(norm(NormSpec::lp(2.0, {1.0, 1.0}), {Complex(0, 0), Complex(0, 0)}) == 0.0);
    // complex moduli
    CHECK(norm(NormSpec::lp(2.0, {1.0}), {Complex(3, 4)}) == doctest::Approx(5.0));
    // large p stays finite
    CHECK(norm(NormSpec::lp(16.0, {1.0, 1.0}), {Complex(1e13, 0), Complex(1e13, 0)}) ==
          doctest::Approx(1e13 * std::pow(2.0, 1.0 / 16.0)));
}

TEST_CASE("norm input validation") {
    CHECK_THROWS_AS(norm(NormSpec::lp(2.0, {1.0, 1.0}), CVec{Complex(1, 0)}), input_error);
    CHECK_THROWS_AS(norm(NormSpec::lp(0.5, {1.0}), CVec{Complex(1, 0)}), input_error);
    CHECK_THROWS_AS(norm(NormSpec::lp(2.0, {-1.0}), CVec{Complex(1, 0)}), input_error);
    CHECK_THROWS_AS(Couple(0, NormSpec::lp(2.0), NormSpec::lp(2.0)), input_error);
    CHECK_THROWS_AS(Couple(9, NormSpec::lp(2.0), NormSpec::lp(2.0)), input_error);  // cap 8
    CHECK_NOTHROW(Couple(9, NormSpec::lp(2.0), NormSpec::lp(2.0), 16));
}

TEST_CASE("norm axioms hold on random samples") {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        int d = rng.range(1, 4);
        NormSpec s = rng.norm_spec(d);
        for (int i = 0; i < 25; ++i) {
            CVec a = rng.vec(d), b = rng.vec(d);
            Complex alpha = rng.cgauss();
            double na = norm(s, a), nb = norm(s, b);
            CVec ab(a.size());
            for (size_t k = 0; k < a.size(); ++k) ab[k] = a[k] + b[k];
            CHECK(norm(s, ab) <= na + nb + 1e-10 * (na + nb));
            CVec sa(a.size());
            for (size_t k = 0; k < a.size(); ++k) sa[k] = alpha * a[k];
            CHECK(norm(s, sa) == doctest::Approx(std::abs(alpha) * na).epsilon(1e-10));
            if (!is_zero(a)) CHECK(na > 0.0);
        }
    }
}

TEST_CASE("custom gauge passes the same axioms") {
    // gauge: 2 * euclidean norm, Lipschitz constant 2
    NormSpec g = NormSpec::custom(
        [](const CVec& v) {
            double s = 0;
            for (Complex z : v) s += abs2(z);
            return 2.0 * std::sqrt(s);
        },
        2.0);
    Rng rng(12);
    for (int i = 0; i < 200; ++i) {
        CVec a = rng.vec(3), b = rng.vec(3);
        Complex alpha = rng.cgauss();
        CVec ab(a.size()), sa(a.size());
        for (size_t k = 0; k < 3; ++k) {
            ab[k] = a[k] + b[k];
            sa[k] = alpha * a[k];
        }
        CHECK(norm(g, ab) <= norm(g, a) + norm(g, b) + 1e-12);
        CHECK(norm(g, sa) == doctest::Approx(std::abs(alpha) * norm(g, a)).epsilon(1e-12));
    }
}

TEST_CASE("j_functional") {
    // norms 5|.| and |.| so J(t, 1) = max(5, t)
    Couple c(1, NormSpec::lp(1.0, {5.0}), NormSpec::lp(1.0, {1.0}));
    CVec x{Complex(1, 0)};
    double e2 = std::exp(2.0);
    CHECK(j_functional(c, e2, x) == doctest::Approx(e2));
    CHECK(j_functional(c, 1.0, x) == doctest::Approx(5.0));
    CHECK(j_functional(c, 1.0, CVec{Complex(0, 0)}) == 0.0);
    CHECK_THROWS_AS(j_functional(c, 0.0, x), input_error);
    CHECK_THROWS_AS(j_functional(c, -1.0, x), input_error);

    // nondecreasing in t
    Rng rng(13);
    Couple rc = rng.couple(3);
    CVec v = rng.vec(3);
    double prev = 0.0;
    for (double t : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        double cur = j_functional(rc, t, v);
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
    CHECK(j_functional(rc, 1.0, v) ==
          doctest::Approx(std::max(norm(rc.norm0, v), norm(rc.norm1, v))));
}

TEST_CASE("sum_norm: identical norms collapse to that norm") {
    Rng rng(14);
    for (int trial = 0; trial < 10; ++trial) {
        int d = rng.range(1, 3);
        NormSpec s = rng.norm_spec(d);
        Couple c(d, s, s);
        CVec x = rng.vec(d);
        double expect = norm(s, x);
        CHECK(sum_norm(c, x) == doctest::Approx(expect).epsilon(1e-5));
    }
}

TEST_CASE("sum_norm examples and bounds") {
    Couple c(1, NormSpec::lp(1.0, {1.0}), NormSpec::lp(1.0, {10.0}));
    CVec x{Complex(1, 0)};
    CHECK(sum_norm(c, CVec{Complex(0, 0)}) == 0.0);
    double oracle = testutil::brute_sum_norm_1d(1.0, 10.0, 1.0);
    CHECK(oracle == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(sum_norm(c, x) == doctest::Approx(oracle).epsilon(1e-6));

    Rng rng(15);
    for (int trial = 0; trial < 15; ++trial) {
        int d = rng.range(1, 3);
        Couple rc = rng.couple(d);
        CVec v = rng.vec(d);
        double sn = sum_norm(rc, v);
        CHECK(sn <= std::min(norm(rc.norm0, v), norm(rc.norm1, v)) * (1 + 1e-9));
        CHECK(sn >= 0.0);
    }
}

TEST_CASE("k_functional is the scaled sum norm") {
    Couple c(1, NormSpec::lp(1.0, {1.0}), NormSpec::lp(1.0, {10.0}));
    CVec x{Complex(1, 0)};
    CHECK(k_functional(c, 1.0, x) == doctest::Approx(sum_norm(c, x)).epsilon(1e-8));
    // for t small the second norm wins the split entirely
    CHECK(k_functional(c, 0.01, x) == doctest::Approx(0.1).epsilon(1e-5));
    CHECK_THROWS_AS(k_functional(c, 0.0, x), input_error);
}
