#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "interp/pseudolattice.hpp"
#include "testutil.hpp"

using namespace interp;
using testutil::Rng;

namespace {
const NormSpec kAbs = NormSpec::lp(1.0, {1.0});
FinSeq scalar_seq(int lo, std::vector<Complex> vals) {
    std::vector<CVec> es;
    for (Complex v : vals) es.push_back(CVec{v});
    return FinSeq(lo, std::move(es), 1);
}
}  // namespace

TEST_CASE("lp_norm examples") {
    FinSeq b = scalar_seq(0, {Complex(1, 0), Complex(1, 0)});
    CHECK(lp_norm(PseudolatticeSpec::lp(1), b, kAbs) == doctest::Approx(2.0));
    CHECK(lp_norm(PseudolatticeSpec::lp(kInf), b, kAbs) == doctest::Approx(1.0));
    FinSeq c = scalar_seq(0, {Complex(3, 0), Complex(4, 0)});
    CHECK(lp_norm(PseudolatticeSpec::lp(2), c, kAbs) == doctest::Approx(5.0));
    // c0 on finite support is the sup
    CHECK(lp_norm(PseudolatticeSpec::c0(), c, kAbs) == doctest::Approx(4.0));
    CHECK_THROWS_AS(lp_norm(PseudolatticeSpec::fc(), b, kAbs), input_error);
}

TEST_CASE("fc_norm examples") {
    PseudolatticeSpec fc = PseudolatticeSpec::fc(1e-8);
    CVec v{Complex(2, 1)};
    CHECK(fc_norm(fc, FinSeq::delta(0, v), kAbs) == doctest::Approx(std::abs(Complex(2, 1))));
    FinSeq b = scalar_seq(0, {Complex(1, 0), Complex(1, 0)});
    CHECK(fc_norm(fc, b, kAbs) == doctest::Approx(2.0).epsilon(1e-7));
    FinSeq c = scalar_seq(-1, {Complex(1, 0), Complex(0, 0), Complex(1, 0)});
    CHECK(fc_norm(fc, c, kAbs) == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(fc_norm(fc, FinSeq(1), kAbs) == 0.0);
}

TEST_CASE("fc_norm grid refinement: doubling M moves the value less than tol") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        int d = rng.range(1, 3);
        NormSpec space = rng.norm_spec(d);
        FinSeq b = rng.seq(d);
        double tol = 1e-3;
        detail::TrigPolyEvaluator ev(b.entries(), b.lo(), space);
        double lip = ev.lipschitz();
        if (lip <= 0.0) continue;
        int M = static_cast<int>(std::ceil(2 * std::numbers::pi * lip / tol));
        double v1 = detail::fc_norm_uniform(b, space, M);
        double v2 = detail::fc_norm_uniform(b, space, 2 * M);
        CHECK(std::abs(v2 - v1) < tol);
    }
}

TEST_CASE("uc_norm examples") {
    PseudolatticeSpec signs = PseudolatticeSpec::uc(PseudolatticeSpec::UcMode::SignPatterns);
    PseudolatticeSpec phases = PseudolatticeSpec::uc(PseudolatticeSpec::UcMode::PhaseGrid, 32);

    // dim 1, two positive reals: phases align, |v| + |w|
    FinSeq b = scalar_seq(0, {Complex(3, 0), Complex(4, 0)});
    CHECK(uc_norm(signs, b, kAbs) == doctest::Approx(7.0));
    auto rep = uc_norm_report(phases, b, kAbs);
    CHECK(rep.value <= 7.0 + 1e-12);
    CHECK(rep.value + rep.phaseGapBound >= 7.0);

    CHECK(uc_norm(signs, FinSeq::delta(2, {Complex(0, 5)}), kAbs) == doctest::Approx(5.0));

    // dim 2 euclidean, orthogonal entries: every unit pattern gives sqrt(2)
    NormSpec l2 = NormSpec::lp(2.0, {1.0, 1.0});
    FinSeq e01(0, {CVec{Complex(1, 0), Complex(0, 0)}, CVec{Complex(0, 0), Complex(1, 0)}}, 2);
    CHECK(uc_norm(signs, e01, l2) == doctest::Approx(std::sqrt(2.0)));
    CHECK(uc_norm(phases, e01, l2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("uc_norm capacity errors") {
    PseudolatticeSpec signs = PseudolatticeSpec::uc(PseudolatticeSpec::UcMode::SignPatterns);
    signs.signSupportCap = 3;
    Rng rng(32);
    FinSeq big(0, {rng.vec(1), rng.vec(1), rng.vec(1), rng.vec(1)}, 1);
    CHECK_THROWS_AS(uc_norm(signs, big, kAbs), capacity_error);
    PseudolatticeSpec phases = PseudolatticeSpec::uc(PseudolatticeSpec::UcMode::PhaseGrid, 64);
    FinSeq big2(0, {rng.vec(1), rng.vec(1), rng.vec(1), rng.vec(1), rng.vec(1)}, 1);
    CHECK_THROWS_AS(uc_norm(phases, big2, kAbs), capacity_error);
}

TEST_CASE("pl_norm dispatches over the kinds") {
    FinSeq b = scalar_seq(0, {Complex(1, 0), Complex(1, 0)});
    CHECK(pl_norm(PseudolatticeSpec::lp(1), b, kAbs) == doctest::Approx(2.0));
    CHECK(pl_norm(PseudolatticeSpec::c0(), b, kAbs) == doctest::Approx(1.0));
    CHECK(pl_norm(PseudolatticeSpec::fc(1e-8), b, kAbs) == doctest::Approx(2.0).epsilon(1e-7));
    PseudolatticeSpec signs = PseudolatticeSpec::uc(PseudolatticeSpec::UcMode::SignPatterns);
    CHECK(pl_norm(signs, b, kAbs) == doctest::Approx(2.0));
    // WUC coincides with UC on finite support
    PseudolatticeSpec wuc = PseudolatticeSpec::wuc(PseudolatticeSpec::UcMode::SignPatterns);
    CHECK(pl_norm(wuc, b, kAbs) == pl_norm(signs, b, kAbs));
}

TEST_CASE("norm axioms on random sequences (exact pattern/grid sharing)") {
    Rng rng(33);
    for (int trial = 0; trial < 25; ++trial) {
        int d = rng.range(1, 3);
        NormSpec space = rng.norm_spec(d);
        FinSeq a = rng.seq(d, 3, 3), b = rng.seq(d, 3, 3);
        Complex alpha = rng.cgauss();

        for (double p : {1.0, 2.0, kInf}) {
            PseudolatticeSpec spec = PseudolatticeSpec::lp(p);
            double na = lp_norm(spec, a, space), nb = lp_norm(spec, b, space);
            CHECK(lp_norm(spec, a + b, space) <= na + nb + 1e-10 * (na + nb + 1));
            CHECK(lp_norm(spec, alpha * a, space) ==
                  doctest::Approx(std::abs(alpha) * na).epsilon(1e-10));
            if (!a.empty()) CHECK(na > 0.0);
        }

        // FC on a common uniform grid: triangle and homogeneity are exact
        int M = 16 * (std::max(a.degree(), b.degree()) + 1);
        double fa = detail::fc_norm_uniform(a, space, M);
        double fb = detail::fc_norm_uniform(b, space, M);
        CHECK(detail::fc_norm_uniform(a + b, space, M) <= fa + fb + 1e-10 * (fa + fb + 1));
        CHECK(detail::fc_norm_uniform(alpha * a, space, M) ==
              doctest::Approx(std::abs(alpha) * fa).epsilon(1e-10));
        if (!a.empty()) CHECK(fa > 0.0);

        // UC sign mode: exact on the shared pattern set
        PseudolatticeSpec signs = PseudolatticeSpec::uc(PseudolatticeSpec::UcMode::SignPatterns);
        double ua = uc_norm(signs, a, space), ub = uc_norm(signs, b, space);
        CHECK(uc_norm(signs, a + b, space) <= ua + ub + 1e-10 * (ua + ub + 1));
        CHECK(uc_norm(signs, alpha * a, space) ==
              doctest::Approx(std::abs(alpha) * ua).epsilon(1e-10));
    }
}

TEST_CASE("monotonicity across kinds") {
    Rng rng(34);
    for (int trial = 0; trial < 20; ++trial) {
        int d = rng.range(1, 3);
        NormSpec space = rng.norm_spec(d);
        FinSeq b = rng.seq(d, 3, 4);

        double l1 = lp_norm(PseudolatticeSpec::lp(1), b, space);
        double l2 = lp_norm(PseudolatticeSpec::lp(2), b, space);
        double linf = lp_norm(PseudolatticeSpec::lp(kInf), b, space);
        CHECK(l1 >= l2 - 1e-12 * l1);
        CHECK(l2 >= linf - 1e-12 * l2);

        // uc >= fc >= sup of entry norms: FC is the lambda_n = e^{int} family
        PseudolatticeSpec phases = PseudolatticeSpec::uc(PseudolatticeSpec::UcMode::PhaseGrid, 16);
        auto uc = uc_norm_report(phases, b, space);
        double fcv = fc_norm(PseudolatticeSpec::fc(1e-7), b, space);
        CHECK(uc.value + uc.phaseGapBound + 1e-9 >= fcv);
        CHECK(fcv + 1e-6 >= linf);
    }
}

TEST_CASE("pseudolattice axiom (iii) with C = 1 on random operators") {
    Rng rng(35);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int dIn = rng.range(1, 3), dOut = rng.range(1, 3);
        NormSpec A = rng.norm_spec(dIn), B = rng.norm_spec(dOut);
        LinMap T = rng.matrix(dOut, dIn);
        FinSeq b = rng.seq(dIn, 3, 3);

        for (auto kind : {PseudolatticeSpec::lp(1), PseudolatticeSpec::lp(2),
                          PseudolatticeSpec::lp(kInf), PseudolatticeSpec::fc(1e-8),
                          PseudolatticeSpec::uc(PseudolatticeSpec::UcMode::SignPatterns)}) {
            auto res = testutil::axiom3_audit(kind, T, b, A, B, 1000 + trial);
            CHECK(res.holds(1e-8));
            ++checked;
        }
    }
    CHECK(checked == 300);
}
