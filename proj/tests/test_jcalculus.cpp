#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "interp/jcalculus.hpp"
#include "testutil.hpp"

using namespace interp;
using testutil::Rng;

namespace {
const double kE = std::numbers::e;

FinSeq scalar_seq(int lo, std::vector<Complex> vals) {
    std::vector<CVec> es;
    for (Complex v : vals) es.push_back(CVec{v});
    return FinSeq(lo, std::move(es), 1);
}

Couple abs_couple() { return Couple(1, NormSpec::lp(1.0, {1.0}), NormSpec::lp(1.0, {1.0})); }
}  // namespace

TEST_CASE("j_norm examples") {
    Couple c = abs_couple();
    JSpaceSpec spec = JSpaceSpec::make(PseudolatticeSpec::lp(1), PseudolatticeSpec::lp(1));
    FinSeq b = scalar_seq(0, {Complex(1, 0), Complex(1, 0)});
    CHECK(j_norm(spec, c, b) == doctest::Approx(1.0 + kE));  // max(2, 1 + e)

    Rng rng(41);
    Couple rc = rng.couple(2);
    CVec v = rng.vec(2);
    JSpaceSpec rspec = JSpaceSpec::make(PseudolatticeSpec::lp(2), PseudolatticeSpec::lp(2));
    CHECK(j_norm(rspec, rc, FinSeq::delta(0, v)) ==
          doctest::Approx(std::max(norm(rc.norm0, v), norm(rc.norm1, v))));
    CHECK(j_norm(rspec, rc, FinSeq(2)) == 0.0);
}

TEST_CASE("JSpaceSpec validation") {
    JSpaceSpec spec = JSpaceSpec::make(PseudolatticeSpec::lp(1), PseudolatticeSpec::lp(1));
    spec.s = Complex(3.0, 0.0);  // outside 1 < |s| < e
    CHECK_THROWS_AS(spec.validate(), input_error);
    spec.s = Complex(0.5, 0.0);
    CHECK_THROWS_AS(spec.validate(), input_error);
    spec = JSpaceSpec::make(PseudolatticeSpec::lp(1), PseudolatticeSpec::lp(1), 2.0, 0.5);
    CHECK_NOTHROW(spec.validate());
}

TEST_CASE("variant-e examples") {
    Couple c = abs_couple();
    CVec one{Complex(1, 0)};
    CHECK(j_norm_variant_e(c, 0.5, 1.0, FinSeq::delta(0, one)) == doctest::Approx(1.0));
    CHECK(j_norm_variant_e(c, 0.5, 1.0, FinSeq(1)) == 0.0);
    // two entries: 1 + e^{1/2}, hand-evaluated
    FinSeq b = scalar_seq(0, {Complex(1, 0), Complex(1, 0)});
    CHECK(j_norm_variant_e(c, 0.5, 1.0, b) == doctest::Approx(1.0 + std::sqrt(kE)));
    // base-2 variant of the same input: 1 + sqrt(2)
    CHECK(j_norm_variant_2(c, 0.5, 1.0, b) == doctest::Approx(1.0 + std::sqrt(2.0)));
}

TEST_CASE("jphi_norm is the weighted base-2 variant") {
    Couple c = abs_couple();
    CVec one{Complex(1, 0)};
    PhiLattice phi{1.0, 0.0};
    CHECK(jphi_norm(phi, c, FinSeq::delta(0, one)) == doctest::Approx(1.0));  // J(1, b0)
    CHECK(jphi_norm(phi, c, FinSeq(1)) == 0.0);

    Rng rng(42);
    for (int i = 0; i < 30; ++i) {
        Couple rc = rng.couple(2);
        FinSeq b = rng.seq(2);
        double theta = rng.uniform(0.1, 0.9), p = rng.pick_p();
        if (p == kInf) p = 4.0;
        PhiLattice rphi{p, theta};
        CHECK(jphi_norm(rphi, rc, b) ==
              doctest::Approx(j_norm_variant_2(rc, theta, p, b)).epsilon(1e-14));
    }
}

TEST_CASE("two code paths agree for the pure lp j-norm") {
    // j_norm through pl_norm vs the direct per-index power-sum formula
    Rng rng(43);
    for (int i = 0; i < 40; ++i) {
        int d = rng.range(1, 3);
        Couple c = rng.couple(d);
        FinSeq b = rng.seq(d);
        double p = rng.uniform(1.0, 4.0);
        JSpaceSpec spec = JSpaceSpec::make(PseudolatticeSpec::lp(p), PseudolatticeSpec::lp(p));
        double viaPl = j_norm(spec, c, b);
        double comp[2] = {0.0, 0.0};
        for (int j = 0; j <= 1; ++j) {
            double acc = 0.0;
            for (int n = b.lo(); n <= b.hi(); ++n) {
                double w = std::exp(static_cast<double>(j * n));
                double nb = norm(j == 0 ? c.norm0 : c.norm1, b.at(n));
                acc += std::pow(w * nb, p);
            }
            comp[j] = std::pow(acc, 1.0 / p);
        }
        double direct = std::max(comp[0], comp[1]);
        CHECK(viaPl == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("nontriviality witness: delta_0 has finite nonzero norm and sum 1") {
    Couple c = abs_couple();
    FinSeq d0 = FinSeq::delta(0, {Complex(1, 0)});
    for (double theta : {0.25, 0.5, 0.75}) {
        for (auto kind :
             {PseudolatticeSpec::lp(1), PseudolatticeSpec::lp(2), PseudolatticeSpec::lp(kInf),
              PseudolatticeSpec::c0(), PseudolatticeSpec::fc(1e-8),
              PseudolatticeSpec::uc(PseudolatticeSpec::UcMode::SignPatterns)}) {
            JSpaceSpec spec = JSpaceSpec::make(kind, kind, kE, theta);
            double v = j_norm(spec, c, d0);
            CHECK(v > 0.0);
            CHECK(std::isfinite(v));
            // sum_n s^n b_n over the singleton support
            Complex s = spec.s;
            CHECK(std::abs(ipow(s, 0) * Complex(1, 0) - Complex(1, 0)) == 0.0);
        }
    }
}

TEST_CASE("equivalence_ratio basics") {
    Couple c = abs_couple();
    FinSeq b = scalar_seq(0, {Complex(1, 0), Complex(2, 0)});
    NormSelector a = VariantJSpec{kE, 0.5, 1.0};
    CHECK(equivalence_ratio(c, b, a, a) == doctest::Approx(1.0));
    // scale invariance
    NormSelector j = JSpaceSpec::make(PseudolatticeSpec::lp(1), PseudolatticeSpec::lp(1));
    double r1 = equivalence_ratio(c, b, a, j);
    double r2 = equivalence_ratio(c, Complex(3, 1) * b, a, j);
    CHECK(r1 == doctest::Approx(r2).epsilon(1e-12));
    CHECK_THROWS_AS(equivalence_ratio(c, FinSeq(1), a, j), input_error);
}

TEST_CASE("variant vs j-norm ratio lies in [1, 2] after reweighting") {
    // per-index max against outer max: with c_n = e^{theta n} b_n the two
    // evaluations share weights e^{(j-theta)n} and the interchange bound
    // max(a,b) <= a+b <= 2 max(a,b) pins the ratio per index
    Rng rng(44);
    for (int i = 0; i < 60; ++i) {
        int d = rng.range(1, 3);
        Couple c = rng.couple(d);
        FinSeq cs = rng.seq(d);
        double theta = rng.uniform(0.1, 0.9);
        double p = rng.uniform(1.0, 3.0);

        // b_n = e^{-theta n} c_n
        FinSeq b = detail::geometric_scaled(cs, kE, -theta);
        JSpaceSpec spec = JSpaceSpec::make(PseudolatticeSpec::lp(p), PseudolatticeSpec::lp(p));
        double vVariant = j_norm_variant_e(c, theta, p, cs);
        double vJ = j_norm(spec, c, b);
        double ratio = vVariant / vJ;
        CHECK(ratio >= 1.0 - 1e-10);
        CHECK(ratio <= 2.0 + 1e-10);
    }
}

TEST_CASE("homogeneity and triangle inequality for the couple-level norms") {
    Rng rng(45);
    for (int i = 0; i < 30; ++i) {
        int d = rng.range(1, 2);
        Couple c = rng.couple(d);
        FinSeq a = rng.seq(d, 2, 3), b = rng.seq(d, 2, 3);
        Complex alpha = rng.cgauss();
        double theta = rng.uniform(0.1, 0.9);

        NormSelector sels[] = {
            NormSelector(JSpaceSpec::make(PseudolatticeSpec::lp(1), PseudolatticeSpec::lp(2))),
            NormSelector(VariantJSpec{kE, theta, 1.0}),
            NormSelector(VariantJSpec{2.0, theta, 2.0}),
            NormSelector(PhiLattice{1.0, theta}),
        };
        for (const auto& sel : sels) {
            double na = evaluate_norm(sel, c, a);
            double nb = evaluate_norm(sel, c, b);
            CHECK(evaluate_norm(sel, c, a + b) <= na + nb + 1e-10 * (na + nb + 1));
            CHECK(evaluate_norm(sel, c, alpha * a) ==
                  doctest::Approx(std::abs(alpha) * na).epsilon(1e-10));
        }
    }
}
