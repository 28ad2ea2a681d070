/*
   Copyright 2026 the interp-lab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef INTERP_PSEUDOLATTICE_HPP
#define INTERP_PSEUDOLATTICE_HPP

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "interp/common.hpp"
#include "interp/couple.hpp"
#include "interp/errors.hpp"
#include "interp/finseq.hpp"

namespace interp {

/// Which sequence-space norm to apply to a vector-valued sequence.
struct PseudolatticeSpec {
    enum class Kind { Lp, C0, FC, UC, WUC };
    enum class UcMode { PhaseGrid, SignPatterns };

    Kind kind = Kind::Lp;
    double p = 2.0;        // only for Kind::Lp
    double tol = 1e-6;     // certified gap for sampled suprema
    UcMode ucMode = UcMode::PhaseGrid;  // reference semantics; +-1 signs are a labeled variant
    int phaseCount = 12;   // q-th roots of unity per coordinate in PhaseGrid mode
    int signSupportCap = 20;

    static PseudolatticeSpec lp(double p, double tol = 1e-6) {
        PseudolatticeSpec s;
        s.kind = Kind::Lp;
        s.p = p;
        s.tol = tol;
        return s;
    }
    static PseudolatticeSpec c0(double tol = 1e-6) {
        PseudolatticeSpec s;
        s.kind = Kind::C0;
        s.tol = tol;
        return s;
    }
    static PseudolatticeSpec fc(double tol = 1e-6) {
        PseudolatticeSpec s;
        s.kind = Kind::FC;
        s.tol = tol;
        return s;
    }
    static PseudolatticeSpec uc(UcMode mode = UcMode::PhaseGrid, int q = 12) {
        PseudolatticeSpec s;
        s.kind = Kind::UC;
        s.ucMode = mode;
        s.phaseCount = q;
        return s;
    }
    static PseudolatticeSpec wuc(UcMode mode = UcMode::PhaseGrid, int q = 12) {
        PseudolatticeSpec s = uc(mode, q);
        s.kind = Kind::WUC;
        return s;
    }

    void validate() const {
        if (kind == Kind::Lp && !(p >= 1.0)) throw input_error("PseudolatticeSpec: p < 1");
        if (!(tol > 0.0)) throw input_error("PseudolatticeSpec: tol must be positive");
        if (phaseCount < 3) throw input_error("PseudolatticeSpec: phase count < 3");
    }
};

namespace detail {

inline std::vector<double> entry_norms(const FinSeq& b, const NormSpec& space) {
    std::vector<double> out;
    out.reserve(b.entries().size());
    for (const CVec& e : b.entries()) out.push_back(norm(space, e));
    return out;
}

/// l^p of nonnegative reals, max-factored for large p.
inline double lp_of(const std::vector<double>& xs, double p) {
    if (xs.empty()) return 0.0;
    if (p == kInf) {
        double m = 0.0;
        for (double x : xs) m = std::max(m, x);
        return m;
    }
    double m = 0.0;
    for (double x : xs) m = std::max(m, x);
    if (m == 0.0) return 0.0;
    std::vector<double> terms(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) terms[i] = std::pow(xs[i] / m, p);
    return m * std::pow(pairwise_sum(terms), 1.0 / p);
}

/// Certified supremum over [0, 2pi) of t -> || f(e^{it}) ||_B for a degree-d
/// vector trigonometric polynomial. The returned value is a max over a
/// uniform grid (hence a lower bound of the sup) and sup - value <= tol.
///
/// Grid sizing: the linear bound M >= 2 pi Lip / tol when that is small;
/// otherwise the quadratic Bernstein certificate. Writing the norm as a sup
/// of dual functionals, h is a sup of real trigonometric polynomials p of
/// degree <= d with sup p = sup h attained by the maximizer; Bernstein gives
/// |p''| <= d^2 ||p||, so the grid max g on M points satisfies
/// sup <= g / (1 - d^2 pi^2 / (2 M^2)). Passes enlarge M until the implied
/// gap drops below tol.
inline double certified_sup(const std::function<double(double)>& h, int degree,
                            double lipschitz, double tol, int coarseMin) {
    constexpr double twoPi = 6.283185307179586476925286766559;
    if (lipschitz <= 0.0 || degree <= 0) return h(0.0);
    const double d = static_cast<double>(degree);

    auto uniform_max = [&](long long M) {
        double best = 0.0;
        for (long long k = 0; k < M; ++k)
            best = std::max(best, h(twoPi * static_cast<double>(k) / static_cast<double>(M)));
        return best;
    };

    double formulaM = std::ceil(twoPi * lipschitz / tol);
    if (formulaM <= static_cast<double>(1 << 16))
        return uniform_max(std::max<long long>(static_cast<long long>(formulaM), coarseMin));

    long long M = std::max<long long>(coarseMin, 16 * degree);
    double g = uniform_max(M);
    if (g <= 0.0) return 0.0;
    for (int pass = 0; pass < 4; ++pass) {
        double delta = tol / (g + tol);  // need g * delta / (1 - delta) <= tol
        long long mNeed = static_cast<long long>(
            std::ceil(d * 3.14159265358979323846 / std::sqrt(2.0 * delta))) + 1;
        mNeed = std::max(mNeed, 4 * degree + 1ll);
        if (mNeed <= M) break;
        M = mNeed;
        g = uniform_max(M);
    }
    return g;
}

/// Evaluates t -> || sum_n c_n e^{int} ||_B for a fixed coefficient list.
class TrigPolyEvaluator {
   public:
    TrigPolyEvaluator(std::vector<CVec> coeffs, int lo, const NormSpec& space)
        : coeffs_(std::move(coeffs)), lo_(lo), space_(space) {}

    double operator()(double t) const {
        if (coeffs_.empty()) return 0.0;
        size_t d = coeffs_[0].size();
        CVec acc(d, Complex(0.0, 0.0));
        Complex rot = std::polar(1.0, t);
        Complex cur = std::polar(1.0, static_cast<double>(lo_) * t);
        for (const CVec& c : coeffs_) {
            for (size_t i = 0; i < d; ++i) acc[i] += cur * c[i];
            cur *= rot;
        }
        return norm(space_, acc);
    }

    /// sum_n |n| ||c_n||_B : a lipschitz bound in t (B-norm triangle).
    double lipschitz() const {
        double s = 0.0;
        for (size_t k = 0; k < coeffs_.size(); ++k)
            s += std::abs(static_cast<double>(lo_) + static_cast<double>(k)) *
                 norm(space_, coeffs_[k]);
        return s;
    }

    double mass() const {
        double s = 0.0;
        for (const CVec& c : coeffs_) s += norm(space_, c);
        return s;
    }

   private:
    std::vector<CVec> coeffs_;
    int lo_;
    const NormSpec& space_;
};

/// FC value on a plain uniform grid of M points (no certificate); exposed
/// for the grid-refinement property tests.
inline double fc_norm_uniform(const FinSeq& b, const NormSpec& space, int M) {
    if (b.empty()) return 0.0;
    TrigPolyEvaluator ev(b.entries(), b.lo(), space);
    constexpr double twoPi = 6.283185307179586476925286766559;
    double best = 0.0;
    for (int k = 0; k < M; ++k) best = std::max(best, ev(twoPi * k / M));
    return best;
}

}  // namespace detail

/// ||{ ||b_n||_B }||_{l^p} (c0 coincides with l^inf on finite support).
inline double lp_norm(const PseudolatticeSpec& spec, const FinSeq& b, const NormSpec& space) {
    spec.validate();
    if (spec.kind != PseudolatticeSpec::Kind::Lp && spec.kind != PseudolatticeSpec::Kind::C0)
        throw input_error("lp_norm: spec kind must be lp or c0");
    double p = spec.kind == PseudolatticeSpec::Kind::C0 ? kInf : spec.p;
    return detail::lp_of(detail::entry_norms(b, space), p);
}

/// sup_t || sum_n e^{int} b_n ||_B. On finite support the representing
/// continuous function is exactly this trigonometric polynomial, so no
/// coefficient-extraction integral is involved; the supremum is certified
/// within spec.tol.
inline double fc_norm(const PseudolatticeSpec& spec, const FinSeq& b, const NormSpec& space) {
    spec.validate();
    if (spec.kind != PseudolatticeSpec::Kind::FC) throw input_error("fc_norm: spec kind must be FC");
    if (b.empty()) return 0.0;
    detail::TrigPolyEvaluator ev(b.entries(), b.lo(), space);
    double lip = ev.lipschitz();
    int coarse = std::max(64, 8 * b.degree() + 16);
    return detail::certified_sup(ev, b.degree(), lip, spec.tol, coarse);
}

struct UcReport {
    double value = 0.0;
    /// In PhaseGrid mode the true supremum exceeds value by at most this.
    double phaseGapBound = 0.0;
};

/// sup over |lambda_n| <= 1 of || sum lambda_n b_n ||_B. By convexity the
/// supremum over the polydisc is attained at extreme points, so SignPatterns
/// mode enumerates lambda_n = +-1 exactly (2^m patterns) and PhaseGrid mode
/// walks q-th roots of unity per coordinate with a reported gap bound.
inline UcReport uc_norm_report(const PseudolatticeSpec& spec, const FinSeq& b,
                               const NormSpec& space) {
    spec.validate();
    if (spec.kind != PseudolatticeSpec::Kind::UC && spec.kind != PseudolatticeSpec::Kind::WUC)
        throw input_error("uc_norm: spec kind must be UC or WUC");
    UcReport rep;
    if (b.empty()) return rep;

    std::vector<const CVec*> terms;
    for (const CVec& e : b.entries())
        if (!is_zero(e)) terms.push_back(&e);
    size_t m = terms.size();
    size_t d = static_cast<size_t>(b.dim());

    std::vector<Complex> lambdas;
    if (spec.ucMode == PseudolatticeSpec::UcMode::SignPatterns) {
        if (m > static_cast<size_t>(spec.signSupportCap))
            throw capacity_error("uc_norm: support " + std::to_string(m) + " exceeds cap " +
                                 std::to_string(spec.signSupportCap) +
                                 " in sign mode; use the complex phase grid");
        lambdas = {Complex(1, 0), Complex(-1, 0)};
    } else {
        double patterns = std::pow(static_cast<double>(spec.phaseCount), static_cast<double>(m));
        if (patterns > static_cast<double>(1 << 22))
            throw capacity_error("uc_norm: phase grid would need " + std::to_string(patterns) +
                                 " patterns; reduce support or phase count");
        constexpr double twoPi = 6.283185307179586476925286766559;
        lambdas.reserve(static_cast<size_t>(spec.phaseCount));
        for (int k = 0; k < spec.phaseCount; ++k)
            lambdas.push_back(std::polar(1.0, twoPi * k / spec.phaseCount));
        double mass = 0.0;
        for (const CVec* t : terms) mass += norm(space, *t);
        rep.phaseGapBound = mass * twoPi / spec.phaseCount;
    }

    double best = 0.0;
    CVec partial(d, Complex(0.0, 0.0));
    // depth-first over patterns with a running partial sum
    std::function<void(size_t)> walk = [&](size_t level) {
        if (level == m) {
            best = std::max(best, norm(space, partial));
            return;
        }
        const CVec& t = *terms[level];
        for (Complex lam : lambdas) {
            for (size_t i = 0; i < d; ++i) partial[i] += lam * t[i];
            walk(level + 1);
            for (size_t i = 0; i < d; ++i) partial[i] -= lam * t[i];
        }
    };
    walk(0);
    rep.value = best;
    return rep;
}

inline double uc_norm(const PseudolatticeSpec& spec, const FinSeq& b, const NormSpec& space) {
    return uc_norm_report(spec, b, space).value;
}

/// Dispatch over the five pseudolattice kinds. WUC coincides with UC on
/// finitely supported sequences and routes there.
inline double pl_norm(const PseudolatticeSpec& spec, const FinSeq& b, const NormSpec& space) {
    switch (spec.kind) {
        case PseudolatticeSpec::Kind::Lp:
        case PseudolatticeSpec::Kind::C0:
            return lp_norm(spec, b, space);
        case PseudolatticeSpec::Kind::FC:
            return fc_norm(spec, b, space);
        case PseudolatticeSpec::Kind::UC:
        case PseudolatticeSpec::Kind::WUC:
            return uc_norm(spec, b, space);
    }
    throw input_error("pl_norm: unknown kind");
}

}  // namespace interp

#endif  // INTERP_PSEUDOLATTICE_HPP
