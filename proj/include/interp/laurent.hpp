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

#ifndef INTERP_LAURENT_HPP
#define INTERP_LAURENT_HPP

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "interp/common.hpp"
#include "interp/couple.hpp"
#include "interp/errors.hpp"
#include "interp/finseq.hpp"
#include "interp/jcalculus.hpp"
#include "interp/pseudolattice.hpp"

namespace interp {

/// Vector-valued Laurent polynomial: the coefficient view of a FinSeq.
struct LaurentPoly {
    FinSeq coeffs;

    LaurentPoly() = default;
    explicit LaurentPoly(FinSeq c) : coeffs(std::move(c)) {}
    int dim() const { return coeffs.dim(); }
};

/// The annulus 1 <= |z| <= base with evaluation point s = base^theta.
struct AnnulusSpec {
    double base = std::numbers::e;
    double theta = 0.5;

    void validate() const {
        if (!(base > 1.0)) throw input_error("AnnulusSpec: base must exceed 1");
        if (!(theta > 0.0 && theta < 1.0))
            throw input_error("AnnulusSpec: theta must lie in (0,1)");
    }
    Complex s() const { return Complex(std::pow(base, theta), 0.0); }
};

/// Exact finite evaluation of f(z) = sum_n z^n b_n; Horner on the
/// nonnegative part and Horner in 1/z on the negative part.
inline CVec eval(const LaurentPoly& f, Complex z) {
    const FinSeq& b = f.coeffs;
    size_t d = static_cast<size_t>(std::max(b.dim(), 1));
    CVec out(d, Complex(0.0, 0.0));
    if (b.empty()) return out;
    if (z == Complex(0.0, 0.0)) {
        if (b.lo() < 0)
            throw input_error("eval: z = 0 with negative-index coefficients");
        return b.at(0);
    }
    if (b.hi() >= 0) {
        CVec acc(d, Complex(0.0, 0.0));
        for (int n = b.hi(); n >= 0; --n) {
            CVec cn = b.at(n);
            for (size_t i = 0; i < d; ++i) acc[i] = acc[i] * z + cn[i];
        }
        out = std::move(acc);
    }
    if (b.lo() < 0) {
        Complex w = 1.0 / z;
        CVec acc(d, Complex(0.0, 0.0));
        for (int n = b.lo(); n <= -1; ++n) {
            CVec cn = b.at(n);
            for (size_t i = 0; i < d; ++i) acc[i] = acc[i] * w + cn[i];
        }
        for (size_t i = 0; i < d; ++i) out[i] += acc[i] * w;  // trailing z^{-1}
    }
    return out;
}

inline CVec eval(const FinSeq& coeffs, Complex z) { return eval(LaurentPoly(coeffs), z); }

/// Exact coefficient of z^n.
inline CVec fourier_coeff(const LaurentPoly& f, int n) { return f.coeffs.at(n); }

/// Trapezoid-rule coefficient from M equispaced samples f(r e^{it_k}),
/// t_k = 2 pi k / M. Exact for Laurent polynomials of degree < M/2, which
/// the caller declares. b_n = r^{-n} (1/M) sum_k e^{-i n t_k} f_k.
inline CVec fourier_coeff(const std::vector<CVec>& samples, int n, double radius,
                          int declaredDegree) {
    if (samples.empty()) throw input_error("fourier_coeff: no samples");
    long long M = static_cast<long long>(samples.size());
    if (M <= 2ll * declaredDegree)
        throw input_error("fourier_coeff: need more than 2*degree samples, got " +
                          std::to_string(M));
    if (!(radius > 0.0)) throw input_error("fourier_coeff: radius must be positive");
    size_t d = samples[0].size();
    constexpr double twoPi = 6.283185307179586476925286766559;
    CVec acc(d, Complex(0.0, 0.0));
    for (long long k = 0; k < M; ++k) {
        Complex ph = std::polar(1.0, -twoPi * static_cast<double>(n) * static_cast<double>(k) /
                                          static_cast<double>(M));
        for (size_t i = 0; i < d; ++i) acc[i] += ph * samples[k][i];
    }
    double scale = std::pow(radius, -static_cast<double>(n)) / static_cast<double>(M);
    for (Complex& z : acc) z *= scale;
    return acc;
}

/// Fejer partial sum g_N(z) = sum_{|n|<=N} z^n (1 - |n|/(N+1)) b_n.
inline CVec fejer_sum(const FinSeq& b, int N, Complex z) {
    if (N < 0) throw input_error("fejer_sum: N must be >= 0");
    size_t d = static_cast<size_t>(std::max(b.dim(), 1));
    CVec out(d, Complex(0.0, 0.0));
    if (b.empty()) return out;
    for (int n = std::max(b.lo(), -N); n <= std::min(b.hi(), N); ++n) {
        double w = 1.0 - static_cast<double>(std::abs(n)) / (N + 1.0);
        Complex zn = ipow(z, n);
        CVec cn = b.at(n);
        for (size_t i = 0; i < d; ++i) out[i] += zn * w * cn[i];
    }
    return out;
}

/// sup over both boundary circles: max_j sup_t || f(base^j e^{it}) ||_{B_j},
/// certified within tol by the same grid rule as fc_norm (the circle-j
/// coefficients are base^{jn} b_n).
inline double boundary_norm(const Couple& c, const LaurentPoly& f, const AnnulusSpec& spec,
                            double tol = 1e-6) {
    spec.validate();
    const FinSeq& b = f.coeffs;
    if (b.empty()) return 0.0;
    if (b.dim() != c.dim) throw input_error("boundary_norm: dimension mismatch");
    double best = 0.0;
    for (int j = 0; j <= 1; ++j) {
        FinSeq scaledSeq = j == 0 ? b : detail::geometric_scaled(b, spec.base, 1.0);
        const NormSpec& space = j == 0 ? c.norm0 : c.norm1;
        detail::TrigPolyEvaluator ev(scaledSeq.entries(), scaledSeq.lo(), space);
        double lip = ev.lipschitz();
        int coarse = std::max(64, 8 * b.degree() + 16);
        best = std::max(best, detail::certified_sup(ev, b.degree(), lip, tol, coarse));
    }
    return best;
}

struct CompatBound {
    double lhs = 0.0;  // || sum z^n b_n ||_{B0+B1}
    double rhs = 0.0;  // C(z) * j-norm with the l^inf pair
};

/// The Laurent-compatibility estimate with the explicit constant
/// C(z) = sum_{n<0} |z|^n + sum_{n>=0} (|z|/base)^n over the support:
/// for n < 0 each term is bounded through B0, for n >= 0 through B1.
inline CompatBound laurent_compat_bound(const Couple& c, const JSpaceSpec& spec,
                                        const FinSeq& b, Complex z) {
    spec.validate();
    auto isInfKind = [](const PseudolatticeSpec& x) {
        return (x.kind == PseudolatticeSpec::Kind::Lp && x.p == kInf) ||
               x.kind == PseudolatticeSpec::Kind::C0;
    };
    if (!isInfKind(spec.x0) || !isInfKind(spec.x1))
        throw input_error("laurent_compat_bound: spec must use the l^inf pair");
    double az = std::abs(z);
    if (!(az > 1.0 && az < spec.base))
        throw input_error("laurent_compat_bound: |z| must lie in the open annulus");
    CompatBound out;
    if (b.empty()) return out;
    out.lhs = sum_norm(c, eval(b, z));
    double C = 0.0;
    for (int n = b.lo(); n <= b.hi(); ++n)
        C += n < 0 ? std::pow(az, n) : std::pow(az / spec.base, n);
    out.rhs = C * j_norm(spec, c, b);
    return out;
}

}  // namespace interp

#endif  // INTERP_LAURENT_HPP
