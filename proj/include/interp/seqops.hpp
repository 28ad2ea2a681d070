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

#ifndef INTERP_SEQOPS_HPP
#define INTERP_SEQOPS_HPP

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "interp/common.hpp"
#include "interp/errors.hpp"
#include "interp/finseq.hpp"
#include "interp/jcalculus.hpp"
#include "interp/laurent.hpp"

namespace interp {

/// Right shift S({b_n}) = {b_{n-1}}: the support window moves up by one.
inline FinSeq shift(const FinSeq& b) { return b.shifted(1); }

inline FinSeq unshift(const FinSeq& b) { return b.shifted(-1); }

struct DiffResult {
    FinSeq seq;
    double threshold = 0.0;  // absolute tail cutoff that was applied
    int truncatedAt = 0;     // first omitted index on the decaying side
};

/// The coefficient-level differentiation operators:
///   j=0:  out_n = sum_{k<0} rho^{-k} b_{n+k+1}   (decays as n -> +inf)
///   j=1:  out_n = sum_{k>=0} rho^k  b_{n+k+1}    (decays as n -> -inf)
/// For finite input the output has one finite edge and one geometrically
/// decaying tail, truncated at 1e-14 * mass with the cut index reported.
inline DiffResult diff_op(int j, Complex rho, const FinSeq& b) {
    if (j != 0 && j != 1) throw input_error("diff_op: j must be 0 or 1");
    double r = std::abs(rho);
    if (!(r > 0.0 && r < 1.0)) throw input_error("diff_op: need 0 < |rho| < 1");
    DiffResult res;
    if (b.empty()) {
        res.seq = FinSeq(std::max(b.dim(), 1));
        return res;
    }
    const size_t d = static_cast<size_t>(b.dim());
    const double mass = b.euclidean_mass();
    const double thresh = 1e-14 * mass;
    res.threshold = thresh;
    // steps past the support edge until rho^steps * mass < thresh
    int tailSteps = static_cast<int>(std::ceil(std::log(1e-14) / std::log(r))) + 1;

    std::vector<CVec> out;
    if (j == 0) {
        // out_n = rho * (b_n + out_{n-1}), n from lo upward
        int lo = b.lo(), hiOut = b.hi() + tailSteps;
        CVec prev(d, Complex(0.0, 0.0));
        for (int n = lo; n <= hiOut; ++n) {
            CVec cur = b.at(n);
            for (size_t i = 0; i < d; ++i) cur[i] = rho * (cur[i] + prev[i]);
            out.push_back(cur);
            prev = out.back();
        }
        res.truncatedAt = hiOut + 1;
        res.seq = FinSeq(lo, std::move(out), b.dim());
    } else {
        // out_n = b_{n+1} + rho * out_{n+1}, n from hi-1 downward
        int hiOut = b.hi() - 1, loOut = b.lo() - tailSteps;
        CVec prev(d, Complex(0.0, 0.0));
        std::vector<CVec> rev;
        for (int n = hiOut; n >= loOut; --n) {
            CVec cur = b.at(n + 1);
            for (size_t i = 0; i < d; ++i) cur[i] += rho * prev[i];
            rev.push_back(cur);
            prev = rev.back();
        }
        res.truncatedAt = loOut - 1;
        out.assign(rev.rbegin(), rev.rend());
        res.seq = FinSeq(loOut, std::move(out), b.dim());
    }
    return res;
}

/// Synthetic division of a Laurent polynomial vanishing at s: returns g with
/// (z - s) g = f at the coefficient level, f_n = g_{n-1} - s g_n. The two
/// one-sided recursions (upward from the bottom index, downward from the top)
/// are spliced at mid-support and must meet consistently; their mismatch is
/// the finite-support shadow of f(s) != 0.
inline LaurentPoly divide_at_zero(const LaurentPoly& f, Complex s, double zeroTol = 1e-9) {
    const FinSeq& b = f.coeffs;
    if (b.empty()) return LaurentPoly(FinSeq(std::max(b.dim(), 1)));
    if (s == Complex(0.0, 0.0)) throw input_error("divide_at_zero: s must be nonzero");
    const double mass = b.euclidean_mass();
    CVec fs = eval(f, s);
    double residual = 0.0;
    for (Complex z : fs) residual += abs2(z);
    residual = std::sqrt(residual);
    if (residual > zeroTol * mass)
        throw precondition_error("divide_at_zero: f(s) is nonzero (residual " +
                                     std::to_string(residual) + ")",
                                 residual);

    const int lo = b.lo(), hi = b.hi();
    const size_t d = static_cast<size_t>(b.dim());
    if (hi - 1 < lo) return LaurentPoly(FinSeq(b.dim()));  // single vanishing coefficient

    const int len = hi - lo;  // g spans lo .. hi-1
    std::vector<CVec> up(static_cast<size_t>(len)), down(static_cast<size_t>(len));
    // upward: g_lo = -f_lo / s;  g_n = (g_{n-1} - f_n) / s
    up[0] = b.at(lo);
    for (size_t i = 0; i < d; ++i) up[0][i] = -up[0][i] / s;
    for (int n = lo + 1; n <= hi - 1; ++n) {
        CVec fn = b.at(n);
        CVec& g = up[static_cast<size_t>(n - lo)];
        g.resize(d);
        for (size_t i = 0; i < d; ++i) g[i] = (up[static_cast<size_t>(n - 1 - lo)][i] - fn[i]) / s;
    }
    // downward: g_{hi-1} = f_hi;  g_n = f_{n+1} + s g_{n+1}
    down[static_cast<size_t>(len - 1)] = b.at(hi);
    for (int n = hi - 2; n >= lo; --n) {
        CVec fn = b.at(n + 1);
        CVec& g = down[static_cast<size_t>(n - lo)];
        g.resize(d);
        for (size_t i = 0; i < d; ++i)
            g[i] = fn[i] + s * down[static_cast<size_t>(n + 1 - lo)][i];
    }
    // splice at mid-support and check the recursions agree there
    int mid = len / 2;
    double meet = 0.0;
    for (int k = std::max(0, mid - 1); k <= std::min(len - 1, mid); ++k) {
        double t = 0.0;
        for (size_t i = 0; i < d; ++i)
            t += abs2(up[static_cast<size_t>(k)][i] - down[static_cast<size_t>(k)][i]);
        meet = std::max(meet, std::sqrt(t));
    }
    if (meet > 1e-10 * std::max(mass, 1.0))
        throw numerical_error("divide_at_zero: one-sided recursions disagree by " +
                              std::to_string(meet));
    std::vector<CVec> g(static_cast<size_t>(len));
    for (int k = 0; k < len; ++k)
        g[static_cast<size_t>(k)] = k < mid ? up[static_cast<size_t>(k)] : down[static_cast<size_t>(k)];
    return LaurentPoly(FinSeq(lo, std::move(g), b.dim()));
}

/// Coefficient sequence of (z - s) h: {h_{n-1} - s h_n}. Its weighted sum
/// sum_n s^n out_n telescopes to zero exactly.
inline FinSeq null_corrector(const FinSeq& h, Complex s) {
    FinSeq out = shift(h);
    out -= s * h;
    return out;
}

struct RkBound {
    double lhs = 0.0;  // j-norm of the corrector of k
    double rhs = 0.0;  // base * (1 + C) * j-norm of k, with C = 1
};

/// The corrector estimate || {k_{n-1} - s k_n} || <= base (1 + C) || {k_n} ||,
/// where C bounds the shift norm; C = 1 for the l^p, c0, FC and UC kinds
/// (the shift acts isometrically there).
inline RkBound rk_bound_check(const Couple& c, const JSpaceSpec& spec, const FinSeq& k) {
    spec.validate();
    RkBound out;
    if (k.empty()) return out;
    out.lhs = j_norm(spec, c, null_corrector(k, spec.s));
    constexpr double shiftNormBound = 1.0;
    out.rhs = spec.base * (1.0 + shiftNormBound) * j_norm(spec, c, k);
    double slack = 1e-9 * (1.0 + out.rhs) + 2.0 * (spec.x0.tol + spec.x1.tol);
    if (out.lhs > out.rhs + slack)
        throw numerical_error("rk_bound_check: corrector bound violated: " +
                              std::to_string(out.lhs) + " > " + std::to_string(out.rhs));
    return out;
}

}  // namespace interp

#endif  // INTERP_SEQOPS_HPP
