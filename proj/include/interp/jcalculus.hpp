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

#ifndef INTERP_JCALCULUS_HPP
#define INTERP_JCALCULUS_HPP

#include <cmath>
#include <numbers>
#include <variant>
#include <vector>

#include "interp/common.hpp"
#include "interp/couple.hpp"
#include "interp/errors.hpp"
#include "interp/finseq.hpp"
#include "interp/pseudolattice.hpp"

namespace interp {

/// The couple-level sequence norm max_j || {base^{jn} b_n} ||_{X_j(B_j)},
/// together with the evaluation point s on the open annulus 1 < |z| < base.
struct JSpaceSpec {
    PseudolatticeSpec x0;
    PseudolatticeSpec x1;
    double base = std::numbers::e;
    double theta = 0.5;  // places s = base^theta when s is not given explicitly
    Complex s{0.0, 0.0};

    static JSpaceSpec make(PseudolatticeSpec x0, PseudolatticeSpec x1,
                           double base = std::numbers::e, double theta = 0.5) {
        JSpaceSpec spec;
        spec.x0 = x0;
        spec.x1 = x1;
        spec.base = base;
        spec.theta = theta;
        spec.s = Complex(std::pow(base, theta), 0.0);
        return spec;
    }

    void validate() const {
        if (!(base > 1.0)) throw input_error("JSpaceSpec: base must exceed 1");
        double as = std::abs(s);
        if (!(as > 1.0 && as < base))
            throw input_error("JSpaceSpec: s must satisfy 1 < |s| < base");
        x0.validate();
        x1.validate();
    }
};

/// J-functional norm variant ||{ base^{-theta n} J(base^n, c_n) }||_{l^p}.
struct VariantJSpec {
    double base = std::numbers::e;
    double theta = 0.5;
    double p = 1.0;
};

/// Weighted-l^p lattice for the discrete J_Phi method: Phi-norm of {x_n}
/// equals the l^p norm of {2^{-theta n} x_n} with theta = weightExponent.
struct PhiLattice {
    double p = 1.0;
    double weightExponent = 0.5;
};

using NormSelector = std::variant<JSpaceSpec, VariantJSpec, PhiLattice>;

namespace detail {

/// Entries rescaled by base^{alpha n}.
inline FinSeq geometric_scaled(const FinSeq& b, double base, double alpha) {
    if (b.empty() || alpha == 0.0) return b;
    std::vector<CVec> entries = b.entries();
    for (int k = 0; k < b.support_size(); ++k) {
        double f = std::pow(base, alpha * (b.lo() + k));
        for (Complex& z : entries[static_cast<size_t>(k)]) z *= f;
    }
    return FinSeq(b.lo(), std::move(entries), b.dim());
}

}  // namespace detail

/// max_j || {base^{jn} b_n} ||_{X_j(B_j)}.
inline double j_norm(const JSpaceSpec& spec, const Couple& c, const FinSeq& b) {
    spec.validate();
    if (b.empty()) return 0.0;
    double n0 = pl_norm(spec.x0, b, c.norm0);
    double n1 = pl_norm(spec.x1, detail::geometric_scaled(b, spec.base, 1.0), c.norm1);
    return std::max(n0, n1);
}

/// ||{ base^{-theta n} J(base^n, b_n) }||_{l^p} over the support.
inline double j_norm_variant(const Couple& c, double base, double theta, double p,
                             const FinSeq& b) {
    if (!(base > 1.0)) throw input_error("j_norm_variant: base must exceed 1");
    if (!(theta > 0.0 && theta < 1.0) && theta != 0.0)
        throw input_error("j_norm_variant: theta must lie in [0,1)");
    if (!(p >= 1.0)) throw input_error("j_norm_variant: p must be >= 1");
    if (b.empty()) return 0.0;
    std::vector<double> terms;
    terms.reserve(b.entries().size());
    for (int n = b.lo(); n <= b.hi(); ++n) {
        double t = std::pow(base, static_cast<double>(n));
        terms.push_back(std::pow(base, -theta * n) * j_functional(c, t, b.at(n)));
    }
    return detail::lp_of(terms, p);
}

inline double j_norm_variant_e(const Couple& c, double theta, double p, const FinSeq& b) {
    return j_norm_variant(c, std::numbers::e, theta, p, b);
}

inline double j_norm_variant_2(const Couple& c, double theta, double p, const FinSeq& b) {
    return j_norm_variant(c, 2.0, theta, p, b);
}

/// Phi-norm of {J(2^n, b_n)} for the weighted-l^p lattice family; identical
/// to the base-2 variant norm after the 2^{theta n} substitution.
inline double jphi_norm(const PhiLattice& phi, const Couple& c, const FinSeq& b) {
    return j_norm_variant(c, 2.0, phi.weightExponent, phi.p, b);
}

inline double evaluate_norm(const NormSelector& sel, const Couple& c, const FinSeq& b) {
    if (std::holds_alternative<JSpaceSpec>(sel)) return j_norm(std::get<JSpaceSpec>(sel), c, b);
    if (std::holds_alternative<VariantJSpec>(sel)) {
        const auto& v = std::get<VariantJSpec>(sel);
        return j_norm_variant(c, v.base, v.theta, v.p, b);
    }
    return jphi_norm(std::get<PhiLattice>(sel), c, b);
}

/// Empirical ratio of two norm evaluations on the same nonzero sequence.
inline double equivalence_ratio(const Couple& c, const FinSeq& b, const NormSelector& specA,
                                const NormSelector& specB) {
    if (b.empty()) throw input_error("equivalence_ratio: input must be nonzero");
    double va = evaluate_norm(specA, c, b);
    double vb = evaluate_norm(specB, c, b);
    if (vb == 0.0) throw input_error("equivalence_ratio: denominator norm is zero");
    return va / vb;
}

/// The evaluation point s and the representation weights w_n: sums are
/// sum_n w_n c_n with w_n = s^n for the J(X,B) family and w_n = 1 for the
/// J-functional variants (whose representations are x = sum_n c_n).
inline Complex constraint_weight(const NormSelector& sel, int n) {
    if (std::holds_alternative<JSpaceSpec>(sel))
        return ipow(std::get<JSpaceSpec>(sel).s, n);
    return Complex(1.0, 0.0);
}

}  // namespace interp

#endif  // INTERP_JCALCULUS_HPP
