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

#ifndef INTERP_ANNULUS_HPP
#define INTERP_ANNULUS_HPP

#include <cmath>
#include <utility>
#include <vector>

#include "interp/common.hpp"
#include "interp/couple.hpp"
#include "interp/errors.hpp"
#include "interp/finseq.hpp"
#include "interp/laurent.hpp"
#include "interp/repsolver.hpp"

namespace interp {

/// Boundary-sup minimization over Laurent-polynomial representatives:
/// minimize ||f||_{F_A} over f with coefficients in the window and
/// f(s) = x, s = base^theta. The constraint is eliminated through the
/// coefficient at n = 0, exactly like the other representation solves.
inline SolveReport annulus_norm(const Couple& c, const CVec& x, const AnnulusSpec& spec,
                                int window, const SolverConfig& cfg = {},
                                const FinSeq* warmStart = nullptr) {
    spec.validate();
    check_vector(c, x);
    if (window < 0) throw input_error("annulus_norm: window must be >= 0");
    if (is_zero(x)) {
        SolveReport rep;
        rep.argmin = FinSeq(c.dim);
        rep.converged = true;
        return rep;
    }

    const int S = 2 * window + 1;
    const Complex s = spec.s();

    repdetail::GenericProblem gp;
    gp.couple = &c;
    gp.dim = c.dim;
    gp.N = window;
    gp.x = x;
    gp.w.resize(static_cast<size_t>(S));
    for (int k = 0; k < S; ++k) gp.w[static_cast<size_t>(k)] = ipow(s, k - window);
    gp.base.assign(static_cast<size_t>(S), CVec(static_cast<size_t>(c.dim)));
    CVec c0 = x;
    for (Complex& z : c0) z /= gp.w[static_cast<size_t>(window)];
    gp.base[static_cast<size_t>(window)] = c0;
    gp.sigma = 1;

    double nu0 = norm(c.norm0, x), nu1 = norm(c.norm1, x);
    double nuMax = std::max({nu0, nu1, 1e-300});
    gp.D.assign(static_cast<size_t>(S), 1.0);
    for (int k = 0; k < S; ++k) {
        int n = k - window;
        gp.D[static_cast<size_t>(k)] = std::max(
            {nu0 / nuMax, std::pow(spec.base, static_cast<double>(n)) * nu1 / nuMax, 1e-12});
    }
    gp.usesGrid = true;
    gp.scaleHint = std::max(nu0, nu1);
    gp.geometricStart = true;

    const Couple* couple = &c;
    const double base = spec.base;
    const int dim = c.dim;
    // boundary plan: terms || f(z_{j,t}) ||_{B_j} with z-powers formed directly;
    // the grid is offset by a half step so the two routes in fc_equals_annulus
    // never share sample points
    gp.planBuilder = [couple, base, window, dim, S](int gridM) {
        repdetail::Plan plan;
        plan.outerMax = true;
        constexpr double twoPi = 6.283185307179586476925286766559;
        int M = std::max(gridM, 64);
        for (int j = 0; j <= 1; ++j) {
            repdetail::ComponentPlan comp;
            comp.isMax = true;
            double radius = j == 0 ? 1.0 : base;
            for (int g = 0; g < M; ++g) {
                double ang = twoPi * (g + 0.5) / M;
                Complex z = std::polar(radius, ang);
                repdetail::TermPlan t;
                t.space = j == 0 ? &couple->norm0 : &couple->norm1;
                t.factors.reserve(static_cast<size_t>(S));
                for (int k = 0; k < S; ++k) t.factors.emplace_back(k, ipow(z, k - window));
                comp.terms.push_back(std::move(t));
            }
            plan.components.push_back(std::move(comp));
        }
        (void)dim;
        return plan;
    };
    double certTol = std::max(1e-12, 0.05 * cfg.relTol * gp.scaleHint);
    AnnulusSpec aspec = spec;
    gp.certify = [couple, aspec, certTol](const FinSeq& b) {
        return boundary_norm(*couple, LaurentPoly(b), aspec, certTol);
    };
    return repdetail::solve_generic(gp, cfg, warmStart);
}

struct FcAnnulusComparison {
    SolveReport fc;
    SolveReport annulus;
    double fcValue = 0.0;
    double annulusValue = 0.0;
    double absDiff = 0.0;
};

/// Solve the same interpolation norm twice: through the FC-pseudolattice
/// windowed representation and through the boundary-sup minimization. The
/// two routes share no sample points or certified evaluators, so their
/// agreement is a genuine cross-check.
inline FcAnnulusComparison fc_equals_annulus(const Couple& c, const CVec& x,
                                             const AnnulusSpec& spec, int window,
                                             const SolverConfig& cfg = {}) {
    spec.validate();
    double scale = std::max({norm(c.norm0, x), norm(c.norm1, x), 1e-300});
    double fcTol = std::max(1e-12, 0.05 * cfg.relTol * scale);

    WindowProblem p;
    p.couple = c;
    JSpaceSpec jspec = JSpaceSpec::make(PseudolatticeSpec::fc(fcTol),
                                        PseudolatticeSpec::fc(fcTol), spec.base, spec.theta);
    p.norm = jspec;
    p.x = x;
    p.window = window;

    FcAnnulusComparison out;
    out.fc = windowed_norm(p, cfg);
    out.annulus = annulus_norm(c, x, spec, window, cfg);
    out.fcValue = out.fc.value;
    out.annulusValue = out.annulus.value;
    out.absDiff = std::abs(out.fcValue - out.annulusValue);
    return out;
}

}  // namespace interp

#endif  // INTERP_ANNULUS_HPP
