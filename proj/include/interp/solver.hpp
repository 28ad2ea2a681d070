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

#ifndef INTERP_SOLVER_HPP
#define INTERP_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "interp/common.hpp"

namespace interp::solver {

// Convex minimax objectives are minimized through a smoothing homotopy:
// moduli |z| are replaced by sqrt(|z|^2 + mu^2) and maxima by mu-scaled
// log-sum-exp, which keeps the function convex, C^inf, and within a
// data-independent O(mu) band of the true objective. Each smoothing stage
// is solved by L-BFGS with Armijo backtracking and warm-starts the next.

struct SmoothObjective {
    virtual ~SmoothObjective() = default;
    virtual int dimension() const = 0;
    /// Smoothed value and gradient at width mu > 0. grad has size dimension().
    virtual double value_and_grad(std::span<const double> u, double mu,
                                  std::span<double> grad) const = 0;
    /// The true (nonsmooth) objective; used for reporting and point selection.
    virtual double value_exact(std::span<const double> u) const = 0;
};

struct MinimizeOptions {
    double muInitial = 1e-1;   // times the problem scale
    double muFinal = 1e-7;     // times the problem scale
    double muShrink = 0.1;
    int maxIterPerStage = 300;
    int memory = 8;
    double scale = 1.0;        // rough magnitude of the optimal value
};

struct MinimizeResult {
    std::vector<double> argmin;
    double value = 0.0;        // exact objective at argmin
    int iterations = 0;
    bool stalled = false;      // progress floor reached (vs. iteration cap)
};

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// One L-BFGS stage at fixed mu. Returns iterations used; updates u in place.
inline int lbfgs_stage(const SmoothObjective& obj, std::vector<double>& u, double mu,
                       const MinimizeOptions& opt) {
    const int n = obj.dimension();
    const int mem = opt.memory;
    std::vector<std::vector<double>> S, Y;
    std::vector<double> rho;
    std::vector<double> g(n), gPrev(n), uPrev(n), dir(n), q(n), alpha;

    double f = obj.value_and_grad(u, mu, g);
    double gamma = 1.0;
    int iters = 0;
    const double gradTol = 1e-10 * std::max(opt.scale, std::abs(f)) / std::max(mu, 1e-300);
    // improvement floor for this stage: no point resolving far below the
    // smoothing bias of the current mu
    const double fTol = 1e-4 * mu;

    for (int it = 0; it < opt.maxIterPerStage; ++it) {
        ++iters;
        double gn = norm2(g);
        if (gn <= 1e-14 * std::max(1.0, std::abs(f)) || gn <= 1e-16) break;
        if (gn * std::max(mu, 1e-300) <= 1e-14 * std::max(opt.scale, 1e-300) && gn <= gradTol)
            break;

        // two-loop recursion
        q.assign(g.begin(), g.end());
        alpha.assign(S.size(), 0.0);
        for (size_t i = S.size(); i-- > 0;) {
            alpha[i] = rho[i] * dot(S[i], q);
            for (int k = 0; k < n; ++k) q[k] -= alpha[i] * Y[i][k];
        }
        for (double& x : q) x *= gamma;
        for (size_t i = 0; i < S.size(); ++i) {
            double beta = rho[i] * dot(Y[i], q);
            for (int k = 0; k < n; ++k) q[k] += (alpha[i] - beta) * S[i][k];
        }
        for (int k = 0; k < n; ++k) dir[k] = -q[k];

        double dg = dot(dir, g);
        if (!(dg < 0.0)) {  // not a descent direction: reset to steepest descent
            S.clear();
            Y.clear();
            rho.clear();
            gamma = 1.0;
            for (int k = 0; k < n; ++k) dir[k] = -g[k];
            dg = -gn * gn;
        }

        // Armijo backtracking
        uPrev = u;
        gPrev = g;
        double step = 1.0;
        double fNew = f;
        bool accepted = false;
        for (int ls = 0; ls < 50; ++ls) {
            for (int k = 0; k < n; ++k) u[k] = uPrev[k] + step * dir[k];
            fNew = obj.value_and_grad(u, mu, g);
            if (fNew <= f + 1e-4 * step * dg) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            u = uPrev;
            g = gPrev;
            break;
        }

        // memory update
        std::vector<double> s(n), y(n);
        for (int k = 0; k < n; ++k) {
            s[k] = u[k] - uPrev[k];
            y[k] = g[k] - gPrev[k];
        }
        double sy = dot(s, y);
        if (sy > 1e-12 * norm2(s) * norm2(y)) {
            S.push_back(std::move(s));
            Y.push_back(std::move(y));
            rho.push_back(1.0 / sy);
            gamma = sy / dot(Y.back(), Y.back());
            if (static_cast<int>(S.size()) > mem) {
                S.erase(S.begin());
                Y.erase(Y.begin());
                rho.erase(rho.begin());
            }
        }

        double improve = f - fNew;
        f = fNew;
        if (improve >= 0.0 && improve < fTol) break;
    }
    return iters;
}

}  // namespace detail

/// Minimize the smoothed homotopy from u0; the exact objective is evaluated
/// at the end of every stage and the best point seen is returned.
inline MinimizeResult minimize_smoothed(const SmoothObjective& obj, std::vector<double> u0,
                                        const MinimizeOptions& opt = {}) {
    MinimizeResult res;
    std::vector<double> u = std::move(u0);
    if (u.empty()) u.assign(obj.dimension(), 0.0);

    double bestExact = obj.value_exact(u);
    std::vector<double> bestU = u;
    int iters = 0;
    int lastStageIters = 0;

    const double scale = std::max(opt.scale, 1e-300);
    int recentNoGain = 0;
    for (double mu = opt.muInitial * scale; mu >= opt.muFinal * scale * 0.999;
         mu *= opt.muShrink) {
        lastStageIters = detail::lbfgs_stage(obj, u, mu, opt);
        iters += lastStageIters;
        double fx = obj.value_exact(u);
        if (fx < bestExact - 1e-15 * scale) {
            bestExact = fx;
            bestU = u;
            recentNoGain = 0;
        } else {
            ++recentNoGain;
        }
        // a stage that brought nothing twice in a row at small mu: finished
        if (recentNoGain >= 2 && mu < 1e-4 * scale) break;
    }

    res.argmin = std::move(bestU);
    res.value = bestExact;
    res.iterations = iters;
    res.stalled = recentNoGain >= 1 || lastStageIters < opt.maxIterPerStage;
    return res;
}

}  // namespace interp::solver

#endif  // INTERP_SOLVER_HPP
