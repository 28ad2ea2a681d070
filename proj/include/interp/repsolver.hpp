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

#ifndef INTERP_REPSOLVER_HPP
#define INTERP_REPSOLVER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "interp/common.hpp"
#include "interp/couple.hpp"
#include "interp/errors.hpp"
#include "interp/finseq.hpp"
#include "interp/jcalculus.hpp"
#include "interp/pseudolattice.hpp"
#include "interp/solver.hpp"

namespace interp {

struct SolverConfig {
    double relTol = 1e-4;
    int starts = 3;            // delta start, geometric spread, warm/seeded
    std::uint64_t seed = 0;
    double feasTol = 1e-10;
    int maxIterPerStage = 300;
    double muInitial = 5e-2;   // times the problem scale
    double muFinalFactor = 1e-2;  // muFinal = relTol * this (times scale)
    int maxGridEscalations = 6;
    int ucPatternCap = 1 << 12;   // enumeration budget inside solves
};

/// One representation-infimum problem: minimize the selected sequence norm
/// over windowed representations sum_n w_n c_n = x, indices -N..N, where
/// w_n = s^n for J(X,B)-type norms and w_n = 1 for the variant norms.
struct WindowProblem {
    Couple couple;
    NormSelector norm;
    CVec x;
    int window = 0;

    void validate() const {
        if (window < 0) throw input_error("WindowProblem: window must be >= 0");
        if (x.size() != static_cast<size_t>(couple.dim))
            throw input_error("WindowProblem: x does not match couple dimension");
    }
};

struct SolveReport {
    double value = 0.0;    // exactly recomputed objective of argmin
    FinSeq argmin;
    int iterations = 0;
    double relGap = 0.0;   // spread of the restart values relative to the best
    bool converged = false;
    double feasResidual = 0.0;  // upper bound on ||sum w_n c_n - x||_{B0+B1}
};

namespace repdetail {

/// One scalar term: || sum_slot factor * c_slot ||_space.
struct TermPlan {
    const NormSpec* space = nullptr;
    std::vector<std::pair<int, Complex>> factors;
};

/// Aggregation of terms: true max, or (sum tau^p)^{1/p}.
struct ComponentPlan {
    bool isMax = true;
    double p = 1.0;
    std::vector<TermPlan> terms;
};

struct Plan {
    bool outerMax = true;  // false: power sum with outerP
    double outerP = 1.0;
    std::vector<ComponentPlan> components;
};

/// Generic smoothed objective over the free coefficients of a windowed
/// representation. Slot k holds coefficient index n = k - N; slot N is
/// eliminated through the constraint, so the problem is unconstrained.
/// Free variables are preconditioned: c_k = base_k + sigma * u_k / D_k.
/// All scratch buffers are preallocated; evaluations do not allocate.
class PlanObjective final : public solver::SmoothObjective {
   public:
    PlanObjective(Plan plan, int N, int dim, std::vector<Complex> w, std::vector<CVec> baseSeq,
                  int sigma, std::vector<double> D)
        : N_(N), dim_(dim), w_(std::move(w)), base_(std::move(baseSeq)), sigma_(sigma),
          D_(std::move(D)) {
        set_plan(std::move(plan));
        c_.assign(static_cast<size_t>(slots()), CVec(static_cast<size_t>(dim_)));
        gc_.assign(static_cast<size_t>(slots()), CVec(static_cast<size_t>(dim_)));
    }

    int slots() const { return 2 * N_ + 1; }
    int dimension() const override { return 2 * (slots() - 1) * dim_; }

    void set_plan(Plan p) {
        plan_ = std::move(p);
        size_t total = 0;
        for (const auto& comp : plan_.components) total += comp.terms.size();
        termVal_.assign(total, 0.0);
        termW_.assign(total, 0.0);
        termVec_.assign(total, CVec(static_cast<size_t>(dim_)));
        compVal_.assign(plan_.components.size(), 0.0);
        outerW_.assign(plan_.components.size(), 0.0);
    }

    void assemble(std::span<const double> u) const {
        const int S = slots();
        CVec& center = c_[static_cast<size_t>(N_)];
        center = base_[static_cast<size_t>(N_)];
        size_t pos = 0;
        for (int k = 0; k < S; ++k) {
            if (k == N_) continue;
            CVec& ck = c_[static_cast<size_t>(k)];
            ck = base_[static_cast<size_t>(k)];
            Complex ratio = w_[static_cast<size_t>(k)] / w_[static_cast<size_t>(N_)];
            double invD = static_cast<double>(sigma_) / D_[static_cast<size_t>(k)];
            for (int i = 0; i < dim_; ++i) {
                Complex delta = Complex(u[pos], u[pos + 1]) * invD;
                pos += 2;
                ck[static_cast<size_t>(i)] += delta;
                center[static_cast<size_t>(i)] -= ratio * delta;
            }
        }
    }

    FinSeq assemble_seq(std::span<const double> u) const {
        assemble(u);
        return FinSeq(-N_, c_, dim_);
    }

    double value_exact(std::span<const double> u) const override {
        assemble(u);
        return evaluate(0.0, false);
    }

    double value_and_grad(std::span<const double> u, double mu,
                          std::span<double> grad) const override {
        assemble(u);
        double f = evaluate(mu, true);
        size_t pos = 0;
        for (int k = 0; k < slots(); ++k) {
            if (k == N_) continue;
            Complex ratio = w_[static_cast<size_t>(k)] / w_[static_cast<size_t>(N_)];
            double s = static_cast<double>(sigma_) / D_[static_cast<size_t>(k)];
            for (int i = 0; i < dim_; ++i) {
                Complex g = gc_[static_cast<size_t>(k)][static_cast<size_t>(i)] -
                            std::conj(ratio) * gc_[static_cast<size_t>(N_)][static_cast<size_t>(i)];
                grad[pos] = s * g.real();
                grad[pos + 1] = s * g.imag();
                pos += 2;
            }
        }
        return f;
    }

   private:
    void form_term(const TermPlan& term, CVec& v) const {
        for (int i = 0; i < dim_; ++i) v[static_cast<size_t>(i)] = Complex(0.0, 0.0);
        for (const auto& [slot, factor] : term.factors) {
            const CVec& ck = c_[static_cast<size_t>(slot)];
            for (int i = 0; i < dim_; ++i)
                v[static_cast<size_t>(i)] += factor * ck[static_cast<size_t>(i)];
        }
    }

    /// Evaluate at the assembled coefficients. mu = 0: exact value (no grad).
    /// withGrad: fill gc_ with complex cotangents dF/d c_slot.
    double evaluate(double mu, bool withGrad) const {
        const bool smooth = mu > 0.0;
        size_t t0 = 0;
        for (size_t ci = 0; ci < plan_.components.size(); ++ci) {
            const ComponentPlan& comp = plan_.components[ci];
            const size_t nt = comp.terms.size();
            for (size_t ti = 0; ti < nt; ++ti) {
                CVec& v = termVec_[t0 + ti];
                form_term(comp.terms[ti], v);
                termVal_[t0 + ti] = smooth ? detail::smooth_norm_value(*comp.terms[ti].space, v, mu)
                                           : norm(*comp.terms[ti].space, v);
            }
            compVal_[ci] = aggregate(comp, std::span<const double>(termVal_).subspan(t0, nt),
                                     smooth ? mu : 0.0);
            t0 += nt;
        }

        double F;
        if (plan_.outerMax) {
            F = smooth ? lse_value(compVal_, mu) : *std::max_element(compVal_.begin(), compVal_.end());
        } else {
            F = psum(compVal_, plan_.outerP);
        }
        if (!withGrad) return F;

        if (plan_.outerMax) {
            lse_weights(compVal_, mu, outerW_);
        } else {
            for (size_t ci = 0; ci < compVal_.size(); ++ci)
                outerW_[ci] = F > 0.0 ? std::pow(compVal_[ci] / F, plan_.outerP - 1.0) : 0.0;
        }

        for (auto& g : gc_)
            for (Complex& z : g) z = Complex(0.0, 0.0);

        t0 = 0;
        for (size_t ci = 0; ci < plan_.components.size(); ++ci) {
            const ComponentPlan& comp = plan_.components[ci];
            const size_t nt = comp.terms.size();
            if (outerW_[ci] <= 1e-300) {
                t0 += nt;
                continue;
            }
            auto vals = std::span<const double>(termVal_).subspan(t0, nt);
            auto ws = std::span<double>(termW_).subspan(t0, nt);
            if (comp.isMax) {
                lse_weights_span(vals, mu, ws);
            } else {
                double cv = compVal_[ci];
                for (size_t ti = 0; ti < nt; ++ti)
                    ws[ti] = cv > 0.0 ? std::pow(vals[ti] / cv, comp.p - 1.0) : 0.0;
            }
            for (size_t ti = 0; ti < nt; ++ti) {
                double wTot = outerW_[ci] * ws[ti];
                if (wTot <= 1e-300) continue;
                const TermPlan& term = comp.terms[ti];
                detail::smooth_norm_val_grad(*term.space, termVec_[t0 + ti], mu, normGrad_);
                for (const auto& [slot, factor] : term.factors) {
                    Complex cf = std::conj(factor) * wTot;
                    CVec& dst = gc_[static_cast<size_t>(slot)];
                    for (int i = 0; i < dim_; ++i)
                        dst[static_cast<size_t>(i)] += cf * normGrad_[static_cast<size_t>(i)];
                }
            }
            t0 += nt;
        }
        return F;
    }

    static double lse_value(const std::vector<double>& xs, double mu) {
        double peak = -kInf;
        for (double x : xs) peak = std::max(peak, x);
        double s = 0.0;
        for (double x : xs) s += std::exp((x - peak) / mu);
        return peak + mu * std::log(s);
    }

    static void lse_weights(const std::vector<double>& xs, double mu, std::vector<double>& w) {
        lse_weights_span(std::span<const double>(xs), mu, std::span<double>(w));
    }

    static void lse_weights_span(std::span<const double> xs, double mu, std::span<double> w) {
        double peak = -kInf;
        for (double x : xs) peak = std::max(peak, x);
        double s = 0.0;
        for (size_t i = 0; i < xs.size(); ++i) {
            w[i] = std::exp((xs[i] - peak) / mu);
            s += w[i];
        }
        for (size_t i = 0; i < xs.size(); ++i) w[i] /= s;
    }

    static double psum(const std::vector<double>& xs, double p) {
        return psum_span(std::span<const double>(xs), p);
    }

    static double psum_span(std::span<const double> xs, double p) {
        double m = 0.0;
        for (double x : xs) m = std::max(m, x);
        if (m == 0.0) return 0.0;
        double s = 0.0;
        for (double x : xs) s += std::pow(x / m, p);
        return m * std::pow(s, 1.0 / p);
    }

    static double aggregate(const ComponentPlan& comp, std::span<const double> vals, double mu) {
        if (comp.isMax) {
            if (mu > 0.0) {
                double peak = -kInf;
                for (double x : vals) peak = std::max(peak, x);
                double s = 0.0;
                for (double x : vals) s += std::exp((x - peak) / mu);
                return peak + mu * std::log(s);
            }
            double m = 0.0;
            for (double x : vals) m = std::max(m, x);
            return m;
        }
        return psum_span(vals, comp.p);
    }

    Plan plan_;
    int N_;
    int dim_;
    std::vector<Complex> w_;
    std::vector<CVec> base_;
    int sigma_;
    std::vector<double> D_;

    mutable std::vector<CVec> c_, gc_, termVec_;
    mutable std::vector<double> termVal_, termW_, compVal_, outerW_;
    mutable CVec normGrad_;
};

/// Working-grid angles for FC-type terms inside solves; the certified final
/// evaluation goes through the public fc / boundary norms instead.
inline std::vector<double> working_grid(int gridM) {
    int M = std::max(gridM, 64);
    std::vector<double> t(static_cast<size_t>(M));
    constexpr double twoPi = 6.283185307179586476925286766559;
    for (int k = 0; k < M; ++k) t[static_cast<size_t>(k)] = twoPi * k / M;
    return t;
}

/// Sign / phase patterns for UC-type terms inside solves.
inline std::vector<std::vector<Complex>> uc_patterns(const PseudolatticeSpec& x, int slots,
                                                     int cap) {
    std::vector<Complex> lambdas;
    if (x.ucMode == PseudolatticeSpec::UcMode::SignPatterns) {
        lambdas = {Complex(1, 0), Complex(-1, 0)};
    } else {
        constexpr double twoPi = 6.283185307179586476925286766559;
        for (int k = 0; k < x.phaseCount; ++k)
            lambdas.push_back(std::polar(1.0, twoPi * k / x.phaseCount));
    }
    double total = std::pow(static_cast<double>(lambdas.size()), static_cast<double>(slots));
    if (total > static_cast<double>(cap))
        throw capacity_error("UC objective would need " + std::to_string(total) +
                             " patterns in a window of " + std::to_string(slots) +
                             " coefficients; shrink the window or use an l^p / FC spec");
    std::vector<std::vector<Complex>> out;
    std::vector<Complex> cur(static_cast<size_t>(slots), lambdas[0]);
    std::function<void(int)> walk = [&](int level) {
        if (level == slots) {
            out.push_back(cur);
            return;
        }
        for (Complex l : lambdas) {
            cur[static_cast<size_t>(level)] = l;
            walk(level + 1);
        }
    };
    walk(0);
    return out;
}

/// Component for one side j of the J(X,B)-norm: scale_n = base^{jn}.
inline ComponentPlan jspace_component(const PseudolatticeSpec& x, const NormSpec& space,
                                      double base, int j, int N, int gridM, int ucCap) {
    ComponentPlan comp;
    const int S = 2 * N + 1;
    auto scaleAt = [&](int k) {
        return std::pow(base, static_cast<double>(j) * static_cast<double>(k - N));
    };
    switch (x.kind) {
        case PseudolatticeSpec::Kind::Lp:
        case PseudolatticeSpec::Kind::C0: {
            double p = x.kind == PseudolatticeSpec::Kind::C0 ? kInf : x.p;
            comp.isMax = p == kInf;
            comp.p = p;
            for (int k = 0; k < S; ++k) {
                TermPlan t;
                t.space = &space;
                t.factors = {{k, Complex(scaleAt(k), 0.0)}};
                comp.terms.push_back(std::move(t));
            }
            break;
        }
        case PseudolatticeSpec::Kind::FC: {
            comp.isMax = true;
            for (double ang : working_grid(gridM)) {
                TermPlan t;
                t.space = &space;
                t.factors.reserve(static_cast<size_t>(S));
                for (int k = 0; k < S; ++k)
                    t.factors.emplace_back(
                        k, scaleAt(k) * std::polar(1.0, ang * static_cast<double>(k - N)));
                comp.terms.push_back(std::move(t));
            }
            break;
        }
        case PseudolatticeSpec::Kind::UC:
        case PseudolatticeSpec::Kind::WUC: {
            comp.isMax = true;
            for (const auto& pattern : uc_patterns(x, S, ucCap)) {
                TermPlan t;
                t.space = &space;
                t.factors.reserve(static_cast<size_t>(S));
                for (int k = 0; k < S; ++k)
                    t.factors.emplace_back(k, scaleAt(k) * pattern[static_cast<size_t>(k)]);
                comp.terms.push_back(std::move(t));
            }
            break;
        }
    }
    return comp;
}

inline bool selector_uses_grid(const NormSelector& sel) {
    if (!std::holds_alternative<JSpaceSpec>(sel)) return false;
    const auto& spec = std::get<JSpaceSpec>(sel);
    auto fc = [](const PseudolatticeSpec& x) { return x.kind == PseudolatticeSpec::Kind::FC; };
    return fc(spec.x0) || fc(spec.x1);
}

inline Plan build_plan(const NormSelector& sel, const Couple& c, int N, int gridM, int ucCap) {
    Plan plan;
    if (std::holds_alternative<JSpaceSpec>(sel)) {
        const auto& spec = std::get<JSpaceSpec>(sel);
        plan.outerMax = true;
        plan.components.push_back(
            jspace_component(spec.x0, c.norm0, spec.base, 0, N, gridM, ucCap));
        plan.components.push_back(
            jspace_component(spec.x1, c.norm1, spec.base, 1, N, gridM, ucCap));
        return plan;
    }
    double base, theta, p;
    if (std::holds_alternative<VariantJSpec>(sel)) {
        const auto& v = std::get<VariantJSpec>(sel);
        base = v.base;
        theta = v.theta;
        p = v.p;
    } else {
        const auto& phi = std::get<PhiLattice>(sel);
        base = 2.0;
        theta = phi.weightExponent;
        p = phi.p;
    }
    // per-index components max_j base^{(j-theta) n} ||c_n||_j, combined in l^p
    plan.outerMax = p == kInf;
    plan.outerP = p;
    for (int k = 0; k < 2 * N + 1; ++k) {
        int n = k - N;
        ComponentPlan comp;
        comp.isMax = true;
        for (int j = 0; j <= 1; ++j) {
            TermPlan t;
            t.space = j == 0 ? &c.norm0 : &c.norm1;
            t.factors = {{k, Complex(std::pow(base, (j - theta) * n), 0.0)}};
            comp.terms.push_back(std::move(t));
        }
        plan.components.push_back(std::move(comp));
    }
    return plan;
}

/// Per-slot preconditioner: the objective-side sensitivity of coefficient n.
inline std::vector<double> preconditioner(const NormSelector& sel, const Couple& c, int N,
                                          double nu0, double nu1) {
    std::vector<double> D(static_cast<size_t>(2 * N + 1), 1.0);
    double base;
    double thetaShift = 0.0;
    if (std::holds_alternative<JSpaceSpec>(sel)) {
        base = std::get<JSpaceSpec>(sel).base;
    } else if (std::holds_alternative<VariantJSpec>(sel)) {
        base = std::get<VariantJSpec>(sel).base;
        thetaShift = std::get<VariantJSpec>(sel).theta;
    } else {
        base = 2.0;
        thetaShift = std::get<PhiLattice>(sel).weightExponent;
    }
    for (int k = 0; k < 2 * N + 1; ++k) {
        int n = k - N;
        double d0 = std::pow(base, (0.0 - thetaShift) * n) * nu0;
        double d1 = std::pow(base, (1.0 - thetaShift) * n) * nu1;
        D[static_cast<size_t>(k)] = std::max({d0, d1, 1e-12});
    }
    return D;
}

struct GenericProblem {
    const Couple* couple = nullptr;
    int dim = 0;
    int N = 0;
    std::vector<Complex> w;        // constraint weights per slot
    std::vector<CVec> base;        // base sequence per slot
    int sigma = 1;
    std::vector<double> D;
    std::function<Plan(int gridM)> planBuilder;
    bool usesGrid = false;
    std::function<double(const FinSeq&)> certify;
    double scaleHint = 1.0;
    bool geometricStart = true;    // offer the spread start (represent mode)
    CVec x;                        // represent-mode target for the spread start
};

inline SolveReport solve_generic(const GenericProblem& gp, const SolverConfig& cfg,
                                 const FinSeq* warmStart) {
    const int S = 2 * gp.N + 1;
    const int nFree = 2 * (S - 1) * gp.dim;

    int gridM = gp.usesGrid ? std::max(64, 8 * S) : 0;
    PlanObjective obj(gp.planBuilder(gridM), gp.N, gp.dim, gp.w, gp.base, gp.sigma, gp.D);

    SolveReport rep;
    if (nFree == 0) {
        FinSeq b = obj.assemble_seq({});
        rep.value = gp.certify(b);
        rep.argmin = std::move(b);
        rep.converged = true;
        return rep;
    }

    // starts: delta, then geometric spread, then warm / seeded fills,
    // capped at cfg.starts (the warm start is always kept when provided)
    std::vector<std::vector<double>> starts;
    starts.emplace_back(static_cast<size_t>(nFree), 0.0);  // delta start
    if (gp.geometricStart && cfg.starts > 1) {
        // c_n = t_n x with sum w_n t_n = 1 and t_n proportional to 1/D_n
        Complex denom(0.0, 0.0);
        double fallback = 0.0;
        for (int k = 0; k < S; ++k) {
            denom += gp.w[static_cast<size_t>(k)] / gp.D[static_cast<size_t>(k)];
            fallback += 1.0 / gp.D[static_cast<size_t>(k)];
        }
        if (std::abs(denom) > 1e-8 * fallback) {
            std::vector<double> u(static_cast<size_t>(nFree), 0.0);
            size_t pos = 0;
            for (int k = 0; k < S; ++k) {
                if (k == gp.N) continue;
                Complex tn = (1.0 / gp.D[static_cast<size_t>(k)]) / denom;
                for (int i = 0; i < gp.dim; ++i) {
                    // u = D * (c - base); base is zero off-center in represent mode
                    Complex ui = gp.D[static_cast<size_t>(k)] * tn * gp.x[static_cast<size_t>(i)] *
                                 static_cast<double>(gp.sigma);
                    u[pos] = ui.real();
                    u[pos + 1] = ui.imag();
                    pos += 2;
                }
            }
            starts.push_back(std::move(u));
        }
    }
    if (warmStart != nullptr) {
        std::vector<double> u(static_cast<size_t>(nFree), 0.0);
        size_t pos = 0;
        for (int k = 0; k < S; ++k) {
            if (k == gp.N) continue;
            int n = k - gp.N;
            CVec prev = warmStart->at(n);
            CVec baseK = gp.base[static_cast<size_t>(k)];
            for (int i = 0; i < gp.dim; ++i) {
                Complex ui = (prev[static_cast<size_t>(i)] - baseK[static_cast<size_t>(i)]) *
                             gp.D[static_cast<size_t>(k)] * static_cast<double>(gp.sigma);
                u[pos] = ui.real();
                u[pos + 1] = ui.imag();
                pos += 2;
            }
        }
        starts.push_back(std::move(u));
    }
    while (static_cast<int>(starts.size()) < cfg.starts) {
        std::mt19937_64 rng(mix_seed(cfg.seed + 17 * starts.size() + 1));
        std::normal_distribution<double> gauss(0.0, 0.3 * gp.scaleHint);
        std::vector<double> u(static_cast<size_t>(nFree));
        for (double& v : u) v = gauss(rng);
        starts.push_back(std::move(u));
    }

    solver::MinimizeOptions opt;
    opt.scale = std::max(gp.scaleHint, 1e-300);
    opt.muInitial = cfg.muInitial;
    opt.muFinal = cfg.relTol * cfg.muFinalFactor;
    opt.maxIterPerStage = cfg.maxIterPerStage;

    double bestWorking = kInf;
    std::vector<double> bestU;
    double worstStart = -kInf;
    int iterTotal = 0;
    bool allStalled = true;
    for (auto& u0 : starts) {
        auto r = solver::minimize_smoothed(obj, std::move(u0), opt);
        iterTotal += r.iterations;
        allStalled = allStalled && r.stalled;
        if (r.value < bestWorking) {
            bestWorking = r.value;
            bestU = r.argmin;
        }
        worstStart = std::max(worstStart, r.value);
    }
    // restart agreement, measured before any grid escalation
    double relGap = bestWorking > 0.0 ? (worstStart - bestWorking) / bestWorking
                                      : worstStart - bestWorking;

    // Grid escalation for sampled-max objectives: re-solve on finer working
    // grids until the certified value agrees with the working-grid optimum.
    double certified = gp.certify(obj.assemble_seq(bestU));
    for (int esc = 0; gp.usesGrid && esc < cfg.maxGridEscalations; ++esc) {
        double gap = certified - bestWorking;
        if (gap <= 0.4 * cfg.relTol * std::max(certified, 1e-300)) break;
        gridM *= 2;
        obj.set_plan(gp.planBuilder(gridM));
        auto r = solver::minimize_smoothed(obj, bestU, opt);
        iterTotal += r.iterations;
        bestU = r.argmin;
        bestWorking = r.value;
        certified = gp.certify(obj.assemble_seq(bestU));
    }

    FinSeq argmin = obj.assemble_seq(bestU);
    rep.value = certified;
    rep.argmin = argmin;
    rep.iterations = iterTotal;
    rep.relGap = relGap;
    rep.converged = allStalled && rep.relGap <= 2.0 * cfg.relTol;

    // audit the eliminated constraint: residual of sum w_n c_n (drift only)
    CVec target = gp.x;
    CVec sum(static_cast<size_t>(gp.dim), Complex(0.0, 0.0));
    for (int k = 0; k < S; ++k) {
        CVec ck = argmin.at(k - gp.N);
        for (int i = 0; i < gp.dim; ++i)
            sum[static_cast<size_t>(i)] += gp.w[static_cast<size_t>(k)] * ck[static_cast<size_t>(i)];
    }
    if (gp.sigma < 0) {
        // null-distance mode: compare against the base sequence sum
        target.assign(static_cast<size_t>(gp.dim), Complex(0.0, 0.0));
        for (int k = 0; k < S; ++k) {
            CVec bk = gp.base[static_cast<size_t>(k)];
            for (int i = 0; i < gp.dim; ++i)
                target[static_cast<size_t>(i)] +=
                    gp.w[static_cast<size_t>(k)] * bk[static_cast<size_t>(i)];
        }
    }
    CVec resid(static_cast<size_t>(gp.dim));
    for (int i = 0; i < gp.dim; ++i)
        resid[static_cast<size_t>(i)] = sum[static_cast<size_t>(i)] - target[static_cast<size_t>(i)];
    rep.feasResidual = std::min(norm(gp.couple->norm0, resid), norm(gp.couple->norm1, resid));
    return rep;
}

inline GenericProblem make_represent_problem(const WindowProblem& p, const SolverConfig& cfg) {
    p.validate();
    if (std::holds_alternative<JSpaceSpec>(p.norm)) std::get<JSpaceSpec>(p.norm).validate();

    GenericProblem gp;
    gp.couple = &p.couple;
    gp.dim = p.couple.dim;
    gp.N = p.window;
    gp.x = p.x;
    const int S = 2 * p.window + 1;
    gp.w.resize(static_cast<size_t>(S));
    for (int k = 0; k < S; ++k)
        gp.w[static_cast<size_t>(k)] = constraint_weight(p.norm, k - p.window);
    gp.base.assign(static_cast<size_t>(S), CVec(static_cast<size_t>(gp.dim)));
    // delta-start base sequence: everything on the center coefficient
    CVec c0 = p.x;
    Complex w0 = gp.w[static_cast<size_t>(p.window)];
    for (Complex& z : c0) z /= w0;
    gp.base[static_cast<size_t>(p.window)] = c0;
    gp.sigma = 1;

    double nu0 = norm(p.couple.norm0, p.x);
    double nu1 = norm(p.couple.norm1, p.x);
    double nuMax = std::max({nu0, nu1, 1e-300});
    gp.D = preconditioner(p.norm, p.couple, p.window, nu0 / nuMax, nu1 / nuMax);
    gp.usesGrid = selector_uses_grid(p.norm);
    const Couple* couple = &p.couple;
    NormSelector sel = p.norm;
    int ucCap = cfg.ucPatternCap;
    gp.planBuilder = [couple, sel, N = p.window, ucCap](int gridM) {
        return build_plan(sel, *couple, N, gridM, ucCap);
    };
    gp.certify = [couple, sel](const FinSeq& b) { return evaluate_norm(sel, *couple, b); };
    gp.scaleHint = std::max(nu0, nu1);
    gp.geometricStart = true;
    return gp;
}

}  // namespace repdetail

/// Windowed representation infimum with a feasible certificate: the report
/// carries a feasible argmin and its exactly recomputed objective, so the
/// value is always a valid upper bound; relGap cross-validates the restarts.
inline SolveReport windowed_norm(const WindowProblem& p, const SolverConfig& cfg = {},
                                 const FinSeq* warmStart = nullptr) {
    p.validate();
    if (is_zero(p.x)) {
        SolveReport rep;
        rep.argmin = FinSeq(p.couple.dim);
        rep.converged = true;
        return rep;
    }
    auto gp = repdetail::make_represent_problem(p, cfg);
    return repdetail::solve_generic(gp, cfg, warmStart);
}

/// inf over windowed null sequences u (sum w_n u_n = 0) of || b - u ||.
inline SolveReport null_distance(const WindowProblem& p, const FinSeq& b,
                                 const SolverConfig& cfg = {}) {
    p.validate();
    if (!b.empty() && (b.lo() < -p.window || b.hi() > p.window))
        throw input_error("null_distance: b exceeds the window");
    auto gp = repdetail::make_represent_problem(p, cfg);
    // base sequence is b itself; variables subtract a null sequence
    const int S = 2 * p.window + 1;
    for (int k = 0; k < S; ++k) gp.base[static_cast<size_t>(k)] = b.at(k - p.window);
    gp.sigma = -1;
    gp.geometricStart = false;
    // scales come from b, not from the (irrelevant) represent-mode target
    double nu0 = 0.0, nu1 = 0.0;
    for (const CVec& e : b.entries()) {
        nu0 = std::max(nu0, norm(p.couple.norm0, e));
        nu1 = std::max(nu1, norm(p.couple.norm1, e));
    }
    double nuMax = std::max({nu0, nu1, 1e-300});
    gp.D = repdetail::preconditioner(p.norm, p.couple, p.window, nu0 / nuMax, nu1 / nuMax);
    gp.scaleHint = nuMax;
    return repdetail::solve_generic(gp, cfg, nullptr);
}

/// Convergence sweep over nested windows N = 0..Nmax. Warm starts embed the
/// previous argmin, and a report is never allowed to exceed its predecessor:
/// if a wider window solves worse, the previous argmin is carried forward.
inline std::vector<std::pair<int, SolveReport>> stafney_sweep(const WindowProblem& tmpl,
                                                              int nmax,
                                                              const SolverConfig& cfg = {}) {
    if (nmax < 0) throw input_error("stafney_sweep: nmax must be >= 0");
    std::vector<std::pair<int, SolveReport>> out;
    out.reserve(static_cast<size_t>(nmax) + 1);
    const FinSeq* warm = nullptr;
    for (int N = 0; N <= nmax; ++N) {
        WindowProblem p = tmpl;
        p.window = N;
        SolveReport rep = windowed_norm(p, cfg, warm);
        if (!out.empty() && rep.value > out.back().second.value) {
            rep = out.back().second;  // previous argmin stays feasible in the wider window
        }
        out.emplace_back(N, std::move(rep));
        warm = &out.back().second.argmin;
    }
    return out;
}

}  // namespace interp

#endif  // INTERP_REPSOLVER_HPP
