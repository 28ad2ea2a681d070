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

#ifndef INTERP_COUPLE_HPP
#define INTERP_COUPLE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "interp/common.hpp"
#include "interp/errors.hpp"
#include "interp/solver.hpp"

namespace interp {

/// One norm on the dim-dimensional complex coordinate space: either a
/// weighted l^p norm (p in [1, inf], strictly positive weights) or a
/// caller-supplied gauge. Custom gauges must come with a Lipschitz bound
/// with respect to the Euclidean norm so sampled suprema can be certified.
struct NormSpec {
    enum class Kind { WeightedLp, CustomGauge };

    Kind kind = Kind::WeightedLp;
    double p = 2.0;
    std::vector<double> weights;  // empty means all ones (resolved at Couple build)
    std::function<double(const CVec&)> gauge;
    double gaugeLipschitz = 0.0;

    static NormSpec lp(double p, std::vector<double> weights = {}) {
        NormSpec s;
        s.kind = Kind::WeightedLp;
        s.p = p;
        s.weights = std::move(weights);
        return s;
    }

    static NormSpec custom(std::function<double(const CVec&)> gauge, double lipschitz) {
        NormSpec s;
        s.kind = Kind::CustomGauge;
        s.gauge = std::move(gauge);
        s.gaugeLipschitz = lipschitz;
        return s;
    }
};

namespace detail {

inline void check_lp_params(const NormSpec& s) {
    if (s.kind != NormSpec::Kind::WeightedLp) return;
    if (!(s.p >= 1.0)) throw input_error("NormSpec: p must be >= 1");
    for (double w : s.weights)
        if (!(w > 0.0)) throw input_error("NormSpec: weights must be strictly positive");
}

/// Weighted l^p of |v_i|, factored by the max term so large p stays finite.
inline double lp_eval(double p, const std::vector<double>& w, const CVec& v) {
    const size_t d = v.size();
    if (p == kInf) {
        double m = 0.0;
        for (size_t i = 0; i < d; ++i) {
            double wi = w.empty() ? 1.0 : w[i];
            m = std::max(m, wi * std::abs(v[i]));
        }
        return m;
    }
    if (d > 64) throw input_error("norm: dimension exceeds internal cap");
    double m = 0.0;
    double r[64];
    for (size_t i = 0; i < d; ++i) {
        double wi = w.empty() ? 1.0 : w[i];
        r[i] = std::pow(wi, 1.0 / p) * std::abs(v[i]);
        m = std::max(m, r[i]);
    }
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (size_t i = 0; i < d; ++i) s += std::pow(r[i] / m, p);
    return m * std::pow(s, 1.0 / p);
}

/// Value-only smoothed norm: |z| -> sqrt(|z|^2 + mu^2); p = inf -> mu-LSE.
inline double smooth_norm_value(const NormSpec& spec, const CVec& v, double mu) {
    const size_t d = v.size();
    if (spec.kind == NormSpec::Kind::CustomGauge) return spec.gauge(v);
    const double p = spec.p;
    if (p == kInf) {
        double peak = -kInf;
        for (size_t i = 0; i < d; ++i) {
            double wi = spec.weights.empty() ? 1.0 : spec.weights[i];
            peak = std::max(peak, wi * std::sqrt(abs2(v[i]) + mu * mu));
        }
        double s = 0.0;
        for (size_t i = 0; i < d; ++i) {
            double wi = spec.weights.empty() ? 1.0 : spec.weights[i];
            s += std::exp((wi * std::sqrt(abs2(v[i]) + mu * mu) - peak) / mu);
        }
        return peak + mu * std::log(s);
    }
    double m = 0.0;
    double r[64];
    if (d > 64) throw input_error("norm: dimension exceeds internal cap");
    for (size_t i = 0; i < d; ++i) {
        double wi = spec.weights.empty() ? 1.0 : spec.weights[i];
        r[i] = std::pow(wi, 1.0 / p) * std::sqrt(abs2(v[i]) + mu * mu);
        m = std::max(m, r[i]);
    }
    if (m == 0.0) return 0.0;
    double acc = 0.0;
    for (size_t i = 0; i < d; ++i) acc += std::pow(r[i] / m, p);
    return m * std::pow(acc, 1.0 / p);
}

/// Smoothed norm value with complex gradient G_i = dF/dRe(v_i) + i dF/dIm(v_i).
/// Smoothing: |z| -> sqrt(|z|^2 + mu^2); p = inf -> mu-log-sum-exp.
inline double smooth_norm_val_grad(const NormSpec& spec, const CVec& v, double mu,
                                   CVec& grad) {
    const size_t d = v.size();
    grad.assign(d, Complex(0.0, 0.0));
    if (spec.kind == NormSpec::Kind::CustomGauge) {
        // central differences; a gauge is differentiable a.e., so this is a
        // usable sub-gradient surrogate
        CVec vp = v;
        double f = spec.gauge(v);
        double s2 = 0.0;
        for (Complex z : v) s2 += abs2(z);
        double h = 1e-6 * (std::sqrt(s2) + mu + 1e-12);
        for (size_t i = 0; i < d; ++i) {
            vp[i] = v[i] + h;
            double fr = spec.gauge(vp);
            vp[i] = v[i] - h;
            double fl = spec.gauge(vp);
            vp[i] = v[i] + Complex(0.0, h);
            double fu = spec.gauge(vp);
            vp[i] = v[i] - Complex(0.0, h);
            double fd = spec.gauge(vp);
            vp[i] = v[i];
            grad[i] = Complex((fr - fl) / (2 * h), (fu - fd) / (2 * h));
        }
        return f;
    }
    const double p = spec.p;
    if (d > 64) throw input_error("norm: dimension exceeds internal cap");
    double s[64], wi[64];
    for (size_t i = 0; i < d; ++i) {
        s[i] = std::sqrt(abs2(v[i]) + mu * mu);
        wi[i] = spec.weights.empty() ? 1.0 : spec.weights[i];
    }
    if (p == kInf) {
        double peak = -kInf;
        for (size_t i = 0; i < d; ++i) peak = std::max(peak, wi[i] * s[i]);
        double sumExp = 0.0;
        double e[64];
        for (size_t i = 0; i < d; ++i) {
            e[i] = std::exp((wi[i] * s[i] - peak) / mu);
            sumExp += e[i];
        }
        for (size_t i = 0; i < d; ++i) grad[i] = (e[i] / sumExp) * wi[i] * v[i] / s[i];
        return peak + mu * std::log(sumExp);
    }
    double m = 0.0;
    double r[64], wr[64];
    for (size_t i = 0; i < d; ++i) {
        wr[i] = std::pow(wi[i], 1.0 / p);
        r[i] = wr[i] * s[i];
        m = std::max(m, r[i]);
    }
    if (m == 0.0) return 0.0;
    double acc = 0.0;
    for (size_t i = 0; i < d; ++i) acc += std::pow(r[i] / m, p);
    double n = m * std::pow(acc, 1.0 / p);
    for (size_t i = 0; i < d; ++i) {
        double ratio = std::pow(r[i] / n, p - 1.0);
        grad[i] = (v[i] / s[i]) * (wr[i] * ratio);
    }
    return n;
}

}  // namespace detail

/// Evaluate one NormSpec.
inline double norm(const NormSpec& space, const CVec& v) {
    if (space.kind == NormSpec::Kind::CustomGauge) {
        if (!space.gauge) throw input_error("NormSpec: custom gauge not set");
        return space.gauge(v);
    }
    detail::check_lp_params(space);
    if (!space.weights.empty() && space.weights.size() != v.size())
        throw input_error("norm: vector length does not match weight count");
    return detail::lp_eval(space.p, space.weights, v);
}

/// Rescale a norm by a positive factor (used for K-functional style oracles).
inline NormSpec scaled(const NormSpec& s, double factor) {
    if (!(factor > 0.0)) throw input_error("scaled: factor must be positive");
    if (s.kind == NormSpec::Kind::CustomGauge) {
        NormSpec r = s;
        auto inner = s.gauge;
        r.gauge = [inner, factor](const CVec& v) { return factor * inner(v); };
        r.gaugeLipschitz = factor * s.gaugeLipschitz;
        return r;
    }
    NormSpec r = s;
    if (r.weights.empty()) throw input_error("scaled: weights must be resolved first");
    if (r.p == kInf) {
        for (double& w : r.weights) w *= factor;
    } else {
        for (double& w : r.weights) w *= std::pow(factor, r.p);
    }
    return r;
}

/// Two norms on one finite-dimensional complex coordinate space. The ambient
/// Hausdorff space is the coordinate space itself, so the embeddings are
/// identities and automatically continuous.
struct Couple {
    int dim = 0;
    NormSpec norm0;
    NormSpec norm1;

    static constexpr int kDefaultMaxDim = 8;

    Couple() = default;
    Couple(int dimension, NormSpec n0, NormSpec n1, int maxDim = kDefaultMaxDim)
        : dim(dimension), norm0(std::move(n0)), norm1(std::move(n1)) {
        if (dim <= 0) throw input_error("Couple: dim must be positive");
        if (dim > maxDim)
            throw input_error("Couple: dim " + std::to_string(dim) + " exceeds cap " +
                              std::to_string(maxDim));
        resolve(norm0);
        resolve(norm1);
    }

   private:
    void resolve(NormSpec& s) const {
        if (s.kind == NormSpec::Kind::WeightedLp) {
            if (s.weights.empty()) s.weights.assign(static_cast<size_t>(dim), 1.0);
            if (s.weights.size() != static_cast<size_t>(dim))
                throw input_error("Couple: weight count does not match dim");
            detail::check_lp_params(s);
        } else if (!s.gauge) {
            throw input_error("Couple: custom gauge not set");
        }
    }
};

inline void check_vector(const Couple& c, const CVec& x) {
    if (x.size() != static_cast<size_t>(c.dim))
        throw input_error("vector length does not match couple dimension");
}

/// J(t, x) = max(||x||_0, t ||x||_1), t > 0.
inline double j_functional(const Couple& c, double t, const CVec& x) {
    if (!(t > 0.0)) throw input_error("j_functional: t must be positive");
    check_vector(c, x);
    return std::max(norm(c.norm0, x), t * norm(c.norm1, x));
}

namespace detail {

class SumNormObjective final : public solver::SmoothObjective {
   public:
    SumNormObjective(const Couple& c, const CVec& x) : c_(c), x_(x) {}

    int dimension() const override { return 2 * c_.dim; }

    double value_and_grad(std::span<const double> u, double mu,
                          std::span<double> grad) const override {
        CVec x0 = unpack(u);
        CVec x1(x0.size());
        for (size_t i = 0; i < x0.size(); ++i) x1[i] = x_[i] - x0[i];
        CVec g0, g1;
        double f = smooth_norm_val_grad(c_.norm0, x0, mu, g0) +
                   smooth_norm_val_grad(c_.norm1, x1, mu, g1);
        for (int i = 0; i < c_.dim; ++i) {
            Complex g = g0[static_cast<size_t>(i)] - g1[static_cast<size_t>(i)];
            grad[static_cast<size_t>(2 * i)] = g.real();
            grad[static_cast<size_t>(2 * i + 1)] = g.imag();
        }
        return f;
    }

    double value_exact(std::span<const double> u) const override {
        CVec x0 = unpack(u);
        CVec x1(x0.size());
        for (size_t i = 0; i < x0.size(); ++i) x1[i] = x_[i] - x0[i];
        return norm(c_.norm0, x0) + norm(c_.norm1, x1);
    }

    CVec unpack(std::span<const double> u) const {
        CVec v(static_cast<size_t>(c_.dim));
        for (int i = 0; i < c_.dim; ++i)
            v[static_cast<size_t>(i)] =
                Complex(u[static_cast<size_t>(2 * i)], u[static_cast<size_t>(2 * i + 1)]);
        return v;
    }

   private:
    const Couple& c_;
    const CVec& x_;
};

}  // namespace detail

/// ||x||_{B0+B1} = inf { ||x0||_0 + ||x1||_1 : x0 + x1 = x }, by convex solve.
/// The infimum is attained in finite dimension; the reported value is the
/// exactly recomputed objective of the best split found.
inline double sum_norm(const Couple& c, const CVec& x) {
    check_vector(c, x);
    if (is_zero(x)) return 0.0;
    double n0 = norm(c.norm0, x), n1 = norm(c.norm1, x);
    double upper = std::min(n0, n1);
    if (upper == 0.0) return 0.0;

    detail::SumNormObjective obj(c, x);
    solver::MinimizeOptions opt;
    opt.scale = upper;
    opt.muFinal = 1e-9;
    opt.maxIterPerStage = 200;

    double best = upper;
    // corner starts x0 = 0 and x0 = x, plus the midpoint
    for (double t : {0.0, 1.0, 0.5}) {
        std::vector<double> u0(static_cast<size_t>(2 * c.dim));
        for (int i = 0; i < c.dim; ++i) {
            u0[static_cast<size_t>(2 * i)] = t * x[static_cast<size_t>(i)].real();
            u0[static_cast<size_t>(2 * i + 1)] = t * x[static_cast<size_t>(i)].imag();
        }
        auto r = solver::minimize_smoothed(obj, std::move(u0), opt);
        best = std::min(best, r.value);
    }
    if (!(best <= upper * (1.0 + 1e-9)))
        throw numerical_error("sum_norm: solver failed to reach the corner bound, residual " +
                              std::to_string(best - upper));
    return best;
}

/// K(t, x) = inf { ||x0||_0 + t ||x1||_1 }: the sum norm of (B0, t*B1).
inline double k_functional(const Couple& c, double t, const CVec& x) {
    if (!(t > 0.0)) throw input_error("k_functional: t must be positive");
    Couple ct(c.dim, c.norm0, scaled(c.norm1, t));
    return sum_norm(ct, x);
}

}  // namespace interp

#endif  // INTERP_COUPLE_HPP
