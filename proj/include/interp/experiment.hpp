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

#ifndef INTERP_EXPERIMENT_HPP
#define INTERP_EXPERIMENT_HPP

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "interp/annulus.hpp"
#include "interp/common.hpp"
#include "interp/couple.hpp"
#include "interp/errors.hpp"
#include "interp/finseq.hpp"
#include "interp/jcalculus.hpp"
#include "interp/laurent.hpp"
#include "interp/repsolver.hpp"
#include "interp/seqops.hpp"

namespace interp::experiment {

inline constexpr const char* kToolVersion = "interp-lab 0.1.0";

using json = nlohmann::json;

enum class Mode { Norm, Stafney, AnnulusVerify, OperatorsCheck };

inline const char* mode_name(Mode m) {
    switch (m) {
        case Mode::Norm: return "norm";
        case Mode::Stafney: return "stafney";
        case Mode::AnnulusVerify: return "annulus-verify";
        case Mode::OperatorsCheck: return "operators-check";
    }
    return "?";
}

struct SolverSettings {
    double relTol = 1e-4;
    int maxIterPerStage = 300;
    int starts = 3;
    std::uint64_t seed = 0;

    SolverConfig to_config() const {
        SolverConfig cfg;
        cfg.relTol = relTol;
        cfg.maxIterPerStage = maxIterPerStage;
        cfg.starts = starts;
        cfg.seed = seed;
        return cfg;
    }
};

struct ExperimentConfig {
    Couple couple;
    NormSelector norm = VariantJSpec{};
    CVec x;
    std::vector<double> thetas;
    std::vector<double> ps;
    int nmax = 10;
    SolverSettings solver;
    std::string outPath;
    std::string recordPath;
    int trials = 1000;  // operators-check
    json raw;
};

// ---------------------------------------------------------------- parsing

namespace cfgdetail {

class Errors {
   public:
    void add(const std::string& key, const std::string& what) {
        msg_ += (msg_.empty() ? "" : "; ") + key + ": " + what;
    }
    bool any() const { return !msg_.empty(); }
    [[noreturn]] void raise() const { throw config_error("config error: " + msg_); }
    void raise_if_any() const {
        if (any()) raise();
    }

   private:
    std::string msg_;
};

inline double parse_p(const json& j) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "inf" || s == "Inf" || s == "Infinity") return kInf;
        throw config_error("config error: p: unrecognized string \"" + s + "\"");
    }
    return j.get<double>();
}

inline NormSpec parse_norm_spec(const json& j, Errors& errs, const std::string& key) {
    NormSpec s;
    if (!j.is_object() || !j.contains("kind")) {
        errs.add(key, "expected an object with \"kind\"");
        return s;
    }
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "lp") {
        s.kind = NormSpec::Kind::WeightedLp;
        s.p = j.contains("p") ? parse_p(j.at("p")) : 2.0;
        if (j.contains("weights")) s.weights = j.at("weights").get<std::vector<double>>();
        if (!(s.p >= 1.0)) errs.add(key + ".p", "must be >= 1");
        for (double w : s.weights)
            if (!(w > 0.0)) errs.add(key + ".weights", "must be strictly positive");
    } else {
        errs.add(key + ".kind", "unsupported norm kind \"" + kind + "\" (config supports lp)");
    }
    return s;
}

inline PseudolatticeSpec parse_pl_spec(const json& j, Errors& errs, const std::string& key) {
    PseudolatticeSpec s;
    if (!j.is_object() || !j.contains("kind")) {
        errs.add(key, "expected an object with \"kind\"");
        return s;
    }
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "lp") {
        s = PseudolatticeSpec::lp(j.contains("p") ? parse_p(j.at("p")) : 2.0);
    } else if (kind == "c0") {
        s = PseudolatticeSpec::c0();
    } else if (kind == "fc") {
        s = PseudolatticeSpec::fc();
    } else if (kind == "uc" || kind == "wuc") {
        auto mode = PseudolatticeSpec::UcMode::PhaseGrid;
        if (j.contains("mode")) {
            std::string m = j.at("mode").get<std::string>();
            if (m == "signs")
                mode = PseudolatticeSpec::UcMode::SignPatterns;
            else if (m != "phases")
                errs.add(key + ".mode", "expected \"signs\" or \"phases\"");
        }
        int q = j.contains("q") ? j.at("q").get<int>() : 12;
        s = kind == "uc" ? PseudolatticeSpec::uc(mode, q) : PseudolatticeSpec::wuc(mode, q);
    } else {
        errs.add(key + ".kind", "unknown pseudolattice kind \"" + kind + "\"");
    }
    if (j.contains("tol")) s.tol = j.at("tol").get<double>();
    if (!(s.tol > 0.0)) errs.add(key + ".tol", "must be positive");
    return s;
}

inline CVec parse_vector(const json& j, Errors& errs, const std::string& key) {
    CVec v;
    if (!j.is_array()) {
        errs.add(key, "expected an array");
        return v;
    }
    for (const auto& e : j) {
        if (e.is_number())
            v.push_back(Complex(e.get<double>(), 0.0));
        else if (e.is_array() && e.size() == 2)
            v.push_back(Complex(e.at(0).get<double>(), e.at(1).get<double>()));
        else
            errs.add(key, "entries must be numbers or [re, im] pairs");
    }
    return v;
}

}  // namespace cfgdetail

inline ExperimentConfig parse_config(const json& j) {
    cfgdetail::Errors errs;
    ExperimentConfig cfg;
    cfg.raw = j;

    if (!j.contains("couple")) {
        errs.add("couple", "missing");
        errs.raise();
    }
    const json& cj = j.at("couple");
    int dim = 0;
    if (!cj.contains("dim"))
        errs.add("couple.dim", "missing");
    else
        dim = cj.at("dim").get<int>();
    NormSpec n0 = cfgdetail::parse_norm_spec(cj.value("norm0", json::object()), errs, "couple.norm0");
    NormSpec n1 = cfgdetail::parse_norm_spec(cj.value("norm1", json::object()), errs, "couple.norm1");
    errs.raise_if_any();
    try {
        cfg.couple = Couple(dim, n0, n1);
    } catch (const input_error& e) {
        errs.add("couple", e.what());
        errs.raise();
    }

    const json nj = j.value("norm", json{{"norm", "J-e"}});
    std::string variant = nj.value("norm", "J-e");
    double theta = nj.value("theta", 0.5);
    if (variant == "j") {
        PseudolatticeSpec x0 = cfgdetail::parse_pl_spec(nj.value("x0", json::object()), errs, "norm.x0");
        PseudolatticeSpec x1 = cfgdetail::parse_pl_spec(nj.value("x1", json::object()), errs, "norm.x1");
        double base = nj.value("base", std::numbers::e);
        if (!(base > 1.0)) errs.add("norm.base", "must exceed 1");
        if (!errs.any()) {
            JSpaceSpec spec = JSpaceSpec::make(x0, x1, base, theta);
            if (nj.contains("s")) {
                CVec sv = cfgdetail::parse_vector(
                    nj.at("s").is_array() ? nj.at("s") : json::array({nj.at("s")}), errs, "norm.s");
                if (sv.size() == 1) spec.s = sv[0];
            }
            cfg.norm = spec;
        }
    } else if (variant == "J-e") {
        cfg.norm = VariantJSpec{std::numbers::e, theta, nj.value("p", 1.0)};
    } else if (variant == "J-2") {
        cfg.norm = VariantJSpec{2.0, theta, nj.value("p", 1.0)};
    } else if (variant == "Jphi") {
        cfg.norm = PhiLattice{nj.value("p", 1.0), nj.value("weightExponent", theta)};
    } else {
        errs.add("norm.norm", "expected one of \"j\", \"J-e\", \"J-2\", \"Jphi\"");
    }

    if (j.contains("x")) cfg.x = cfgdetail::parse_vector(j.at("x"), errs, "x");
    if (cfg.x.empty()) {
        cfg.x.assign(static_cast<size_t>(dim > 0 ? dim : 1), Complex(0.0, 0.0));
        if (dim > 0) cfg.x[0] = Complex(1.0, 0.0);
    }
    if (dim > 0 && cfg.x.size() != static_cast<size_t>(dim))
        errs.add("x", "length must equal couple.dim");

    if (j.contains("thetas"))
        cfg.thetas = j.at("thetas").get<std::vector<double>>();
    else
        cfg.thetas = {theta};
    for (double t : cfg.thetas)
        if (!(t > 0.0 && t < 1.0)) errs.add("thetas", "theta values must lie in (0,1)");
    if (j.contains("ps")) {
        cfg.ps.clear();
        for (const auto& e : j.at("ps")) cfg.ps.push_back(cfgdetail::parse_p(e));
        for (double p : cfg.ps)
            if (!(p >= 1.0)) errs.add("ps", "p values must be >= 1");
    }

    cfg.nmax = j.value("nmax", 10);
    if (cfg.nmax < 0) errs.add("nmax", "must be >= 0");
    cfg.trials = j.value("trials", 1000);
    if (cfg.trials < 1) errs.add("trials", "must be >= 1");
    if (j.contains("solver")) {
        const json& sj = j.at("solver");
        cfg.solver.relTol = sj.value("relTol", 1e-4);
        cfg.solver.maxIterPerStage = sj.value("maxIter", 300);
        cfg.solver.starts = sj.value("starts", 3);
        cfg.solver.seed = sj.value("seed", static_cast<std::uint64_t>(0));
        if (!(cfg.solver.relTol > 0.0)) errs.add("solver.relTol", "must be positive");
        if (cfg.solver.starts < 1) errs.add("solver.starts", "must be >= 1");
    }
    cfg.outPath = j.value("out", "");
    cfg.recordPath = j.value("record", "");
    errs.raise_if_any();
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config error: cannot open \"" + path + "\"");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config error: malformed JSON: ") + e.what());
    }
    return parse_config(j);
}

// ---------------------------------------------------------------- records

struct CellResult {
    double theta = 0.0;
    double p = 0.0;
    int n = 0;
    SolveReport report;
    double fcValue = 0.0;       // annulus-verify only
    double annulusValue = 0.0;  // annulus-verify only
    bool failed = false;
    std::string error;
    double wallMs = 0.0;
};

struct RunRecord {
    std::string configHash;
    std::string toolVersion = kToolVersion;
    Mode mode = Mode::Stafney;
    std::vector<CellResult> cells;
    json opsSummary;
    bool anyFailure = false;
};

inline std::string config_hash(const json& j) {
    // FNV-1a over the canonical dump (nlohmann objects are key-sorted)
    std::string dump = j.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

// ----------------------------------------------------- operators-check

/// Randomized audits of the coefficient-level operators. Deterministic in
/// the seed; returns a summary with violation counts and worst residuals.
inline json run_operators_check(int trials, std::uint64_t seed) {
    std::mt19937_64 rng(mix_seed(seed + 0x09f5));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<int> dims(1, 3);
    std::uniform_int_distribution<int> offs(-3, 2);
    std::uniform_int_distribution<int> lens(1, 4);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    auto randVec = [&](int d) {
        CVec v(static_cast<size_t>(d));
        for (Complex& z : v) z = Complex(gauss(rng), gauss(rng));
        return v;
    };
    auto randSeq = [&](int d) {
        int lo = offs(rng), len = lens(rng);
        std::vector<CVec> es;
        es.reserve(static_cast<size_t>(len));
        for (int i = 0; i < len; ++i) es.push_back(randVec(d));
        return FinSeq(lo, std::move(es), d);
    };
    auto randCouple = [&](int d) {
        auto randNorm = [&] {
            double ps[] = {1.0, 2.0, kInf};
            std::vector<double> w(static_cast<size_t>(d));
            for (double& x : w) x = std::exp(unif(rng) * 1.4 - 0.7);
            return NormSpec::lp(ps[static_cast<size_t>(rng() % 3)], w);
        };
        return Couple(d, randNorm(), randNorm());
    };

    double worstShift = 0.0, worstNullEval = 0.0, worstRoundTrip = 0.0;
    int rkViolations = 0, diffViolations = 0;

    for (int t = 0; t < trials; ++t) {
        int d = dims(rng);
        Couple c = randCouple(d);
        FinSeq b = randSeq(d);
        double mass = std::max(b.euclidean_mass(), 1e-300);

        // shift isometry on the plain pseudolattice norms; the FC pair is
        // compared on one shared grid so the identity is exact
        PseudolatticeSpec kinds[] = {PseudolatticeSpec::lp(1), PseudolatticeSpec::lp(2),
                                     PseudolatticeSpec::c0()};
        for (const auto& k : kinds) {
            double a = pl_norm(k, b, c.norm0);
            double s = pl_norm(k, shift(b), c.norm0);
            if (a > 0.0) worstShift = std::max(worstShift, std::abs(a - s) / a);
        }
        {
            int M = 16 * (b.degree() + 2);
            double a = detail::fc_norm_uniform(b, c.norm0, M);
            double s = detail::fc_norm_uniform(shift(b), c.norm0, M);
            if (a > 0.0) worstShift = std::max(worstShift, std::abs(a - s) / a);
        }
        {
            PseudolatticeSpec signs =
                PseudolatticeSpec::uc(PseudolatticeSpec::UcMode::SignPatterns);
            double a = uc_norm(signs, b, c.norm0);
            double s = uc_norm(signs, shift(b), c.norm0);
            if (a > 0.0) worstShift = std::max(worstShift, std::abs(a - s) / a);
        }

        // null corrector telescopes to zero at s
        Complex s = std::polar(1.0 + 1.4 * unif(rng), unif(rng) * 6.28);
        FinSeq corr = null_corrector(b, s);
        CVec at = eval(corr, s);
        double resid = 0.0;
        for (Complex z : at) resid += abs2(z);
        worstNullEval = std::max(worstNullEval, std::sqrt(resid) / mass);

        // divide-then-multiply round trip through the corrector identity
        FinSeq prod = null_corrector(b, s);  // (z - s) * b at coefficient level
        LaurentPoly g = divide_at_zero(LaurentPoly(prod), s);
        FinSeq diff = g.coeffs - b;
        worstRoundTrip = std::max(worstRoundTrip, diff.euclidean_mass() / mass);

        // corrector norm bound, base e with s inside the annulus
        JSpaceSpec spec = JSpaceSpec::make(PseudolatticeSpec::lp(1 + 2 * unif(rng)),
                                           PseudolatticeSpec::lp(1 + 2 * unif(rng)));
        spec.s = Complex(std::pow(spec.base, 0.3 + 0.4 * unif(rng)), 0.0);
        try {
            rk_bound_check(c, spec, b);
        } catch (const numerical_error&) {
            ++rkViolations;
        }

        // differentiation operators stay bounded by the geometric majorant
        Complex rho = std::polar(0.15 + 0.7 * unif(rng), unif(rng) * 6.28);
        double r = std::abs(rho);
        for (int jj = 0; jj <= 1; ++jj) {
            DiffResult dr = diff_op(jj, rho, b);
            PseudolatticeSpec lp1 = PseudolatticeSpec::lp(1);
            double lhs = pl_norm(lp1, dr.seq, c.norm0);
            double K = (jj == 0 ? r : 1.0) / (1.0 - r);
            double rhs = K * pl_norm(lp1, b, c.norm0);
            if (lhs > rhs * (1.0 + 1e-9) + 1e-12) ++diffViolations;
        }
    }

    return json{{"trials", trials},
                {"shiftIsometryWorstRel", worstShift},
                {"nullCorrectorWorstRel", worstNullEval},
                {"divideRoundTripWorstRel", worstRoundTrip},
                {"rkBoundViolations", rkViolations},
                {"diffOpBoundViolations", diffViolations},
                {"violations", rkViolations + diffViolations +
                                   (worstShift > 1e-12 ? 1 : 0) +
                                   (worstNullEval > 1e-12 ? 1 : 0) +
                                   (worstRoundTrip > 1e-10 ? 1 : 0)}};
}

// ---------------------------------------------------------------- running

namespace rundetail {

inline NormSelector with_cell(const NormSelector& base, double theta, std::optional<double> p) {
    NormSelector sel = base;
    if (std::holds_alternative<JSpaceSpec>(sel)) {
        auto& spec = std::get<JSpaceSpec>(sel);
        spec.theta = theta;
        spec.s = Complex(std::pow(spec.base, theta), 0.0);
        if (p) {
            if (spec.x0.kind == PseudolatticeSpec::Kind::Lp) spec.x0.p = *p;
            if (spec.x1.kind == PseudolatticeSpec::Kind::Lp) spec.x1.p = *p;
        }
    } else if (std::holds_alternative<VariantJSpec>(sel)) {
        auto& spec = std::get<VariantJSpec>(sel);
        spec.theta = theta;
        if (p) spec.p = *p;
    } else {
        auto& spec = std::get<PhiLattice>(sel);
        spec.weightExponent = theta;
        if (p) spec.p = *p;
    }
    return sel;
}

inline int jobs_from(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("INTERP_LAB_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

template <typename Fn>
void parallel_cells(int jobs, int count, Fn&& fn) {
    if (jobs <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int n = std::min(jobs, count);
    pool.reserve(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace rundetail

/// Execute the sweep described by the config. Cells are (theta, p) pairs;
/// each cell is deterministic on its own, so results do not depend on the
/// worker count. Per-cell failures are recorded and the run continues.
inline RunRecord run(const ExperimentConfig& cfg, Mode mode, int jobs = 1) {
    RunRecord rec;
    rec.configHash = config_hash(cfg.raw);
    rec.mode = mode;

    if (mode == Mode::OperatorsCheck) {
        rec.opsSummary = run_operators_check(cfg.trials, cfg.solver.seed);
        rec.anyFailure = rec.opsSummary.value("violations", 0) > 0;
        return rec;
    }

    std::vector<std::pair<double, std::optional<double>>> cells;
    for (double th : cfg.thetas) {
        if (cfg.ps.empty())
            cells.emplace_back(th, std::nullopt);
        else
            for (double p : cfg.ps) cells.emplace_back(th, p);
    }
    std::vector<std::vector<CellResult>> perCell(cells.size());

    rundetail::parallel_cells(
        rundetail::jobs_from(jobs), static_cast<int>(cells.size()), [&](int ci) {
            auto [theta, p] = cells[static_cast<size_t>(ci)];
            NormSelector sel = rundetail::with_cell(cfg.norm, theta, p);
            std::vector<CellResult>& out = perCell[static_cast<size_t>(ci)];
            auto t0 = std::chrono::steady_clock::now();
            auto elapsed = [&] {
                return std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                    .count();
            };
            try {
                if (mode == Mode::Norm) {
                    WindowProblem prob{cfg.couple, sel, cfg.x, cfg.nmax};
                    CellResult r;
                    r.theta = theta;
                    r.p = p.value_or(0.0);
                    r.n = cfg.nmax;
                    r.report = windowed_norm(prob, cfg.solver.to_config());
                    r.wallMs = elapsed();
                    out.push_back(std::move(r));
                } else if (mode == Mode::Stafney) {
                    WindowProblem tmpl{cfg.couple, sel, cfg.x, 0};
                    auto sweep = stafney_sweep(tmpl, cfg.nmax, cfg.solver.to_config());
                    for (auto& [N, rep] : sweep) {
                        CellResult r;
                        r.theta = theta;
                        r.p = p.value_or(0.0);
                        r.n = N;
                        r.report = std::move(rep);
                        r.wallMs = elapsed();
                        out.push_back(std::move(r));
                    }
                } else {  // AnnulusVerify
                    double base = std::holds_alternative<JSpaceSpec>(sel)
                                      ? std::get<JSpaceSpec>(sel).base
                                      : std::numbers::e;
                    AnnulusSpec aspec{base, theta};
                    for (int N = 0; N <= cfg.nmax; ++N) {
                        auto cmp =
                            fc_equals_annulus(cfg.couple, cfg.x, aspec, N, cfg.solver.to_config());
                        CellResult r;
                        r.theta = theta;
                        r.p = p.value_or(0.0);
                        r.n = N;
                        r.fcValue = cmp.fcValue;
                        r.annulusValue = cmp.annulusValue;
                        r.report = std::move(cmp.fc);
                        r.wallMs = elapsed();
                        out.push_back(std::move(r));
                    }
                }
            } catch (const std::exception& e) {
                CellResult r;
                r.theta = theta;
                r.p = p.value_or(0.0);
                r.failed = true;
                r.error = e.what();
                r.wallMs = elapsed();
                out.push_back(std::move(r));
            }
        });

    for (auto& cellRes : perCell)
        for (auto& r : cellRes) {
            rec.anyFailure = rec.anyFailure || r.failed;
            rec.cells.push_back(std::move(r));
        }
    return rec;
}

// ---------------------------------------------------------------- emitting

/// CSV for a sweep. Single-cell stafney/norm runs use exactly the columns
/// N,value,relGap,iterations,converged; annulus-verify uses
/// N,fcValue,annulusValue,absDiff. Multi-cell runs prepend theta,p to give
/// the plot-ready long format (one row per (theta, p, N)).
inline std::string to_csv(const RunRecord& rec, bool multiCell) {
    std::ostringstream out;
    std::string prefix = multiCell ? "theta,p," : "";
    if (rec.mode == Mode::AnnulusVerify) {
        out << prefix << "N,fcValue,annulusValue,absDiff\n";
        for (const CellResult& r : rec.cells) {
            if (r.failed) continue;
            if (multiCell) out << fmt_double(r.theta) << "," << fmt_double(r.p) << ",";
            out << r.n << "," << fmt_double(r.fcValue) << "," << fmt_double(r.annulusValue) << ","
                << fmt_double(std::abs(r.fcValue - r.annulusValue)) << "\n";
        }
    } else {
        out << prefix << "N,value,relGap,iterations,converged\n";
        for (const CellResult& r : rec.cells) {
            if (r.failed) continue;
            if (multiCell) out << fmt_double(r.theta) << "," << fmt_double(r.p) << ",";
            out << r.n << "," << fmt_double(r.report.value) << "," << fmt_double(r.report.relGap)
                << "," << r.report.iterations << "," << (r.report.converged ? 1 : 0) << "\n";
        }
    }
    return out.str();
}

inline json to_record_json(const RunRecord& rec) {
    json cells = json::array();
    for (const CellResult& r : rec.cells) {
        json c{{"theta", r.theta}, {"p", r.p},         {"N", r.n},
               {"failed", r.failed}, {"wallMs", r.wallMs}};
        if (r.failed) {
            c["error"] = r.error;
        } else if (rec.mode == Mode::AnnulusVerify) {
            c["fcValue"] = r.fcValue;
            c["annulusValue"] = r.annulusValue;
            c["absDiff"] = std::abs(r.fcValue - r.annulusValue);
        } else {
            c["value"] = r.report.value;
            c["relGap"] = r.report.relGap;
            c["iterations"] = r.report.iterations;
            c["converged"] = r.report.converged;
            c["feasResidual"] = r.report.feasResidual;
        }
        cells.push_back(std::move(c));
    }
    json j{{"configHash", rec.configHash},
           {"toolVersion", rec.toolVersion},
           {"mode", mode_name(rec.mode)},
           {"cells", std::move(cells)}};
    if (!rec.opsSummary.is_null()) j["operators"] = rec.opsSummary;
    return j;
}

/// Write the CSV (and JSON record when configured). Returns written paths.
inline std::vector<std::string> emit_report(const RunRecord& rec, const ExperimentConfig& cfg) {
    std::vector<std::string> written;
    bool multiCell = cfg.thetas.size() * std::max<size_t>(cfg.ps.size(), 1) > 1;
    if (!cfg.outPath.empty()) {
        std::ofstream out(cfg.outPath, std::ios::binary);
        if (!out) throw numerical_error("emit_report: cannot write \"" + cfg.outPath + "\"");
        if (rec.mode == Mode::OperatorsCheck)
            out << rec.opsSummary.dump(2) << "\n";
        else
            out << to_csv(rec, multiCell);
        written.push_back(cfg.outPath);
    }
    if (!cfg.recordPath.empty()) {
        std::ofstream out(cfg.recordPath, std::ios::binary);
        if (!out) throw numerical_error("emit_report: cannot write \"" + cfg.recordPath + "\"");
        out << to_record_json(rec).dump(2) << "\n";
        written.push_back(cfg.recordPath);
    }
    return written;
}

}  // namespace interp::experiment

#endif  // INTERP_EXPERIMENT_HPP
