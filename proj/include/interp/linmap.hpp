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

#ifndef INTERP_LINMAP_HPP
#define INTERP_LINMAP_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "interp/common.hpp"
#include "interp/couple.hpp"
#include "interp/errors.hpp"
#include "interp/finseq.hpp"

namespace interp {

/// Dense complex linear map, row-major.
struct LinMap {
    int rows = 0;
    int cols = 0;
    std::vector<Complex> a;

    static LinMap zero(int rows, int cols) {
        LinMap m;
        m.rows = rows;
        m.cols = cols;
        m.a.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), Complex(0, 0));
        return m;
    }

    Complex& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    Complex at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    CVec apply(const CVec& v) const {
        if (v.size() != static_cast<size_t>(cols)) throw input_error("LinMap: size mismatch");
        CVec out(static_cast<size_t>(rows), Complex(0, 0));
        for (int r = 0; r < rows; ++r) {
            Complex s(0, 0);
            for (int c = 0; c < cols; ++c) s += at(r, c) * v[static_cast<size_t>(c)];
            out[static_cast<size_t>(r)] = s;
        }
        return out;
    }

    CVec apply_adjoint(const CVec& v) const {
        if (v.size() != static_cast<size_t>(rows)) throw input_error("LinMap: size mismatch");
        CVec out(static_cast<size_t>(cols), Complex(0, 0));
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                out[static_cast<size_t>(c)] += std::conj(at(r, c)) * v[static_cast<size_t>(r)];
        return out;
    }
};

/// Apply T to every entry of a sequence.
inline FinSeq apply_seq(const LinMap& T, const FinSeq& b) {
    if (b.empty()) return FinSeq(T.rows);
    std::vector<CVec> out;
    out.reserve(b.entries().size());
    for (const CVec& e : b.entries()) out.push_back(T.apply(e));
    return FinSeq(b.lo(), std::move(out), T.rows);
}

/// Certified lower bound on ||T||_{A->B}: the best ratio ||Tv||_B / ||v||_A
/// over power-iteration iterates, seeded random certification points, and
/// any caller-supplied probe vectors. Every candidate yields a valid lower
/// bound, so the maximum is one too.
inline double op_norm_lower_bound(const LinMap& T, const NormSpec& domain,
                                  const NormSpec& range,
                                  const std::vector<CVec>& probes = {}, int randomPoints = 32,
                                  int powerSteps = 12, std::uint64_t seed = 0) {
    double best = 0.0;
    auto ratio = [&](const CVec& v) {
        double nv = norm(domain, v);
        if (nv <= 0.0) return;
        double r = norm(range, T.apply(v)) / nv;
        if (r > best) best = r;
    };
    for (const CVec& v : probes)
        if (v.size() == static_cast<size_t>(T.cols)) ratio(v);

    std::mt19937_64 rng(mix_seed(seed + 0x9e01));
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < randomPoints; ++k) {
        CVec v(static_cast<size_t>(T.cols));
        for (Complex& z : v) z = Complex(gauss(rng), gauss(rng));
        ratio(v);
        // projected power iteration from this start
        CVec w = v;
        for (int it = 0; it < powerSteps; ++it) {
            w = T.apply_adjoint(T.apply(w));
            double m = max_abs(w);
            if (m <= 0.0) break;
            for (Complex& z : w) z /= m;
            ratio(w);
        }
    }
    return best;
}

}  // namespace interp

#endif  // INTERP_LINMAP_HPP
