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

#ifndef INTERP_FINSEQ_HPP
#define INTERP_FINSEQ_HPP

#include <utility>
#include <vector>

#include "interp/common.hpp"
#include "interp/errors.hpp"

namespace interp {

/// A finitely supported two-sided sequence of vectors in C^dim; entries
/// outside the stored window are zero. Normal form trims exactly-zero
/// entries at both ends; the empty sequence is the zero element.
class FinSeq {
   public:
    FinSeq() = default;
    explicit FinSeq(int dim) : dim_(dim) {
        if (dim <= 0) throw input_error("FinSeq: dim must be positive");
    }

    FinSeq(int lo, std::vector<CVec> entries, int dim) : lo_(lo), dim_(dim) {
        if (dim <= 0) throw input_error("FinSeq: dim must be positive");
        for (const CVec& e : entries)
            if (e.size() != static_cast<size_t>(dim))
                throw input_error("FinSeq: entry dimension mismatch");
        entries_ = std::move(entries);
        normalize();
    }

    /// delta_k tensor v: the sequence whose only entry is v at index k.
    static FinSeq delta(int k, const CVec& v) {
        return FinSeq(k, {v}, static_cast<int>(v.size()));
    }

    int dim() const { return dim_; }
    bool empty() const { return entries_.empty(); }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(entries_.size()) - 1; }  // empty: lo-1
    int support_size() const { return static_cast<int>(entries_.size()); }

    /// Entry at index n (zero vector outside the window).
    CVec at(int n) const {
        if (empty() || n < lo_ || n > hi()) return CVec(static_cast<size_t>(dim_));
        return entries_[static_cast<size_t>(n - lo_)];
    }

    const std::vector<CVec>& entries() const { return entries_; }

    FinSeq& operator+=(const FinSeq& o) {
        merge(o, Complex(1.0, 0.0));
        return *this;
    }
    FinSeq& operator-=(const FinSeq& o) {
        merge(o, Complex(-1.0, 0.0));
        return *this;
    }
    FinSeq& operator*=(Complex a) {
        if (a == Complex(0.0, 0.0)) {
            entries_.clear();
            lo_ = 0;
            return *this;
        }
        for (CVec& e : entries_)
            for (Complex& z : e) z *= a;
        return *this;
    }

    friend FinSeq operator+(FinSeq a, const FinSeq& b) { return a += b; }
    friend FinSeq operator-(FinSeq a, const FinSeq& b) { return a -= b; }
    friend FinSeq operator*(Complex s, FinSeq a) { return a *= s; }

    bool operator==(const FinSeq& o) const {
        return dim_ == o.dim_ && lo_ == o.lo_ && entries_ == o.entries_;
    }

    /// Shift indices by k: entry at n of the result is the entry at n-k.
    FinSeq shifted(int k) const {
        FinSeq r = *this;
        if (!r.empty()) r.lo_ += k;
        return r;
    }

    /// sum_n ||b_n|| with the Euclidean entry norm (used for grid bounds).
    double euclidean_mass() const {
        double s = 0.0;
        for (const CVec& e : entries_) {
            double t = 0.0;
            for (Complex z : e) t += abs2(z);
            s += std::sqrt(t);
        }
        return s;
    }

    /// max |index| over the support (0 for the zero sequence).
    int degree() const {
        if (empty()) return 0;
        return std::max(std::abs(lo()), std::abs(hi()));
    }

   private:
    void normalize() {
        size_t a = 0, b = entries_.size();
        while (a < b && is_zero(entries_[a])) ++a;
        while (b > a && is_zero(entries_[b - 1])) --b;
        if (a == b) {
            entries_.clear();
            lo_ = 0;
            return;
        }
        if (a > 0 || b < entries_.size()) {
            std::vector<CVec> kept(entries_.begin() + static_cast<long>(a),
                                   entries_.begin() + static_cast<long>(b));
            entries_ = std::move(kept);
            lo_ += static_cast<int>(a);
        }
    }

    void merge(const FinSeq& o, Complex factor) {
        if (o.empty()) return;
        if (dim_ == 0) dim_ = o.dim_;
        if (dim_ != o.dim_) throw input_error("FinSeq: dimension mismatch");
        if (empty()) {
            lo_ = o.lo_;
            entries_.assign(o.entries_.size(), CVec(static_cast<size_t>(dim_)));
        }
        int newLo = std::min(lo_, o.lo_);
        int newHi = std::max(hi(), o.hi());
        std::vector<CVec> merged(static_cast<size_t>(newHi - newLo + 1),
                                 CVec(static_cast<size_t>(dim_)));
        for (int n = lo_; n <= hi(); ++n) merged[static_cast<size_t>(n - newLo)] = at(n);
        for (int n = o.lo_; n <= o.hi(); ++n) {
            CVec& dst = merged[static_cast<size_t>(n - newLo)];
            CVec src = o.at(n);
            for (size_t i = 0; i < dst.size(); ++i) dst[i] += factor * src[i];
        }
        lo_ = newLo;
        entries_ = std::move(merged);
        normalize();
    }

    int lo_ = 0;
    std::vector<CVec> entries_;
    int dim_ = 0;
};

}  // namespace interp

#endif  // INTERP_FINSEQ_HPP
