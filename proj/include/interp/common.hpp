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

#ifndef INTERP_COMMON_HPP
#define INTERP_COMMON_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace interp {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Squared modulus without the sqrt of std::abs.
inline double abs2(Complex z) noexcept {
    return z.real() * z.real() + z.imag() * z.imag();
}

inline bool is_zero(const CVec& v) noexcept {
    for (Complex z : v)
        if (z != Complex(0.0, 0.0)) return false;
    return true;
}

inline CVec operator+(const CVec& a, const CVec& b) {
    CVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline CVec operator-(const CVec& a, const CVec& b) {
    CVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline CVec operator*(Complex s, const CVec& v) {
    CVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

inline double max_abs(const CVec& v) noexcept {
    double m = 0.0;
    for (Complex z : v) m = std::max(m, std::abs(z));
    return m;
}

/// Pairwise (cascade) summation: reduction order is fixed by the recursion,
/// so results are reproducible regardless of evaluation parallelism.
inline double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 16) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

/// Integer power of a complex number by repeated squaring; n may be negative.
inline Complex ipow(Complex z, long long n) {
    if (n < 0) return 1.0 / ipow(z, -n);
    Complex r = 1.0, b = z;
    unsigned long long e = static_cast<unsigned long long>(n);
    while (e) {
        if (e & 1ull) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline double ipow(double x, long long n) {
    if (n < 0) return 1.0 / ipow(x, -n);
    double r = 1.0, b = x;
    unsigned long long e = static_cast<unsigned long long>(n);
    while (e) {
        if (e & 1ull) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/// splitmix64, used to derive independent deterministic seeds.
inline std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace interp

#endif  // INTERP_COMMON_HPP
