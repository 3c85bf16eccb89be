#pragma once

// Test-side reference implementations, kept independent of the library's
// transform and search code so they can serve as oracles.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "gofdm/rng.hpp"
#include "gofdm/types.hpp"

namespace testref {

using gofdm::cd;
using gofdm::Cvec;

// Plain O(n^2) DFT sum: out[k] = sum_m in[m] e^{sign * j 2 pi k m / n}.
inline Cvec direct_dft(const Cvec& in, int sign) {
    const std::size_t n = in.size();
    Cvec out(n, cd{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t m = 0; m < n; ++m) {
            const double phi =
                sign * 2.0 * std::numbers::pi * static_cast<double>(k * m % n) / n;
            out[k] += in[m] * cd{std::cos(phi), std::sin(phi)};
        }
    }
    return out;
}

inline Cvec dft_unitary_direct(const Cvec& in) {
    Cvec out = direct_dft(in, -1);
    const double s = 1.0 / std::sqrt(static_cast<double>(in.size()));
    for (cd& x : out) x *= s;
    return out;
}

inline Cvec idft_unitary_direct(const Cvec& in) {
    Cvec out = direct_dft(in, +1);
    const double s = 1.0 / std::sqrt(static_cast<double>(in.size()));
    for (cd& x : out) x *= s;
    return out;
}

inline double max_abs_diff(const Cvec& a, const Cvec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double l2(const Cvec& v) {
    double e = 0.0;
    for (const cd& x : v) e += std::norm(x);
    return std::sqrt(e);
}

// Exhaustive smallest-passing-divisor search with its own ratio computation.
inline int smallest_passing_divisor(const Cvec& v, double epsilon) {
    const int n = static_cast<int>(v.size());
    double total = 0.0;
    for (const cd& x : v) total += std::norm(x);
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        double sub = 0.0;
        for (int m = 0; m < n; m += n / d) sub += std::norm(v[m]);
        if (sub / total > 1.0 - epsilon) return d;
    }
    return n;
}

// Gray-coded QPSK symbol error probability over AWGN at per-symbol SNR gamma.
inline double qpsk_ser_awgn(double gamma_lin) {
    const double e = std::erfc(std::sqrt(gamma_lin / 2.0));
    return e - 0.25 * e * e;
}

inline Cvec random_cvec(gofdm::Rng& rng, std::size_t n) {
    return rng.cgauss_vector(n, 1.0);
}

// Random vector supported on `support_size` random indices.
inline Cvec random_sparse(gofdm::Rng& rng, std::size_t n, std::size_t support_size) {
    Cvec v(n, cd{0.0, 0.0});
    for (std::size_t i = 0; i < support_size; ++i) {
        const std::size_t idx = static_cast<std::size_t>(rng.uniform() * n) % n;
        v[idx] = rng.cgauss(1.0);
    }
    return v;
}

}  // namespace testref
