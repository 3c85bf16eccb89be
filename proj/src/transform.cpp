#include "gofdm/transform.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace gofdm {

namespace {

// Mixed-radix Cooley-Tukey plan for one length. Twiddles are laid out once at
// construction and the plan is immutable afterwards, so a single instance can
// be shared across worker threads.
struct Plan {
    std::size_t n = 0;
    Cvec twiddle;  // e^{-j2pi k/n}, k = 0 .. n-1
    std::uint64_t work_ops = 0;

    explicit Plan(std::size_t n_) : n(n_), twiddle(n_) {
        for (std::size_t k = 0; k < n; ++k) {
            const double phi = -2.0 * std::numbers::pi * static_cast<double>(k) /
                               static_cast<double>(n);
            twiddle[k] = cd{std::cos(phi), std::sin(phi)};
        }
        work_ops = count_ops(n);
    }

    static std::size_t smallest_prime_factor(std::size_t m) {
        for (std::size_t p = 2; p * p <= m; ++p) {
            if (m % p == 0) return p;
        }
        return m;
    }

    static std::uint64_t count_ops(std::size_t m) {
        if (m <= 1) return 0;
        const std::size_t p = smallest_prime_factor(m);
        const std::size_t sub = m / p;
        // p recursive transforms of length m/p, then m/p combine groups of
        // p^2 multiply-adds each.
        return p * count_ops(sub) + static_cast<std::uint64_t>(sub) * p * p;
    }

    // Decimation in time; `sign` selects e^{-...} (+1 uses the conjugate
    // table). `stride` walks the interleaved input, `mul` maps local twiddle
    // indices onto the length-n table.
    void recurse(const cd* in, cd* out, std::size_t m, std::size_t stride,
                 std::size_t mul, int sign) const {
        if (m == 1) {
            out[0] = in[0];
            return;
        }
        const std::size_t p = smallest_prime_factor(m);
        const std::size_t sub = m / p;
        for (std::size_t r = 0; r < p; ++r) {
            recurse(in + r * stride, out + r * sub, sub, stride * p, mul * p, sign);
        }
        cd scratch[7];  // largest prime kernel we ever need is tiny
        cd* tmp = scratch;
        Cvec heap_tmp;
        if (p > 7) {
            heap_tmp.resize(p);
            tmp = heap_tmp.data();
        }
        for (std::size_t q = 0; q < sub; ++q) {
            for (std::size_t k2 = 0; k2 < p; ++k2) {
                const std::size_t k = q + k2 * sub;
                cd acc{0.0, 0.0};
                for (std::size_t r = 0; r < p; ++r) {
                    const std::size_t idx = (r * k * mul) % n;
                    const cd w = (sign < 0) ? twiddle[idx] : std::conj(twiddle[idx]);
                    acc += w * out[r * sub + q];
                }
                tmp[k2] = acc;
            }
            for (std::size_t k2 = 0; k2 < p; ++k2) out[q + k2 * sub] = tmp[k2];
        }
    }

    Cvec execute(const Cvec& in, int sign) const {
        Cvec out(n);
        recurse(in.data(), out.data(), n, 1, 1, sign);
        return out;
    }
};

const Plan& plan_for(std::size_t n) {
    static std::mutex mu;
    static std::unordered_map<std::size_t, std::unique_ptr<Plan>> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, std::make_unique<Plan>(n)).first;
    }
    return *it->second;
}

}  // namespace

TimeBlock idft_unitary(const FreqBlock& bins) {
    if (bins.empty()) throw std::invalid_argument("idft_unitary: empty block");
    TimeBlock out = plan_for(bins.size()).execute(bins, +1);
    const double scale = 1.0 / std::sqrt(static_cast<double>(bins.size()));
    for (cd& x : out) x *= scale;
    return out;
}

FreqBlock dft_unitary(const TimeBlock& samples) {
    if (samples.empty()) throw std::invalid_argument("dft_unitary: empty block");
    FreqBlock out = plan_for(samples.size()).execute(samples, -1);
    const double scale = 1.0 / std::sqrt(static_cast<double>(samples.size()));
    for (cd& x : out) x *= scale;
    return out;
}

FreqBlock channel_freq_response(const TimeBlock& h_taps) {
    if (h_taps.empty()) throw std::invalid_argument("channel_freq_response: empty block");
    return plan_for(h_taps.size()).execute(h_taps, -1);
}

std::uint64_t transform_work_ops(std::size_t n) {
    return plan_for(n).work_ops;
}

Cvec add_cp(const TimeBlock& t, std::size_t n_cp) {
    if (n_cp > t.size()) throw std::invalid_argument("add_cp: n_cp exceeds block length");
    Cvec out;
    out.reserve(t.size() + n_cp);
    out.insert(out.end(), t.end() - static_cast<std::ptrdiff_t>(n_cp), t.end());
    out.insert(out.end(), t.begin(), t.end());
    return out;
}

TimeBlock remove_cp(const Cvec& extended, std::size_t n_cp) {
    if (n_cp > extended.size()) {
        throw std::invalid_argument("remove_cp: n_cp exceeds vector length");
    }
    return TimeBlock(extended.begin() + static_cast<std::ptrdiff_t>(n_cp), extended.end());
}

TimeBlock circular_convolve(const TimeBlock& x, const Cvec& h_taps) {
    const std::size_t n = x.size();
    if (h_taps.size() > n) {
        throw std::invalid_argument("circular_convolve: tap vector longer than block");
    }
    TimeBlock y(n, cd{0.0, 0.0});
    for (std::size_t l = 0; l < h_taps.size(); ++l) {
        if (h_taps[l] == cd{0.0, 0.0}) continue;
        for (std::size_t m = 0; m < n; ++m) {
            y[m] += h_taps[l] * x[(m + n - l) % n];
        }
    }
    return y;
}

Cvec linear_convolve(const Cvec& x, const Cvec& h_taps) {
    if (x.empty() || h_taps.empty()) {
        throw std::invalid_argument("linear_convolve: empty input");
    }
    Cvec y(x.size() + h_taps.size() - 1, cd{0.0, 0.0});
    for (std::size_t l = 0; l < h_taps.size(); ++l) {
        for (std::size_t m = 0; m < x.size(); ++m) {
            y[m + l] += h_taps[l] * x[m];
        }
    }
    return y;
}

}  // namespace gofdm
