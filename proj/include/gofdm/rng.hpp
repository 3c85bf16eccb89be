#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <initializer_list>
#include <numbers>
#include <random>

#include "gofdm/types.hpp"

namespace gofdm {

// splitmix64 finalizer; mixes one 64-bit word.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Folds a master seed and a tuple of labels (channel, d, snr bits, trial, ...)
// into one substream seed. Every (cell, trial) pair gets an independent
// stream, so removing a grid cell never perturbs another cell's draws.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> parts) {
    std::uint64_t s = mix64(master);
    for (std::uint64_t p : parts) s = mix64(s ^ p);
    return s;
}

// IEEE-754 bit pattern, so fractional SNR values hash deterministically.
inline std::uint64_t snr_bits(double snr_db) {
    std::uint64_t b;
    static_assert(sizeof(b) == sizeof(snr_db));
    std::memcpy(&b, &snr_db, sizeof(b));
    return b;
}

// Deterministic stream built on mt19937_64 (exactly specified by the
// standard). Gaussian draws use Box-Muller directly instead of
// std::normal_distribution, whose algorithm is implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    bool coin() { return (gen_() & 1ULL) != 0; }

    // Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    cd cgauss(double variance) {
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        const double r = std::sqrt(-variance * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        return cd{r * std::cos(phi), r * std::sin(phi)};
    }

    Cvec cgauss_vector(std::size_t n, double variance) {
        Cvec v(n);
        for (cd& z : v) z = cgauss(variance);
        return v;
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace gofdm
