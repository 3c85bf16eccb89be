#pragma once

#include <string>
#include <vector>

#include "gofdm/rng.hpp"
#include "gofdm/types.hpp"

namespace gofdm {

// Discrete-time layout of one OFDM symbol: n samples spanning
// symbol_duration_us, so the sample period is symbol_duration_us / n.
struct SampleGrid {
    int n = 256;
    int n_cp = 32;
    double symbol_duration_us = 12.8;

    double sample_period_ns() const { return symbol_duration_us * 1000.0 / n; }
};

// Multipath profile: path delays (ns) with relative average powers (dB).
struct PowerDelayProfile {
    std::vector<double> delays_ns;  // strictly increasing, first entry 0
    std::vector<double> powers_db;  // same length, relative
    std::string label;
};

// ITU indoor office profile: six paths, 0..700 ns.
PowerDelayProfile itu_indoor_pdp();

// Structured tapped-delay-line profile whose taps sit on <n/d> restricted to
// the cyclic-prefix window, with exponentially decaying average power
// exp(-decay_rate * i) over the tap ordinal i.
PowerDelayProfile tdl_structured_pdp(const SampleGrid& grid, int d, double decay_rate = 0.3);

// Delay -> nearest sample index; throws if a delay reaches the symbol edge.
std::vector<int> delays_to_samples(const PowerDelayProfile& pdp, const SampleGrid& grid);

// PDP resolved onto the sample grid: indices with unit-sum linear powers.
// Colliding delays merge by linear power addition.
struct SampledPdp {
    std::vector<int> indices;
    std::vector<double> powers_lin;  // normalized, sums to 1
};

SampledPdp sample_pdp(const PowerDelayProfile& pdp, const SampleGrid& grid);

// One block-fading draw: full-length tap vector plus its frequency response.
struct ChannelRealization {
    TimeBlock taps;            // length n, zero off the support
    FreqBlock freq;            // channel_freq_response(taps)
    std::vector<int> tap_support;
};

// Per-tap circularly-symmetric complex Gaussian (Rayleigh magnitudes) with
// variances equal to the normalized linear powers; E||taps||^2 = 1.
// With deterministic_taps the gains are fixed at sqrt(power) instead.
// Throws if any tap index reaches the CP length (the ISI-free condition).
ChannelRealization realize_channel(const PowerDelayProfile& pdp, const SampleGrid& grid,
                                   Rng& rng, bool deterministic_taps = false);

struct NoiseSpec {
    double snr_db = 0.0;
    double sigma2 = 1.0;  // per-sample complex noise variance

    static NoiseSpec from_snr_db(double snr_db) {
        return NoiseSpec{snr_db, std::pow(10.0, -snr_db / 10.0)};
    }
};

// y = taps (*) x + w with w iid CN(0, sigma2). Under the unitary signal
// transform the frequency-domain picture is Y[k] = H[k] X[k] + W[k] with W
// white of the same variance.
TimeBlock apply_channel_awgn(const TimeBlock& x, const ChannelRealization& ch,
                             const NoiseSpec& noise, Rng& rng);

}  // namespace gofdm
