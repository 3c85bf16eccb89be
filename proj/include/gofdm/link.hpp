#pragma once

#include <optional>
#include <vector>

#include "gofdm/channel.hpp"
#include "gofdm/estimators.hpp"
#include "gofdm/group.hpp"
#include "gofdm/types.hpp"

namespace gofdm {

// Tone plan for generator parameter d: the subgroup H = <d> is nulled and the
// remaining tones carry data; eta = 1 - 1/d is the active fraction.
struct ToneAllocation {
    int n = 0;
    SubgroupSpec spec;
    std::vector<int> active;  // Z_n \ H, increasing
    double eta = 0.0;

    static ToneAllocation make(int n, int d);
};

// Gray-labeled unit-power QPSK:
// 00 -> (+1+j)/sqrt2, 01 -> (-1+j)/sqrt2, 11 -> (-1-j)/sqrt2, 10 -> (+1-j)/sqrt2.
Cvec qpsk_map(const std::vector<int>& bits);
std::vector<int> qpsk_demap(const Cvec& symbols);

// Places data_syms on the active tones in index order; tones in H stay zero.
FreqBlock build_ofdm_symbol(const Cvec& data_syms, const ToneAllocation& alloc);

// One-tap equalizer over the active tones. Tones whose estimate magnitude
// falls below the erasure threshold are frozen to a fixed constellation
// point, which against uniform data is wrong with probability 1 - 1/M.
Cvec equalize(const FreqBlock& Y, const FreqBlock& H_hat, const ToneAllocation& alloc);

inline constexpr double kEqualizerErasureThreshold = 1e-9;

// Frequency-domain mean squared error over all n tones.
double mse_metric(const FreqBlock& H_true, const FreqBlock& H_hat);

// Effective throughput in bits per subcarrier use.
double throughput_metric(double ser, const ToneAllocation& alloc, int bits_per_symbol);

// Analysis-side expected MSE of a projected noisy estimate:
// (e_total - e_sub)/n + sigma2 * d_star / n.
double predicted_mse(double e_total, double e_sub, double sigma2, int d_star, int n);

struct TrialMetrics {
    double mse = 0.0;
    double ser = 0.0;
    double ber = 0.0;
    double throughput = 0.0;
    std::optional<int> chosen_d;
};

// Everything a trial needs beyond its random stream. The LMMSE filter is
// factored once per sweep cell and shared read-only.
struct TrialSetup {
    SampleGrid grid;
    ToneAllocation alloc;
    const PowerDelayProfile* pdp = nullptr;
    const LmmseFilter* lmmse = nullptr;
    double epsilon = 0.15;
    NoiseSpec noise;
    bool deterministic_taps = false;
};

struct TrialOutcome {
    TrialMetrics ls;
    TrialMetrics lmmse;
    TrialMetrics subgroup;
};

// One block-fading trial: pilot symbol, three estimates off the same
// received pilot, one data symbol, per-estimator equalization and metrics.
// The channel, noise, and data draws are shared by all three estimators.
TrialOutcome run_trial(const TrialSetup& setup, Rng& rng);

}  // namespace gofdm
