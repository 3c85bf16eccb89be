#include "gofdm/link.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gofdm/transform.hpp"

namespace gofdm {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

ToneAllocation ToneAllocation::make(int n, int d) {
    ToneAllocation alloc;
    alloc.n = n;
    alloc.spec = subgroup(n, d);
    std::vector<bool> nulled(n, false);
    for (int h : alloc.spec.elements_h) nulled[h] = true;
    for (int k = 0; k < n; ++k) {
        if (!nulled[k]) alloc.active.push_back(k);
    }
    alloc.eta = 1.0 - 1.0 / d;
    return alloc;
}

Cvec qpsk_map(const std::vector<int>& bits) {
    if (bits.size() % 2 != 0) throw std::invalid_argument("qpsk_map: odd bit count");
    Cvec syms(bits.size() / 2);
    for (std::size_t i = 0; i < syms.size(); ++i) {
        const int b0 = bits[2 * i];
        const int b1 = bits[2 * i + 1];
        syms[i] = cd{(1 - 2 * b1) * kInvSqrt2, (1 - 2 * b0) * kInvSqrt2};
    }
    return syms;
}

std::vector<int> qpsk_demap(const Cvec& symbols) {
    std::vector<int> bits(symbols.size() * 2);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        bits[2 * i] = symbols[i].imag() < 0.0 ? 1 : 0;
        bits[2 * i + 1] = symbols[i].real() < 0.0 ? 1 : 0;
    }
    return bits;
}

FreqBlock build_ofdm_symbol(const Cvec& data_syms, const ToneAllocation& alloc) {
    if (data_syms.size() != alloc.active.size()) {
        throw std::invalid_argument("build_ofdm_symbol: symbol count does not match active tones");
    }
    FreqBlock block(alloc.n, cd{0.0, 0.0});
    for (std::size_t i = 0; i < alloc.active.size(); ++i) {
        block[alloc.active[i]] = data_syms[i];
    }
    return block;
}

Cvec equalize(const FreqBlock& Y, const FreqBlock& H_hat, const ToneAllocation& alloc) {
    Cvec out(alloc.active.size());
    for (std::size_t i = 0; i < alloc.active.size(); ++i) {
        const int k = alloc.active[i];
        if (std::abs(H_hat[k]) < kEqualizerErasureThreshold) {
            out[i] = cd{kInvSqrt2, kInvSqrt2};  // erasure: fixed symbol
        } else {
            out[i] = Y[k] / H_hat[k];
        }
    }
    return out;
}

double mse_metric(const FreqBlock& H_true, const FreqBlock& H_hat) {
    if (H_true.size() != H_hat.size()) {
        throw std::invalid_argument("mse_metric: length mismatch");
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < H_true.size(); ++k) {
        acc += std::norm(H_true[k] - H_hat[k]);
    }
    return acc / static_cast<double>(H_true.size());
}

double throughput_metric(double ser, const ToneAllocation& alloc, int bits_per_symbol) {
    return alloc.eta * (1.0 - ser) * bits_per_symbol;
}

double predicted_mse(double e_total, double e_sub, double sigma2, int d_star, int n) {
    return (e_total - e_sub) / n + sigma2 * d_star / n;
}

namespace {

std::vector<int> random_bits(Rng& rng, std::size_t count) {
    std::vector<int> bits(count);
    for (int& b : bits) b = rng.coin() ? 1 : 0;
    return bits;
}

TrialMetrics score(const EstimateResult& est, const ChannelRealization& ch,
                   const FreqBlock& Y_data, const std::vector<int>& tx_bits,
                   const TrialSetup& setup) {
    const Cvec eq = equalize(Y_data, est.H_hat_freq, setup.alloc);
    const std::vector<int> rx_bits = qpsk_demap(eq);

    int symbol_errors = 0;
    int bit_errors = 0;
    const std::size_t n_syms = eq.size();
    for (std::size_t i = 0; i < n_syms; ++i) {
        const bool e0 = rx_bits[2 * i] != tx_bits[2 * i];
        const bool e1 = rx_bits[2 * i + 1] != tx_bits[2 * i + 1];
        bit_errors += static_cast<int>(e0) + static_cast<int>(e1);
        if (e0 || e1) ++symbol_errors;
    }

    TrialMetrics m;
    m.mse = mse_metric(ch.freq, est.H_hat_freq);
    m.ser = static_cast<double>(symbol_errors) / static_cast<double>(n_syms);
    m.ber = static_cast<double>(bit_errors) / static_cast<double>(2 * n_syms);
    m.throughput = throughput_metric(m.ser, setup.alloc, 2);
    m.chosen_d = est.chosen_d;
    return m;
}

}  // namespace

TrialOutcome run_trial(const TrialSetup& setup, Rng& rng) {
    const ToneAllocation& alloc = setup.alloc;
    const std::size_t n_active = alloc.active.size();

    const ChannelRealization ch =
        realize_channel(*setup.pdp, setup.grid, rng, setup.deterministic_taps);

    // Pilot symbol: known unit-power QPSK on every active tone.
    const Cvec pilot_syms = qpsk_map(random_bits(rng, 2 * n_active));
    const FreqBlock pilot = build_ofdm_symbol(pilot_syms, alloc);
    const TimeBlock y_pilot = apply_channel_awgn(idft_unitary(pilot), ch, setup.noise, rng);
    const FreqBlock Y_pilot = dft_unitary(y_pilot);

    const EstimateResult ls = ls_estimate(Y_pilot, pilot, alloc.active);
    const EstimateResult lmmse = setup.lmmse->apply(ls.H_hat_freq);
    const EstimateResult sub = subgroup_estimate(Y_pilot, pilot, alloc.active, setup.epsilon);

    // One data symbol over the same realization (block fading).
    const std::vector<int> tx_bits = random_bits(rng, 2 * n_active);
    const FreqBlock data = build_ofdm_symbol(qpsk_map(tx_bits), alloc);
    const TimeBlock y_data = apply_channel_awgn(idft_unitary(data), ch, setup.noise, rng);
    const FreqBlock Y_data = dft_unitary(y_data);

    TrialOutcome out;
    out.ls = score(ls, ch, Y_data, tx_bits, setup);
    out.lmmse = score(lmmse, ch, Y_data, tx_bits, setup);
    out.subgroup = score(sub, ch, Y_data, tx_bits, setup);
    return out;
}

}  // namespace gofdm
