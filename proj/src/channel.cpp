#include "gofdm/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gofdm/group.hpp"
#include "gofdm/transform.hpp"

namespace gofdm {

PowerDelayProfile itu_indoor_pdp() {
    PowerDelayProfile pdp;
    pdp.delays_ns = {0.0, 100.0, 200.0, 300.0, 500.0, 700.0};
    pdp.powers_db = {0.0, -3.6, -7.2, -10.8, -18.0, -25.2};
    pdp.label = "itu-indoor-office";
    return pdp;
}

PowerDelayProfile tdl_structured_pdp(const SampleGrid& grid, int d, double decay_rate) {
    const SubgroupSpec spec = subgroup(grid.n, d);
    PowerDelayProfile pdp;
    pdp.label = "tdl-structured-d" + std::to_string(d);
    int ordinal = 0;
    for (int m : spec.elements_h_perp) {
        if (m >= grid.n_cp) continue;  // taps past the CP window are dropped
        pdp.delays_ns.push_back(m * grid.sample_period_ns());
        pdp.powers_db.push_back(10.0 * std::log10(std::exp(-decay_rate * ordinal)));
        ++ordinal;
    }
    return pdp;
}

std::vector<int> delays_to_samples(const PowerDelayProfile& pdp, const SampleGrid& grid) {
    const double period = grid.sample_period_ns();
    std::vector<int> indices;
    indices.reserve(pdp.delays_ns.size());
    for (double delay : pdp.delays_ns) {
        if (delay >= grid.symbol_duration_us * 1000.0) {
            throw std::invalid_argument("delays_to_samples: delay exceeds the symbol duration");
        }
        indices.push_back(static_cast<int>(std::lround(delay / period)));
    }
    return indices;
}

SampledPdp sample_pdp(const PowerDelayProfile& pdp, const SampleGrid& grid) {
    if (pdp.delays_ns.size() != pdp.powers_db.size() || pdp.delays_ns.empty()) {
        throw std::invalid_argument("sample_pdp: malformed profile");
    }
    if (pdp.delays_ns.front() != 0.0) {
        throw std::invalid_argument("sample_pdp: first delay must be 0");
    }
    for (std::size_t i = 1; i < pdp.delays_ns.size(); ++i) {
        if (pdp.delays_ns[i] <= pdp.delays_ns[i - 1]) {
            throw std::invalid_argument("sample_pdp: delays must be strictly increasing");
        }
    }
    const std::vector<int> raw = delays_to_samples(pdp, grid);
    SampledPdp out;
    double total = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double p = std::pow(10.0, pdp.powers_db[i] / 10.0);
        total += p;
        bool merged = false;
        for (std::size_t j = 0; j < out.indices.size(); ++j) {
            if (out.indices[j] == raw[i]) {  // collision: add linear powers
                out.powers_lin[j] += p;
                merged = true;
                break;
            }
        }
        if (!merged) {
            out.indices.push_back(raw[i]);
            out.powers_lin.push_back(p);
        }
    }
    for (double& p : out.powers_lin) p /= total;
    return out;
}

ChannelRealization realize_channel(const PowerDelayProfile& pdp, const SampleGrid& grid,
                                   Rng& rng, bool deterministic_taps) {
    const SampledPdp sp = sample_pdp(pdp, grid);
    ChannelRealization ch;
    ch.taps.assign(grid.n, cd{0.0, 0.0});
    ch.tap_support = sp.indices;
    for (std::size_t i = 0; i < sp.indices.size(); ++i) {
        const int m = sp.indices[i];
        if (m >= grid.n_cp) {
            throw std::invalid_argument("realize_channel: tap index " + std::to_string(m) +
                                        " violates the CP window (n_cp = " +
                                        std::to_string(grid.n_cp) + ")");
        }
        ch.taps[m] = deterministic_taps ? cd{std::sqrt(sp.powers_lin[i]), 0.0}
                                        : rng.cgauss(sp.powers_lin[i]);
    }
    ch.freq = channel_freq_response(ch.taps);
    return ch;
}

TimeBlock apply_channel_awgn(const TimeBlock& x, const ChannelRealization& ch,
                             const NoiseSpec& noise, Rng& rng) {
    TimeBlock y = circular_convolve(x, ch.taps);
    if (noise.sigma2 > 0.0) {
        for (cd& s : y) s += rng.cgauss(noise.sigma2);
    }
    return y;
}

}  // namespace gofdm
