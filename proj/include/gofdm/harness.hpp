#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gofdm/channel.hpp"

namespace gofdm {

enum class ChannelModel { TDL, ITU };

const char* channel_name(ChannelModel m);

// Trial-count policy: the adaptive schedule gives sparse configurations
// (small d) more trials; fixed(k) overrides it.
struct TrialsPolicy {
    bool automatic = true;
    int fixed = 0;

    static TrialsPolicy auto_mode() { return {true, 0}; }
    static TrialsPolicy fixed_mode(int k) { return {false, k}; }
};

int trials_for(int d, const TrialsPolicy& policy);

struct SimConfig {
    int n = 256;
    int n_cp = 32;  // n/8
    std::string modulation = "qpsk";
    double epsilon = 0.15;
    std::vector<double> snr_grid_db = {0, 5, 10, 15, 20, 25};
    std::vector<int> d_grid = {2, 8, 16, 64, 128};
    ChannelModel channel = ChannelModel::TDL;
    TrialsPolicy trials = TrialsPolicy::auto_mode();
    std::uint64_t master_seed = 1;
    bool deterministic_taps = false;
    double symbol_duration_us = 12.8;
    double tdl_decay_rate = 0.3;

    SampleGrid grid() const { return SampleGrid{n, n_cp, symbol_duration_us}; }
    PowerDelayProfile pdp_for(int d) const;
    void validate() const;  // throws std::invalid_argument on a bad grid
};

// One (channel, estimator, d, snr) cell after aggregation.
struct AggregateRow {
    std::string channel;
    std::string estimator;
    int d = 0;
    double snr_db = 0.0;
    int trials = 0;
    double mean_mse = 0.0;
    double stderr_mse = 0.0;
    double mean_ser = 0.0;
    double stderr_ser = 0.0;
    double mean_ber = 0.0;
    double mean_throughput = 0.0;
    std::optional<double> mean_chosen_d;  // subgroup rows only
};

// Monte Carlo sweep over (d, snr). Rows come out in (d, snr, estimator)
// order with estimators as ls, lmmse, subgroup; deterministic for a given
// (config, seed) regardless of how many workers run the cells.
std::vector<AggregateRow> sweep(const SimConfig& config);

// Lossless CSV persistence; floats carry 17 significant digits.
void write_csv(const std::vector<AggregateRow>& rows, const std::string& path);
std::vector<AggregateRow> read_csv(const std::string& path);

}  // namespace gofdm
