#include "gofdm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "gofdm/estimators.hpp"
#include "gofdm/link.hpp"
#include "gofdm/rng.hpp"

namespace gofdm {

const char* channel_name(ChannelModel m) {
    return m == ChannelModel::TDL ? "tdl" : "itu";
}

int trials_for(int d, const TrialsPolicy& policy) {
    if (!policy.automatic) return policy.fixed;
    if (d <= 8) return 300;
    if (d <= 16) return 200;
    return 100;
}

PowerDelayProfile SimConfig::pdp_for(int d) const {
    return channel == ChannelModel::TDL ? tdl_structured_pdp(grid(), d, tdl_decay_rate)
                                        : itu_indoor_pdp();
}

void SimConfig::validate() const {
    if (n < 2) throw std::invalid_argument("config: n must be >= 2");
    if (n_cp < 0 || n_cp > n) throw std::invalid_argument("config: n_cp must lie in [0, n]");
    if (modulation != "qpsk") throw std::invalid_argument("config: unsupported modulation '" + modulation + "'");
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("config: epsilon must lie in (0, 1)");
    }
    for (int d : d_grid) {
        if (d < 1 || n % d != 0) {
            throw std::invalid_argument("config: d = " + std::to_string(d) +
                                        " does not divide n = " + std::to_string(n));
        }
    }
    if (!trials.automatic && trials.fixed < 1) {
        throw std::invalid_argument("config: fixed trial count must be >= 1");
    }
    for (int d : d_grid) {
        // Also checks CP admissibility of every profile the sweep will use.
        const SampledPdp sp = sample_pdp(pdp_for(d), grid());
        for (int idx : sp.indices) {
            if (idx >= n_cp) {
                throw std::invalid_argument("config: channel tap at sample " + std::to_string(idx) +
                                            " does not fit inside the CP (n_cp = " +
                                            std::to_string(n_cp) + ")");
            }
        }
    }
}

namespace {

struct Accumulator {
    std::vector<double> mse, ser, ber, tput;
    std::vector<int> chosen;

    void add(const TrialMetrics& m) {
        mse.push_back(m.mse);
        ser.push_back(m.ser);
        ber.push_back(m.ber);
        tput.push_back(m.throughput);
        if (m.chosen_d) chosen.push_back(*m.chosen_d);
    }
};

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (static_cast<double>(v.size() - 1) * static_cast<double>(v.size())));
}

AggregateRow summarize(const Accumulator& acc, const SimConfig& cfg, const char* estimator,
                       int d, double snr_db, int trials) {
    AggregateRow row;
    row.channel = channel_name(cfg.channel);
    row.estimator = estimator;
    row.d = d;
    row.snr_db = snr_db;
    row.trials = trials;
    row.mean_mse = mean_of(acc.mse);
    row.stderr_mse = stderr_of(acc.mse, row.mean_mse);
    row.mean_ser = mean_of(acc.ser);
    row.stderr_ser = stderr_of(acc.ser, row.mean_ser);
    row.mean_ber = mean_of(acc.ber);
    row.mean_throughput = mean_of(acc.tput);
    if (!acc.chosen.empty()) {
        double s = 0.0;
        for (int c : acc.chosen) s += c;
        row.mean_chosen_d = s / static_cast<double>(acc.chosen.size());
    }
    return row;
}

std::vector<AggregateRow> run_cell(const SimConfig& cfg, int d, double snr_db) {
    const int k_trials = trials_for(d, cfg.trials);
    const SampleGrid grid = cfg.grid();
    const PowerDelayProfile pdp = cfg.pdp_for(d);
    const NoiseSpec noise = NoiseSpec::from_snr_db(snr_db);

    LmmseStatistics stats;
    stats.covariance = covariance_from_pdp(pdp, grid);
    stats.sigma2 = noise.sigma2;

    TrialSetup setup;
    setup.grid = grid;
    setup.alloc = ToneAllocation::make(cfg.n, d);
    setup.pdp = &pdp;
    const LmmseFilter filter(stats, setup.alloc.active);
    setup.lmmse = &filter;
    setup.epsilon = cfg.epsilon;
    setup.noise = noise;
    setup.deterministic_taps = cfg.deterministic_taps;

    Accumulator ls, lmmse, sub;
    const std::uint64_t chan_tag = cfg.channel == ChannelModel::TDL ? 1 : 2;
    for (int t = 0; t < k_trials; ++t) {
        Rng rng(derive_seed(cfg.master_seed,
                            {chan_tag, static_cast<std::uint64_t>(d), snr_bits(snr_db),
                             static_cast<std::uint64_t>(t)}));
        const TrialOutcome outcome = run_trial(setup, rng);
        ls.add(outcome.ls);
        lmmse.add(outcome.lmmse);
        sub.add(outcome.subgroup);
    }

    return {summarize(ls, cfg, "ls", d, snr_db, k_trials),
            summarize(lmmse, cfg, "lmmse", d, snr_db, k_trials),
            summarize(sub, cfg, "subgroup", d, snr_db, k_trials)};
}

}  // namespace

std::vector<AggregateRow> sweep(const SimConfig& config) {
    config.validate();

    struct Cell {
        int d;
        double snr_db;
    };
    std::vector<Cell> cells;
    for (int d : config.d_grid) {
        for (double snr : config.snr_grid_db) cells.push_back({d, snr});
    }

    // Cells are independent (per-cell seed derivation), so they can run on
    // any number of workers; results are stitched back in grid order.
    std::vector<std::vector<AggregateRow>> cell_rows(cells.size());
    std::vector<std::string> cell_errors(cells.size());
    std::atomic<std::size_t> next{0};
    const unsigned n_workers =
        std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                        static_cast<unsigned>(cells.size())));
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
                try {
                    cell_rows[i] = run_cell(config, cells[i].d, cells[i].snr_db);
                } catch (const std::exception& e) {
                    cell_errors[i] = e.what();
                }
            }
        });
    }
    for (std::thread& t : workers) t.join();

    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!cell_errors[i].empty()) {
            throw std::runtime_error("sweep: cell (d=" + std::to_string(cells[i].d) + ", snr=" +
                                     std::to_string(cells[i].snr_db) + " dB) failed: " +
                                     cell_errors[i]);
        }
    }

    std::vector<AggregateRow> rows;
    rows.reserve(cells.size() * 3);
    for (std::vector<AggregateRow>& cr : cell_rows) {
        for (AggregateRow& row : cr) rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

constexpr const char* kCsvColumns[] = {
    "channel", "estimator", "d", "snr_db", "trials", "mean_mse", "stderr_mse",
    "mean_ser", "stderr_ser", "mean_ber", "mean_throughput", "mean_chosen_d",
};

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

void write_csv(const std::vector<AggregateRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    for (std::size_t i = 0; i < std::size(kCsvColumns); ++i) {
        out << (i ? "," : "") << kCsvColumns[i];
    }
    out << "\n";
    for (const AggregateRow& r : rows) {
        out << r.channel << ',' << r.estimator << ',' << r.d << ',' << fmt_double(r.snr_db)
            << ',' << r.trials << ',' << fmt_double(r.mean_mse) << ',' << fmt_double(r.stderr_mse)
            << ',' << fmt_double(r.mean_ser) << ',' << fmt_double(r.stderr_ser) << ','
            << fmt_double(r.mean_ber) << ',' << fmt_double(r.mean_throughput) << ','
            << (r.mean_chosen_d ? fmt_double(*r.mean_chosen_d) : std::string()) << "\n";
    }
    if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

std::vector<AggregateRow> read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty file " + path);

    const std::vector<std::string> header = split_line(line);
    if (header.size() != std::size(kCsvColumns)) {
        for (const char* col : kCsvColumns) {
            bool found = false;
            for (const std::string& h : header) {
                if (h == col) { found = true; break; }
            }
            if (!found) {
                throw std::runtime_error("read_csv: missing column '" + std::string(col) + "'");
            }
        }
        throw std::runtime_error("read_csv: malformed header");
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] != kCsvColumns[i]) {
            throw std::runtime_error("read_csv: missing column '" + std::string(kCsvColumns[i]) +
                                     "' (found '" + header[i] + "')");
        }
    }

    std::vector<AggregateRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> f = split_line(line);
        if (f.size() != std::size(kCsvColumns)) {
            throw std::runtime_error("read_csv: bad field count on line " +
                                     std::to_string(rows.size() + 2));
        }
        AggregateRow r;
        r.channel = f[0];
        r.estimator = f[1];
        r.d = std::stoi(f[2]);
        r.snr_db = std::stod(f[3]);
        r.trials = std::stoi(f[4]);
        r.mean_mse = std::stod(f[5]);
        r.stderr_mse = std::stod(f[6]);
        r.mean_ser = std::stod(f[7]);
        r.stderr_ser = std::stod(f[8]);
        r.mean_ber = std::stod(f[9]);
        r.mean_throughput = std::stod(f[10]);
        if (!f[11].empty()) r.mean_chosen_d = std::stod(f[11]);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace gofdm
