#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "gofdm/estimators.hpp"
#include "gofdm/group.hpp"
#include "gofdm/harness.hpp"
#include "gofdm/link.hpp"
#include "gofdm/plot.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

std::vector<double> parse_snr_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() == 1) return {std::stod(parts[0])};
    if (parts.size() != 3) {
        throw std::invalid_argument("--snr expects VALUE or START:STOP:STEP");
    }
    const double start = std::stod(parts[0]);
    const double stop = std::stod(parts[1]);
    const double step = std::stod(parts[2]);
    if (step <= 0.0 || stop < start) {
        throw std::invalid_argument("--snr needs STEP > 0 and STOP >= START");
    }
    std::vector<double> grid;
    for (double v = start; v <= stop + 1e-9; v += step) grid.push_back(v);
    return grid;
}

std::string print_set(const std::vector<int>& xs) {
    std::string s = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(xs[i]);
    }
    return s + "}";
}

void print_summary(const std::vector<gofdm::AggregateRow>& rows) {
    std::printf("%-5s %-9s %4s %7s %7s  %-11s %-11s %-11s %-9s\n", "chan", "estimator", "d",
                "snr_db", "trials", "mse", "ser", "ber", "tput");
    for (const auto& r : rows) {
        std::printf("%-5s %-9s %4d %7.4g %7d  %-11.4g %-11.4g %-11.4g %-9.4g\n",
                    r.channel.c_str(), r.estimator.c_str(), r.d, r.snr_db, r.trials, r.mean_mse,
                    r.mean_ser, r.mean_ber, r.mean_throughput);
    }
}

struct RunOptions {
    int n = 256;
    int cp = -1;  // -1: n/8
    std::string mod = "qpsk";
    double epsilon = 0.15;
    std::string snr = "0:25:5";
    std::string d_list = "2,8,16,64,128";
    std::string channel = "tdl";
    std::string trials = "auto";
    std::uint64_t seed = 1;
    bool deterministic_taps = false;
    std::string out = "results.csv";
};

gofdm::SimConfig config_from(const RunOptions& opt) {
    gofdm::SimConfig cfg;
    cfg.n = opt.n;
    cfg.n_cp = opt.cp < 0 ? opt.n / 8 : opt.cp;
    cfg.modulation = opt.mod;
    cfg.epsilon = opt.epsilon;
    cfg.snr_grid_db = parse_snr_grid(opt.snr);
    cfg.d_grid.clear();
    std::string cur;
    for (char c : opt.d_list + ",") {
        if (c == ',') {
            if (!cur.empty()) cfg.d_grid.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    cfg.channel = opt.channel == "itu" ? gofdm::ChannelModel::ITU : gofdm::ChannelModel::TDL;
    if (opt.trials == "auto") {
        cfg.trials = gofdm::TrialsPolicy::auto_mode();
    } else {
        cfg.trials = gofdm::TrialsPolicy::fixed_mode(std::stoi(opt.trials));
    }
    cfg.master_seed = opt.seed;
    cfg.deterministic_taps = opt.deterministic_taps;
    return cfg;
}

int do_run(const RunOptions& opt) {
    gofdm::SimConfig cfg;
    try {
        cfg = config_from(opt);
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "ofdmsim run: " << e.what() << "\n"
                  << "Run 'ofdmsim run --help' for usage.\n";
        return kExitUsage;
    }
    try {
        const std::vector<gofdm::AggregateRow> rows = gofdm::sweep(cfg);
        gofdm::write_csv(rows, opt.out);
        print_summary(rows);
        std::printf("wrote %zu rows to %s\n", rows.size(), opt.out.c_str());
    } catch (const std::exception& e) {
        std::cerr << "ofdmsim run: simulation failed: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

int do_plot(const std::string& in, const std::string& metric, const std::string& out_prefix,
            bool facet_d) {
    try {
        const std::vector<gofdm::AggregateRow> rows = gofdm::read_csv(in);
        std::vector<std::pair<std::string, gofdm::PlotMetric>> wanted;
        if (metric == "all" || metric == "mse") wanted.emplace_back("mse", gofdm::PlotMetric::MSE);
        if (metric == "all" || metric == "ser") wanted.emplace_back("ser", gofdm::PlotMetric::SER);
        if (metric == "all" || metric == "throughput") {
            wanted.emplace_back("throughput", gofdm::PlotMetric::THROUGHPUT);
        }
        for (const auto& [name, pm] : wanted) {
            const std::string path = out_prefix + "_" + name + ".svg";
            gofdm::emit_plots(rows, pm, path, facet_d);
            std::printf("wrote %s\n", path.c_str());
        }
    } catch (const std::exception& e) {
        std::cerr << "ofdmsim plot: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

int do_inspect_group(int n, int d) {
    gofdm::SubgroupSpec spec;
    try {
        spec = gofdm::subgroup(n, d);
    } catch (const std::exception& e) {
        std::cerr << "ofdmsim inspect-group: " << e.what() << "\n";
        return kExitUsage;
    }
    const std::vector<int> bidual =
        gofdm::annihilator_bruteforce(spec.n, spec.elements_h_perp);
    std::printf("n = %d, d = %d\n", spec.n, spec.d);
    std::printf("H      = <%d> = %s\n", spec.d, print_set(spec.elements_h).c_str());
    std::printf("H_perp = <%d> = %s\n", spec.n / spec.d, print_set(spec.elements_h_perp).c_str());
    std::printf("|H| = %zu, |H_perp| = %zu, |H|*|H_perp| = %zu\n", spec.elements_h.size(),
                spec.elements_h_perp.size(), spec.elements_h.size() * spec.elements_h_perp.size());
    std::printf("bidual check: (H_perp)_perp == H: %s\n",
                bidual == spec.elements_h ? "ok" : "FAILED");
    return bidual == spec.elements_h ? kExitOk : kExitRuntime;
}

int do_inspect_channel(const std::string& channel, int n, int cp, int d) {
    try {
        const gofdm::SampleGrid grid{n, cp < 0 ? n / 8 : cp, 12.8};
        const gofdm::PowerDelayProfile pdp = channel == "itu"
                                                 ? gofdm::itu_indoor_pdp()
                                                 : gofdm::tdl_structured_pdp(grid, d);
        const gofdm::SampledPdp sp = gofdm::sample_pdp(pdp, grid);
        std::printf("profile: %s (sample period %.4g ns, n_cp = %d)\n", pdp.label.c_str(),
                    grid.sample_period_ns(), grid.n_cp);
        std::printf("%-12s %-10s %-12s %-14s\n", "delay_ns", "sample", "power_db", "power_lin");
        for (std::size_t i = 0; i < pdp.delays_ns.size(); ++i) {
            std::printf("%-12.4g %-10d %-12.4g %-14.6g\n", pdp.delays_ns[i], sp.indices[i],
                        pdp.powers_db[i], sp.powers_lin[i]);
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "ofdmsim inspect-channel: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"OFDM link simulator with subgroup-structured channel estimation", "ofdmsim"};
    app.require_subcommand(1);

    RunOptions run_opt;
    CLI::App* run = app.add_subcommand("run", "Run a Monte Carlo sweep and write a CSV");
    run->add_option("--n", run_opt.n, "Number of subcarriers")->capture_default_str();
    run->add_option("--cp", run_opt.cp, "Cyclic prefix length in samples")->default_str("n/8");
    run->add_option("--mod", run_opt.mod, "Modulation scheme")->capture_default_str();
    run->add_option("--epsilon", run_opt.epsilon, "Energy threshold parameter")
        ->capture_default_str();
    run->add_option("--snr", run_opt.snr, "SNR grid in dB, VALUE or START:STOP:STEP")
        ->capture_default_str();
    run->add_option("--d", run_opt.d_list, "Comma-separated generator parameters")
        ->capture_default_str();
    run->add_option("--channel", run_opt.channel, "Channel model")
        ->check(CLI::IsMember({"tdl", "itu"}))
        ->capture_default_str();
    run->add_option("--trials", run_opt.trials, "Trials per cell: 'auto' or a fixed count")
        ->capture_default_str();
    run->add_option("--seed", run_opt.seed, "Master seed")->capture_default_str();
    run->add_flag("--deterministic-taps", run_opt.deterministic_taps,
                  "Use fixed sqrt-power tap gains instead of Rayleigh fading");
    run->add_option("--out", run_opt.out, "Output CSV path")->capture_default_str();

    std::string plot_in, plot_metric = "all", plot_out = "plots";
    bool plot_facet = false;
    CLI::App* plot = app.add_subcommand("plot", "Render SVG charts from a sweep CSV");
    plot->add_option("--in", plot_in, "Input CSV path")->required();
    plot->add_option("--metric", plot_metric, "Metric to chart")
        ->check(CLI::IsMember({"mse", "ser", "throughput", "all"}))
        ->capture_default_str();
    plot->add_option("--out", plot_out, "Output file prefix")->capture_default_str();
    plot->add_flag("--facet-d", plot_facet, "One panel per d instead of averaging over d");

    int ig_n = 256, ig_d = 2;
    CLI::App* ig = app.add_subcommand("inspect-group", "Print a subgroup and its annihilator");
    ig->add_option("--n", ig_n, "Group order")->capture_default_str();
    ig->add_option("--d", ig_d, "Generator parameter")->capture_default_str();

    std::string ic_channel = "tdl";
    int ic_n = 256, ic_cp = -1, ic_d = 16;
    CLI::App* ic = app.add_subcommand("inspect-channel", "Print a power delay profile table");
    ic->add_option("--channel", ic_channel, "Channel model")
        ->check(CLI::IsMember({"tdl", "itu"}))
        ->capture_default_str();
    ic->add_option("--n", ic_n, "Number of subcarriers")->capture_default_str();
    ic->add_option("--cp", ic_cp, "Cyclic prefix length in samples")->default_str("n/8");
    ic->add_option("--d", ic_d, "Generator parameter (tdl only)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (run->parsed()) return do_run(run_opt);
    if (plot->parsed()) return do_plot(plot_in, plot_metric, plot_out, plot_facet);
    if (ig->parsed()) return do_inspect_group(ig_n, ig_d);
    if (ic->parsed()) return do_inspect_channel(ic_channel, ic_n, ic_cp, ic_d);
    return kExitUsage;
}
