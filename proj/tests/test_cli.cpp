#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string output;
};

CmdResult run_cmd(const std::string& args) {
    const std::string cmd = std::string(OFDMSIM_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult res;
    std::array<char, 4096> buf;
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) {
        res.output.append(buf.data(), got);
    }
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool file_exists(const std::string& path) {
    std::ifstream in(path);
    return in.good();
}

int count_lines(const std::string& text) {
    int lines = 0;
    for (char c : text) {
        if (c == '\n') ++lines;
    }
    return lines;
}

}  // namespace

TEST_CASE("help text matches the golden files") {
    const CmdResult root = run_cmd("--help");
    CHECK(root.exit_code == 0);
    CHECK(root.output == slurp(std::string(GOLDEN_DIR) + "/help_root.txt"));

    const CmdResult run = run_cmd("run --help");
    CHECK(run.exit_code == 0);
    CHECK(run.output == slurp(std::string(GOLDEN_DIR) + "/help_run.txt"));

    // every documented flag is present
    for (const char* flag : {"--n", "--cp", "--mod", "--epsilon", "--snr", "--d", "--channel",
                             "--trials", "--seed", "--deterministic-taps", "--out"}) {
        CHECK(run.output.find(flag) != std::string::npos);
    }
}

TEST_CASE("inspect-group: duality listing and failure modes") {
    const CmdResult ok = run_cmd("inspect-group --n 12 --d 3");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("{0,3,6,9}") != std::string::npos);
    CHECK(ok.output.find("{0,4,8}") != std::string::npos);
    CHECK(ok.output.find("|H| = 4, |H_perp| = 3") != std::string::npos);
    CHECK(ok.output.find("bidual check") != std::string::npos);
    CHECK(ok.output.find("ok") != std::string::npos);

    const CmdResult trivial = run_cmd("inspect-group --n 8 --d 1");
    CHECK(trivial.exit_code == 0);
    CHECK(trivial.output.find("H_perp = <8> = {0}") != std::string::npos);

    const CmdResult bad = run_cmd("inspect-group --n 12 --d 5");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("inspect-channel: pdp tables") {
    const CmdResult itu = run_cmd("inspect-channel --channel itu");
    CHECK(itu.exit_code == 0);
    CHECK(itu.output.find("itu-indoor-office") != std::string::npos);
    CHECK(itu.output.find("700") != std::string::npos);
    CHECK(itu.output.find("14") != std::string::npos);

    const CmdResult tdl = run_cmd("inspect-channel --channel tdl --d 64");
    CHECK(tdl.exit_code == 0);
    CHECK(tdl.output.find("tdl-structured-d64") != std::string::npos);
}

TEST_CASE("run: flag validation") {
    const CmdResult bad_d = run_cmd("run --d 3 --out /tmp/gofdm_cli_x.csv");
    CHECK(bad_d.exit_code == 2);
    CHECK(bad_d.output.find("does not divide") != std::string::npos);

    const CmdResult bad_flag = run_cmd("run --bogus 1");
    CHECK(bad_flag.exit_code == 2);

    const CmdResult bad_channel = run_cmd("run --channel cable");
    CHECK(bad_channel.exit_code == 2);
}

TEST_CASE("run: reproducible csv and grid arithmetic") {
    const std::string args =
        "run --n 64 --cp 8 --d 2,4 --snr 0:10:10 --trials 5 --seed 42 --out ";
    const CmdResult a = run_cmd(args + "/tmp/gofdm_cli_a.csv");
    REQUIRE(a.exit_code == 0);
    CHECK(a.output.find("wrote 12 rows") != std::string::npos);
    const CmdResult b = run_cmd(args + "/tmp/gofdm_cli_b.csv");
    REQUIRE(b.exit_code == 0);
    CHECK(slurp("/tmp/gofdm_cli_a.csv") == slurp("/tmp/gofdm_cli_b.csv"));
    CHECK(count_lines(slurp("/tmp/gofdm_cli_a.csv")) == 13);  // header + 12 rows

    // default grid shape: 5 d values x 6 snr points x 3 estimators
    const CmdResult full = run_cmd("run --trials 2 --seed 7 --out /tmp/gofdm_cli_full.csv");
    REQUIRE(full.exit_code == 0);
    CHECK(count_lines(slurp("/tmp/gofdm_cli_full.csv")) == 91);

    std::remove("/tmp/gofdm_cli_a.csv");
    std::remove("/tmp/gofdm_cli_b.csv");
}

TEST_CASE("plot: charts from csv, error paths") {
    REQUIRE(file_exists("/tmp/gofdm_cli_full.csv"));

    const CmdResult all = run_cmd(
        "plot --in /tmp/gofdm_cli_full.csv --metric all --out /tmp/gofdm_cli_plots");
    CHECK(all.exit_code == 0);
    for (const char* metric : {"mse", "ser", "throughput"}) {
        const std::string path = std::string("/tmp/gofdm_cli_plots_") + metric + ".svg";
        CHECK(file_exists(path));
        CHECK(slurp(path).rfind("<svg", 0) == 0);
        std::remove(path.c_str());
    }

    const CmdResult faceted = run_cmd(
        "plot --in /tmp/gofdm_cli_full.csv --metric mse --facet-d --out /tmp/gofdm_cli_facet");
    CHECK(faceted.exit_code == 0);
    CHECK(file_exists("/tmp/gofdm_cli_facet_mse.svg"));
    std::remove("/tmp/gofdm_cli_facet_mse.svg");

    const CmdResult missing = run_cmd("plot --in /tmp/gofdm_not_here.csv --metric mse");
    CHECK(missing.exit_code == 1);

    const CmdResult badmetric = run_cmd("plot --in /tmp/gofdm_cli_full.csv --metric evm");
    CHECK(badmetric.exit_code == 2);

    std::remove("/tmp/gofdm_cli_full.csv");
}
