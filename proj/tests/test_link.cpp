#include <doctest.h>

#include <cmath>

#include "gofdm/harness.hpp"
#include "gofdm/link.hpp"
#include "gofdm/transform.hpp"
#include "support/reference.hpp"

using namespace gofdm;

namespace {

// Cell fixture shared by the run_trial tests.
struct CellFixture {
    SampleGrid grid;
    PowerDelayProfile pdp;
    LmmseStatistics stats;
    ToneAllocation alloc;
    LmmseFilter filter;
    TrialSetup setup;

    CellFixture(int n, int d, double snr_db, ChannelModel model)
        : grid{n, n / 8, 12.8},
          pdp(model == ChannelModel::TDL ? tdl_structured_pdp(grid, d) : itu_indoor_pdp()),
          stats{covariance_from_pdp(pdp, grid), NoiseSpec::from_snr_db(snr_db).sigma2},
          alloc(ToneAllocation::make(n, d)),
          filter(stats, alloc.active) {
        setup.grid = grid;
        setup.alloc = alloc;
        setup.pdp = &pdp;
        setup.lmmse = &filter;
        setup.epsilon = 0.15;
        setup.noise = NoiseSpec::from_snr_db(snr_db);
    }
};

}  // namespace

TEST_CASE("qpsk: labeling, unit power, loopback") {
    const Cvec s = qpsk_map({0, 0});
    REQUIRE(s.size() == 1);
    CHECK(std::abs(s[0] - cd{M_SQRT1_2, M_SQRT1_2}) < 1e-15);
    CHECK(std::norm(s[0]) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK(qpsk_demap(qpsk_map({0, 0})) == std::vector<int>{0, 0});
    CHECK(qpsk_demap(qpsk_map({0, 1})) == std::vector<int>{0, 1});
    CHECK(qpsk_demap(qpsk_map({1, 1})) == std::vector<int>{1, 1});
    CHECK(qpsk_demap(qpsk_map({1, 0})) == std::vector<int>{1, 0});
    CHECK(qpsk_map({0, 1})[0].real() < 0.0);  // gray labeling: 01 sits at (-1+j)/sqrt2
    CHECK(qpsk_map({0, 1})[0].imag() > 0.0);

    Rng rng(42);
    std::vector<int> bits(10000);
    for (int& b : bits) b = rng.coin();
    CHECK(qpsk_demap(qpsk_map(bits)) == bits);

    CHECK_THROWS_AS(qpsk_map({1}), std::invalid_argument);
}

TEST_CASE("ToneAllocation: active set, eta") {
    const ToneAllocation a = ToneAllocation::make(8, 2);
    CHECK(a.active == std::vector<int>{1, 3, 5, 7});
    CHECK(a.eta == 0.5);

    const ToneAllocation b = ToneAllocation::make(8, 8);
    CHECK(b.active == std::vector<int>{1, 2, 3, 4, 5, 6, 7});  // only tone 0 nulled

    for (int d : {2, 8, 16, 64, 128}) {
        const ToneAllocation t = ToneAllocation::make(256, d);
        CHECK(t.active.size() == static_cast<std::size_t>(256 - 256 / d));
        CHECK(t.eta == doctest::Approx(1.0 - 1.0 / d).epsilon(1e-15));
    }
}

TEST_CASE("build_ofdm_symbol: placement and energy") {
    const ToneAllocation a = ToneAllocation::make(8, 2);
    Rng rng(5);
    std::vector<int> bits(8);
    for (int& b : bits) b = rng.coin();
    const Cvec syms = qpsk_map(bits);
    const FreqBlock block = build_ofdm_symbol(syms, a);
    for (int k : {0, 2, 4, 6}) CHECK(block[k] == cd{0.0, 0.0});
    for (std::size_t i = 0; i < a.active.size(); ++i) CHECK(block[a.active[i]] == syms[i]);
    CHECK(energy(block) == doctest::Approx(4.0).epsilon(1e-14));

    CHECK_THROWS_AS(build_ofdm_symbol(Cvec(3), a), std::invalid_argument);
}

TEST_CASE("equalize: exactness, scale tolerance, erasures") {
    const ToneAllocation a = ToneAllocation::make(16, 4);
    Rng rng(6);
    std::vector<int> bits(2 * a.active.size());
    for (int& b : bits) b = rng.coin();
    const Cvec syms = qpsk_map(bits);
    const FreqBlock S = build_ofdm_symbol(syms, a);

    FreqBlock H = rng.cgauss_vector(16, 1.0);
    FreqBlock Y(16);
    for (int k = 0; k < 16; ++k) Y[k] = H[k] * S[k];

    const Cvec eq = equalize(Y, H, a);
    for (std::size_t i = 0; i < syms.size(); ++i) CHECK(std::abs(eq[i] - syms[i]) < 1e-12);

    FreqBlock H2(16);
    for (int k = 0; k < 16; ++k) H2[k] = 2.0 * H[k];
    CHECK(qpsk_demap(equalize(Y, H2, a)) == bits);  // quadrant decision ignores gain

    FreqBlock H0 = H;
    H0[a.active[0]] = cd{0.0, 0.0};
    const Cvec erased = equalize(Y, H0, a);
    CHECK(erased[0] == cd{M_SQRT1_2, M_SQRT1_2});
}

TEST_CASE("qpsk_demap: positive rescaling never changes the bits") {
    Rng rng(61);
    const Cvec syms = rng.cgauss_vector(500, 1.0);
    const std::vector<int> bits = qpsk_demap(syms);
    for (double c : {1e-6, 0.5, 3.0, 1e9}) {
        Cvec scaled(syms.size());
        for (std::size_t i = 0; i < syms.size(); ++i) scaled[i] = c * syms[i];
        CHECK(qpsk_demap(scaled) == bits);
    }
}

TEST_CASE("mse_metric: zero at equality, Parseval bookkeeping vs the time domain") {
    Rng rng(7);
    const FreqBlock H = rng.cgauss_vector(16, 1.0);
    CHECK(mse_metric(H, H) == 0.0);

    // projecting the true taps: freq-domain MSE equals n times the
    // time-domain residual (E_total - E_perp)/n
    const Cvec h = rng.cgauss_vector(16, 1.0);
    const SubgroupSpec spec = subgroup(16, 4);
    const Cvec ph = project(h, spec);
    const double freq_mse = mse_metric(channel_freq_response(h), channel_freq_response(ph));
    const double e_total = energy(h);
    const double e_sub = energy(ph);
    const double time_residual = (e_total - e_sub) / 16.0;
    CHECK(freq_mse / 16.0 == doctest::Approx(time_residual).epsilon(1e-12));

    CHECK_THROWS_AS(mse_metric(H, Cvec(8)), std::invalid_argument);
}

TEST_CASE("throughput_metric: worked values") {
    CHECK(throughput_metric(0.0, ToneAllocation::make(256, 2), 2) == doctest::Approx(1.0));
    CHECK(throughput_metric(1.0, ToneAllocation::make(256, 2), 2) == 0.0);
    CHECK(throughput_metric(0.0, ToneAllocation::make(256, 128), 2) ==
          doctest::Approx(2.0 * 127.0 / 128.0).epsilon(1e-15));
}

TEST_CASE("predicted_mse: worked values") {
    CHECK(predicted_mse(1.0, 1.0, 0.0, 4, 8) == 0.0);
    CHECK(predicted_mse(1.25, 1.0, 0.0, 2, 8) == doctest::Approx(0.03125).epsilon(1e-15));
    CHECK(predicted_mse(1.0, 1.0, 0.5, 16, 256) ==
          doctest::Approx(0.5 * 16.0 / 256.0).epsilon(1e-15));
}

TEST_CASE("run_trial: deterministic under a fixed seed") {
    const CellFixture fx(64, 4, 10.0, ChannelModel::TDL);
    Rng a(12345), b(12345);
    const TrialOutcome ta = run_trial(fx.setup, a);
    const TrialOutcome tb = run_trial(fx.setup, b);
    CHECK(ta.ls.mse == tb.ls.mse);
    CHECK(ta.lmmse.mse == tb.lmmse.mse);
    CHECK(ta.subgroup.mse == tb.subgroup.mse);
    CHECK(ta.subgroup.ser == tb.subgroup.ser);
    CHECK(ta.subgroup.chosen_d == tb.subgroup.chosen_d);
}

TEST_CASE("run_trial: noise-free trials decode cleanly") {
    CellFixture fx(64, 4, 10.0, ChannelModel::TDL);
    fx.setup.noise = NoiseSpec{300.0, 0.0};
    Rng rng(777);
    for (int t = 0; t < 10; ++t) {
        const TrialOutcome out = run_trial(fx.setup, rng);
        CHECK(out.ls.ser == 0.0);
        CHECK(out.ls.ber == 0.0);
        CHECK(out.subgroup.ser == 0.0);
        CHECK(out.subgroup.throughput == doctest::Approx(2.0 * 0.75).epsilon(1e-12));
        // the nulled tones carry no pilots, so every estimator shares the
        // same irreducible floor there; on the active tones LS is exact
        CHECK(out.ls.mse == doctest::Approx(out.subgroup.mse).epsilon(1e-6));
    }
}

TEST_CASE("run_trial: subgroup beats ls on the matched channel at high SNR") {
    const CellFixture fx(256, 128, 25.0, ChannelModel::TDL);
    int wins = 0;
    const int trials = 300;
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(9000, {static_cast<std::uint64_t>(t)}));
        const TrialOutcome out = run_trial(fx.setup, rng);
        if (out.subgroup.mse < out.ls.mse) ++wins;
    }
    CHECK(wins >= 285);  // at least 95 percent of trials
}
