#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "gofdm/channel.hpp"
#include "gofdm/types.hpp"

namespace gofdm {

enum class Method { LS, LMMSE, SUBGROUP };

const char* method_name(Method m);

// One channel estimate. h_hat_time is a delay-domain diagnostic view:
// for LS/LMMSE it is the unitary IDFT of H_hat_freq; for SUBGROUP it is the
// sparse tap estimate itself, so H_hat_freq == channel_freq_response(h_hat_time).
struct EstimateResult {
    Cvec h_hat_time;
    FreqBlock H_hat_freq;
    Method method = Method::LS;
    std::optional<int> chosen_d;                       // SUBGROUP only
    std::vector<std::pair<int, double>> ratio_trace;   // SUBGROUP only; (d, R_d) visited
    std::uint64_t scan_ops = 0;  // SUBGROUP only: IDFT + energy-scan work, for
                                 // complexity checks; excludes the pilot division
};

// Per-tone pilot division on the active set; nulled tones estimate to 0.
// Throws if a pilot is zero on an active tone or the active set is empty.
EstimateResult ls_estimate(const FreqBlock& Y, const FreqBlock& X,
                           const std::vector<int>& active);

// Receiver-known second-order statistics for the LMMSE baseline.
struct LmmseStatistics {
    std::vector<Cvec> covariance;  // n x n Hermitian R_HH, row-major
    double sigma2 = 0.0;
};

// R[k,l] = sum_p P_p e^{-j2pi (k-l) m_p / n} over the sampled profile;
// Hermitian Toeplitz (circulant on the integer sample grid).
std::vector<Cvec> covariance_from_pdp(const PowerDelayProfile& pdp, const SampleGrid& grid);

// Active-submatrix Wiener filter H = R (R + sigma2 I)^{-1} H_ls, factored once
// so a sweep cell can reuse it across trials. The solve is a pivoted LDLT;
// no explicit inverse is formed. Throws on an ill-conditioned system, with the
// reciprocal condition estimate in the message.
class LmmseFilter {
  public:
    LmmseFilter(const LmmseStatistics& stats, std::vector<int> active);
    ~LmmseFilter();
    LmmseFilter(LmmseFilter&&) noexcept;
    LmmseFilter& operator=(LmmseFilter&&) noexcept;

    EstimateResult apply(const FreqBlock& H_ls) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

EstimateResult lmmse_estimate(const FreqBlock& H_ls, const LmmseStatistics& stats,
                              const std::vector<int>& active);

// Energy-constrained subgroup estimation: pilot division, unitary IDFT,
// smallest-divisor annihilator capturing more than (1 - epsilon) of the
// energy, then reconstruction from the surviving taps. A zero received block
// returns the all-zero estimate with chosen_d unset.
EstimateResult subgroup_estimate(const FreqBlock& Y, const FreqBlock& X,
                                 const std::vector<int>& active, double epsilon);

}  // namespace gofdm
