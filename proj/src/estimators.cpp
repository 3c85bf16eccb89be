#include "gofdm/estimators.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gofdm/group.hpp"
#include "gofdm/transform.hpp"

namespace gofdm {

const char* method_name(Method m) {
    switch (m) {
        case Method::LS: return "ls";
        case Method::LMMSE: return "lmmse";
        case Method::SUBGROUP: return "subgroup";
    }
    return "?";
}

namespace {

FreqBlock pilot_division(const FreqBlock& Y, const FreqBlock& X,
                         const std::vector<int>& active) {
    if (Y.size() != X.size()) {
        throw std::invalid_argument("pilot division: block length mismatch");
    }
    if (active.empty()) {
        throw std::invalid_argument("pilot division: empty active set");
    }
    FreqBlock H(Y.size(), cd{0.0, 0.0});
    for (int k : active) {
        if (X[k] == cd{0.0, 0.0}) {
            throw std::invalid_argument("pilot division: zero pilot on active tone " +
                                        std::to_string(k));
        }
        H[k] = Y[k] / X[k];
    }
    return H;
}

}  // namespace

EstimateResult ls_estimate(const FreqBlock& Y, const FreqBlock& X,
                           const std::vector<int>& active) {
    EstimateResult res;
    res.method = Method::LS;
    res.H_hat_freq = pilot_division(Y, X, active);
    res.h_hat_time = idft_unitary(res.H_hat_freq);
    return res;
}

std::vector<Cvec> covariance_from_pdp(const PowerDelayProfile& pdp, const SampleGrid& grid) {
    const SampledPdp sp = sample_pdp(pdp, grid);
    const int n = grid.n;
    // R[k,l] = r[(k-l) mod n]: circulant because the taps sit on the grid.
    Cvec r(n, cd{0.0, 0.0});
    for (int delta = 0; delta < n; ++delta) {
        for (std::size_t p = 0; p < sp.indices.size(); ++p) {
            const double phi = -2.0 * std::numbers::pi * delta * sp.indices[p] / n;
            r[delta] += sp.powers_lin[p] * cd{std::cos(phi), std::sin(phi)};
        }
    }
    std::vector<Cvec> R(n, Cvec(n));
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            R[k][l] = r[(k - l + n) % n];
        }
    }
    return R;
}

struct LmmseFilter::Impl {
    int n = 0;
    std::vector<int> active;
    Eigen::MatrixXcd r_aa;
    Eigen::LDLT<Eigen::MatrixXcd> solver;
};

LmmseFilter::LmmseFilter(const LmmseStatistics& stats, std::vector<int> active)
    : impl_(std::make_unique<Impl>()) {
    if (active.empty()) throw std::invalid_argument("LmmseFilter: empty active set");
    impl_->n = static_cast<int>(stats.covariance.size());
    for (int k : active) {
        if (k < 0 || k >= impl_->n) {
            throw std::invalid_argument("LmmseFilter: active tone " + std::to_string(k) +
                                        " outside the covariance grid");
        }
    }
    impl_->active = std::move(active);
    const auto& act = impl_->active;
    const int a = static_cast<int>(act.size());
    impl_->r_aa.resize(a, a);
    for (int i = 0; i < a; ++i) {
        for (int j = 0; j < a; ++j) {
            impl_->r_aa(i, j) = stats.covariance[act[i]][act[j]];
        }
    }
    Eigen::MatrixXcd system = impl_->r_aa;
    system.diagonal().array() += stats.sigma2;
    impl_->solver.compute(system);
    // Eigen's rcond() misses exactly singular PSD inputs; the pivot spread of
    // the factorization is a usable condition estimate here.
    const Eigen::VectorXd pivots = impl_->solver.vectorD().cwiseAbs();
    const double rcond_est =
        pivots.maxCoeff() > 0.0 ? pivots.minCoeff() / pivots.maxCoeff() : 0.0;
    if (impl_->solver.info() != Eigen::Success || rcond_est < 1e-14) {
        throw std::runtime_error("LmmseFilter: ill-conditioned system, rcond ~= " +
                                 std::to_string(rcond_est));
    }
}

LmmseFilter::~LmmseFilter() = default;
LmmseFilter::LmmseFilter(LmmseFilter&&) noexcept = default;
LmmseFilter& LmmseFilter::operator=(LmmseFilter&&) noexcept = default;

EstimateResult LmmseFilter::apply(const FreqBlock& H_ls) const {
    const auto& act = impl_->active;
    const int a = static_cast<int>(act.size());
    Eigen::VectorXcd h(a);
    for (int i = 0; i < a; ++i) h(i) = H_ls[act[i]];
    const Eigen::VectorXcd filtered = impl_->r_aa * impl_->solver.solve(h);

    EstimateResult res;
    res.method = Method::LMMSE;
    res.H_hat_freq.assign(H_ls.size(), cd{0.0, 0.0});
    for (int i = 0; i < a; ++i) res.H_hat_freq[act[i]] = filtered(i);
    res.h_hat_time = idft_unitary(res.H_hat_freq);
    return res;
}

EstimateResult lmmse_estimate(const FreqBlock& H_ls, const LmmseStatistics& stats,
                              const std::vector<int>& active) {
    return LmmseFilter(stats, active).apply(H_ls);
}

EstimateResult subgroup_estimate(const FreqBlock& Y, const FreqBlock& X,
                                 const std::vector<int>& active, double epsilon) {
    const std::size_t n = Y.size();
    EstimateResult res;
    res.method = Method::SUBGROUP;

    const FreqBlock H_raw = pilot_division(Y, X, active);
    const Cvec h_unitary = idft_unitary(H_raw);

    if (energy(h_unitary) <= 0.0) {  // nothing received: the undefined branch
        res.h_hat_time.assign(n, cd{0.0, 0.0});
        res.H_hat_freq.assign(n, cd{0.0, 0.0});
        return res;
    }

    const DivisorScan scan = scan_divisors(h_unitary, epsilon);
    res.chosen_d = scan.chosen_d;
    res.ratio_trace = scan.trace;
    res.scan_ops = scan.ops + transform_work_ops(n);

    // Keep taps on the chosen annihilator; rescale from the unitary IDFT to
    // tap units so the reconstruction below lands back on H_raw's scale.
    const SubgroupSpec spec = subgroup(static_cast<int>(n), scan.chosen_d);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    res.h_hat_time.assign(n, cd{0.0, 0.0});
    for (int m : spec.elements_h_perp) res.h_hat_time[m] = h_unitary[m] * inv_sqrt_n;
    res.H_hat_freq = channel_freq_response(res.h_hat_time);
    return res;
}

}  // namespace gofdm
