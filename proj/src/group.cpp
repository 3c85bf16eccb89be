#include "gofdm/group.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gofdm {

std::vector<int> divisors(int n) {
    if (n < 1) throw std::invalid_argument("divisors: n must be >= 1");
    std::vector<int> low, high;
    for (int d = 1; static_cast<long long>(d) * d <= n; ++d) {
        if (n % d != 0) continue;
        low.push_back(d);
        if (d != n / d) high.push_back(n / d);
    }
    low.insert(low.end(), high.rbegin(), high.rend());
    return low;
}

SubgroupSpec subgroup(int n, int d) {
    if (n < 1) throw std::invalid_argument("subgroup: n must be >= 1");
    if (d < 1 || n % d != 0) {
        throw std::invalid_argument("subgroup: d = " + std::to_string(d) +
                                    " does not divide n = " + std::to_string(n));
    }
    SubgroupSpec spec;
    spec.n = n;
    spec.d = d;
    spec.elements_h.reserve(n / d);
    for (int k = 0; k < n / d; ++k) spec.elements_h.push_back(k * d);
    spec.elements_h_perp.reserve(d);
    const int step = n / d;
    for (int k = 0; k < d; ++k) spec.elements_h_perp.push_back(k * step);
    return spec;
}

std::vector<int> annihilator_bruteforce(int n, const std::vector<int>& elements) {
    std::vector<int> out;
    for (int k = 0; k < n; ++k) {
        bool trivial = true;
        for (int h : elements) {
            if ((static_cast<long long>(k) * h) % n != 0) {
                trivial = false;
                break;
            }
        }
        if (trivial) out.push_back(k);
    }
    return out;
}

std::vector<int> annihilator_bruteforce(const SubgroupSpec& spec) {
    return annihilator_bruteforce(spec.n, spec.elements_h);
}

Cvec project(const Cvec& h, const SubgroupSpec& spec) {
    if (static_cast<int>(h.size()) != spec.n) {
        throw std::invalid_argument("project: vector length does not match group order");
    }
    Cvec out(h.size(), cd{0.0, 0.0});
    for (int m : spec.elements_h_perp) out[m] = h[m];
    return out;
}

namespace {

// Sum of |h[m]|^2 over <n/d>, counting elements touched in `ops`.
double perp_energy(const Cvec& h, int n, int d, std::uint64_t& ops) {
    const int step = n / d;
    double e = 0.0;
    for (int m = 0; m < n; m += step) e += std::norm(h[m]);
    ops += static_cast<std::uint64_t>(d);
    return e;
}

}  // namespace

double energy_ratio(const Cvec& h, const SubgroupSpec& spec) {
    if (static_cast<int>(h.size()) != spec.n) {
        throw std::invalid_argument("energy_ratio: vector length does not match group order");
    }
    const double e_total = energy(h);
    if (e_total <= 0.0) throw std::invalid_argument("energy_ratio: zero-energy input");
    std::uint64_t ops = 0;
    return perp_energy(h, spec.n, spec.d, ops) / e_total;
}

EnergyProfile compute_energy_profile(const Cvec& h) {
    const int n = static_cast<int>(h.size());
    if (n < 1) throw std::invalid_argument("compute_energy_profile: empty vector");
    EnergyProfile prof;
    prof.divisors = divisors(n);
    prof.e_total = energy(h);
    if (prof.e_total <= 0.0) {
        throw std::invalid_argument("compute_energy_profile: zero-energy input");
    }
    std::uint64_t ops = 0;
    prof.ratios.reserve(prof.divisors.size());
    for (int d : prof.divisors) {
        prof.ratios.push_back(perp_energy(h, n, d, ops) / prof.e_total);
    }
    return prof;
}

DivisorScan scan_divisors(const Cvec& h, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("scan_divisors: epsilon must lie in (0, 1)");
    }
    const int n = static_cast<int>(h.size());
    DivisorScan scan;
    scan.e_total = energy(h);
    scan.ops = static_cast<std::uint64_t>(n);  // the total-energy pass
    if (scan.e_total <= 0.0) {
        throw std::invalid_argument("scan_divisors: zero-energy input");
    }
    for (int d : divisors(n)) {
        const double ratio = perp_energy(h, n, d, scan.ops) / scan.e_total;
        scan.trace.emplace_back(d, ratio);
        if (ratio > 1.0 - epsilon) {
            scan.chosen_d = d;
            break;
        }
    }
    // d = n gives ratio exactly 1, so the loop cannot fall through for
    // epsilon in (0, 1).
    return scan;
}

SubgroupSpec minimal_subgroup(const Cvec& h, double epsilon) {
    return subgroup(static_cast<int>(h.size()), scan_divisors(h, epsilon).chosen_d);
}

}  // namespace gofdm
